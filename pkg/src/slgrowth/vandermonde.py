"""Elementary symmetric polynomials and generalized Vandermonde
determinants over a prime field.

The central identity: for s = (s_1, ..., s_n) and 0 <= i <= n, the
determinant of the n x n matrix whose row j lists the powers
s_j^0, ..., s_j^n with the power-i column omitted equals

    prod_{j<k} (s_k - s_j)  *  e_{n-i}(s),

where e_m is the m-th elementary symmetric polynomial.  Both sides are
computed by genuinely different routes (exact elimination vs product
recurrence) so the verifier is a real cross-check.
"""

from __future__ import annotations

from . import linalg
from .field import PrimeField


def elementary_symmetric(field: PrimeField, s, m: int) -> int:
    """e_m(s): the sum of all squarefree degree-m monomials, computed by
    the coefficient recurrence for prod_j (x + s_j)."""
    n = len(s)
    if not 0 <= m <= n:
        raise ValueError(f"m={m} out of range for {n} values")
    p = field.p
    coeffs = [1] + [0] * m  # track e_0..e_m only
    top = 0
    for v in s:
        v %= p
        top = min(top + 1, m)
        for j in range(top, 0, -1):
            coeffs[j] = (coeffs[j] + v * coeffs[j - 1]) % p
    return coeffs[m]


def vandermonde_product(field: PrimeField, s) -> int:
    """prod_{j<k} (s_k - s_j) mod p."""
    p = field.p
    out = 1
    for k in range(1, len(s)):
        sk = s[k]
        for j in range(k):
            out = (out * (sk - s[j])) % p
    return out


def power_matrix_rows(field: PrimeField, s, i: int) -> list[list[int]]:
    """Rows (s_j^k for k in [0..n] \\ {i}), one row per s_j."""
    n = len(s)
    if not 0 <= i <= n:
        raise ValueError(f"omitted power i={i} out of range for n={n}")
    p = field.p
    rows = []
    for v in s:
        v %= p
        powers = [1]
        for _ in range(n):
            powers.append((powers[-1] * v) % p)
        del powers[i]
        rows.append(powers)
    return rows


def generalized_vandermonde_det(field: PrimeField, s, i: int) -> int:
    """Determinant of the omit-power-i matrix, by exact elimination."""
    return linalg.det_mod(power_matrix_rows(field, s, i), field)


def verify_vander_identity(field: PrimeField, s, i: int) -> bool:
    """Exact equality of the elimination determinant and the closed form
    vandermonde_product(s) * e_{n-i}(s)."""
    det = generalized_vandermonde_det(field, s, i)
    closed = (
        vandermonde_product(field, s)
        * elementary_symmetric(field, s, len(s) - i)
    ) % field.p
    return det == closed


def cyclic_product_coordinates(field: PrimeField, r, length: int) -> list[int]:
    """q_k = r_k r_{k+1} ... r_{k+length-1} with indices cyclic mod n.

    Defined on coordinate vectors of product one; 1 <= length <= n-1.
    """
    n = len(r)
    p = field.p
    r = [v % p for v in r]
    prod = 1
    for v in r:
        prod = (prod * v) % p
    if prod != 1:
        raise ValueError("cyclic products need coordinates of product one")
    if not 1 <= length <= n - 1:
        raise ValueError(f"window length {length} out of range for n={n}")
    out = []
    for k in range(n):
        q = 1
        for step in range(length):
            q = (q * r[(k + step) % n]) % p
        out.append(q)
    return out
