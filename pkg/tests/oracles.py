"""Independent reference implementations used as test oracles.

Everything here is deliberately written by the dumbest correct method
available (permutation expansions, literal subset enumeration, nested
pair counting) so that agreement with the package is evidence, not an
echo.  Nothing in this file imports package internals beyond the public
constructors needed to drive it.
"""

import itertools
from collections import Counter

from slgrowth import SemisimplicityClass


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (lists low-to-high, independent of slgrowth.polys)


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for j, bj in enumerate(b):
        out[j] = (out[j] + bj) % p
    return out


def synthetic_division(coeffs, root, p):
    """Divide by (x - root) via Horner; returns (quotient, remainder)."""
    n = len(coeffs) - 1
    q = [0] * n
    carry = coeffs[n]
    for k in range(n - 1, -1, -1):
        q[k] = carry
        carry = (coeffs[k] + root * carry) % p
    return q, carry


def root_multiplicities(coeffs, p):
    """{rational root: multiplicity} by scan plus repeated deflation."""
    out = {}
    for lam in range(p):
        m = 0
        work = list(coeffs)
        while len(work) > 1:
            q, rem = synthetic_division(work, lam, p)
            if rem != 0:
                break
            m += 1
            work = q
        if m:
            out[lam] = m
    return out


# ---------------------------------------------------------------------------
# matrix oracles


def charpoly_oracle(n, p, g):
    """det(xI - g) by permutation expansion; coefficients low-to-high."""
    entries = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                entries[(i, j)] = [(-g[i * n + j]) % p, 1]
            else:
                entries[(i, j)] = [(-g[i * n + j]) % p]
    total = [0]
    for perm in itertools.permutations(range(n)):
        sign = perm_sign(perm)
        term = [1]
        for i in range(n):
            term = poly_mul(term, entries[(i, perm[i])], p)
        if sign < 0:
            term = [(-c) % p for c in term]
        total = poly_add(total, term, p)
    return total


def perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def matrix_rank_oracle(rows, p):
    """Row-reduction rank, written independently of slgrowth.linalg."""
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                factor = rows[r][col]
                rows[r] = [
                    (rows[r][c] - factor * rows[rank][c]) % p for c in range(cols)
                ]
        rank += 1
    return rank


def classify_oracle(space, g):
    """Diagonalizability over the splitting field, decided rationally.

    Valid for n <= 3: any repeated eigenvalue of a degree <= 3 polynomial
    over F_p is itself rational (conjugate roots of an irreducible factor
    are distinct and share multiplicity), so it is enough to inspect the
    rational roots.  An element is regular semisimple when no root
    repeats, and semisimple when every repeated rational eigenvalue has
    a full eigenspace: rank(g - lam*I) = n - multiplicity.
    """
    n, p = space.n, space.p
    assert n <= 3, "rational-root oracle only covers n <= 3"
    coeffs = charpoly_oracle(n, p, g)
    mults = root_multiplicities(coeffs, p)
    if all(m == 1 for m in mults.values()):
        return SemisimplicityClass.REGULAR_SEMISIMPLE
    for lam, m in mults.items():
        if m == 1:
            continue
        shifted = [
            [(g[i * n + j] - (lam if i == j else 0)) % p for j in range(n)]
            for i in range(n)
        ]
        if matrix_rank_oracle(shifted, p) != n - m:
            return SemisimplicityClass.NOT_SEMISIMPLE
    return SemisimplicityClass.SEMISIMPLE_NOT_REGULAR


def conjugation_orbit(space, g):
    """{h g h^-1 : h in G(K)}; only sane at SL_2(F_5) scale."""
    from slgrowth import full_group

    G = full_group(space)
    mul, inv = space.mul, space.inv
    return frozenset(mul(mul(h, g), inv(h)) for h in G.members)


# ---------------------------------------------------------------------------
# symmetric polynomial / energy oracles


def elementary_symmetric_bruteforce(s, m, p):
    """Sum over literal m-subsets; exponential, fine for n <= 6."""
    if m == 0:
        return 1
    total = 0
    for combo in itertools.combinations(s, m):
        prod = 1
        for v in combo:
            prod = (prod * v) % p
        total = (total + prod) % p
    return total % p


def energy_by_pairs(p, xs, ys):
    """Sum of squared difference multiplicities, counted pair by pair."""
    counts = Counter((a - b) % p for a in xs for b in ys)
    return sum(c * c for c in counts.values())


def energy_by_autocorrelation(p, xs, ys):
    """E(X,Y) = sum_d c_X(d) * c_Y(d) with c_S(d) = #{(a,a') in S^2: a-a'=d}."""
    cx = Counter((a - b) % p for a in xs for b in xs)
    cy = Counter((a - b) % p for a in ys for b in ys)
    return sum(mult * cy.get(d, 0) for d, mult in cx.items())


def energy_by_convolution(p, xs, ys):
    """Exact convolution table via big-integer slot packing.

    Indicator vectors are packed into one integer with 32-bit slots;
    integer multiplication then performs the full convolution exactly
    (slot sums stay far below 2^32 for |X|,|Y| <= 10^3), and wrapping
    k and k+p folds the result mod x^p - 1.
    """
    slot = 32
    mask = (1 << slot) - 1
    ax = 0
    for x in xs:
        ax |= 1 << (slot * x)
    ay = 0
    for y in ys:
        ay |= 1 << (slot * ((-y) % p))
    prod = ax * ay
    energy = 0
    for d in range(p):
        lo = (prod >> (slot * d)) & mask
        hi = (prod >> (slot * (d + p))) & mask
        r = lo + hi
        energy += r * r
    return energy
