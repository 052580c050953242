"""Exact matrix arithmetic for SL_n(F_p).

A matrix is a flat row-major tuple of n*n canonical ints, so it hashes
fast and goes straight into sets and dict keys.  SpecialLinear carries
the ambient (n, p) plus specialized kernels; the experiment hypotheses
p odd and p > n are enforced here, once, at setup.
"""

from __future__ import annotations

import enum
from typing import Optional, Sequence

from . import linalg, polys
from .errors import NotInGroup, SingularMatrix
from .field import PrimeField

Mat = tuple  # flat row-major tuple of ints, length n*n


class SemisimplicityClass(enum.Enum):
    REGULAR_SEMISIMPLE = "REGULAR_SEMISIMPLE"
    SEMISIMPLE_NOT_REGULAR = "SEMISIMPLE_NOT_REGULAR"
    NOT_SEMISIMPLE = "NOT_SEMISIMPLE"


def _make_mul(n: int, p: int):
    """Multiplication kernel; n=2 and n=3 are unrolled hot paths."""
    if n == 2:

        def mul2(a: Mat, b: Mat) -> Mat:
            a0, a1, a2, a3 = a
            b0, b1, b2, b3 = b
            return (
                (a0 * b0 + a1 * b2) % p,
                (a0 * b1 + a1 * b3) % p,
                (a2 * b0 + a3 * b2) % p,
                (a2 * b1 + a3 * b3) % p,
            )

        return mul2
    if n == 3:

        def mul3(a: Mat, b: Mat) -> Mat:
            a0, a1, a2, a3, a4, a5, a6, a7, a8 = a
            b0, b1, b2, b3, b4, b5, b6, b7, b8 = b
            return (
                (a0 * b0 + a1 * b3 + a2 * b6) % p,
                (a0 * b1 + a1 * b4 + a2 * b7) % p,
                (a0 * b2 + a1 * b5 + a2 * b8) % p,
                (a3 * b0 + a4 * b3 + a5 * b6) % p,
                (a3 * b1 + a4 * b4 + a5 * b7) % p,
                (a3 * b2 + a4 * b5 + a5 * b8) % p,
                (a6 * b0 + a7 * b3 + a8 * b6) % p,
                (a6 * b1 + a7 * b4 + a8 * b7) % p,
                (a6 * b2 + a7 * b5 + a8 * b8) % p,
            )

        return mul3
    if n == 4:

        def mul4(a: Mat, b: Mat) -> Mat:
            (a0, a1, a2, a3, a4, a5, a6, a7,
             a8, a9, a10, a11, a12, a13, a14, a15) = a
            (b0, b1, b2, b3, b4, b5, b6, b7,
             b8, b9, b10, b11, b12, b13, b14, b15) = b
            return (
                (a0 * b0 + a1 * b4 + a2 * b8 + a3 * b12) % p,
                (a0 * b1 + a1 * b5 + a2 * b9 + a3 * b13) % p,
                (a0 * b2 + a1 * b6 + a2 * b10 + a3 * b14) % p,
                (a0 * b3 + a1 * b7 + a2 * b11 + a3 * b15) % p,
                (a4 * b0 + a5 * b4 + a6 * b8 + a7 * b12) % p,
                (a4 * b1 + a5 * b5 + a6 * b9 + a7 * b13) % p,
                (a4 * b2 + a5 * b6 + a6 * b10 + a7 * b14) % p,
                (a4 * b3 + a5 * b7 + a6 * b11 + a7 * b15) % p,
                (a8 * b0 + a9 * b4 + a10 * b8 + a11 * b12) % p,
                (a8 * b1 + a9 * b5 + a10 * b9 + a11 * b13) % p,
                (a8 * b2 + a9 * b6 + a10 * b10 + a11 * b14) % p,
                (a8 * b3 + a9 * b7 + a10 * b11 + a11 * b15) % p,
                (a12 * b0 + a13 * b4 + a14 * b8 + a15 * b12) % p,
                (a12 * b1 + a13 * b5 + a14 * b9 + a15 * b13) % p,
                (a12 * b2 + a13 * b6 + a14 * b10 + a15 * b14) % p,
                (a12 * b3 + a13 * b7 + a14 * b11 + a15 * b15) % p,
            )

        return mul4

    rng = range(n)

    def muln(a: Mat, b: Mat) -> Mat:
        out = []
        for i in rng:
            arow = a[i * n : i * n + n]
            for j in rng:
                s = 0
                for k in rng:
                    s += arow[k] * b[k * n + j]
                out.append(s % p)
        return tuple(out)

    return muln


class SpecialLinear:
    """Ambient context for SL_n(F_p) with its exact matrix operations."""

    __slots__ = ("n", "p", "field", "mul", "_identity", "_entry_width")

    def __init__(self, n: int, p: int | PrimeField):
        field = p if isinstance(p, PrimeField) else PrimeField(p)
        if n < 2:
            raise ValueError(f"matrix size n={n} must be at least 2")
        if field.p == 2:
            raise ValueError("experiments require an odd prime modulus")
        if field.p <= n:
            raise ValueError(f"experiments require p > n, got p={field.p}, n={n}")
        if field.p > 0xFFFF:
            raise ValueError("entries wider than two bytes are unsupported")
        self.n = n
        self.p = field.p
        self.field = field
        self.mul = _make_mul(n, self.p)
        ident = [0] * (n * n)
        for i in range(n):
            ident[i * n + i] = 1
        self._identity = tuple(ident)
        self._entry_width = 1 if self.p < 256 else 2

    # -- construction and bookkeeping ------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, SpecialLinear)
            and other.n == self.n
            and other.p == self.p
        )

    def __hash__(self):
        return hash(("SpecialLinear", self.n, self.p))

    def __repr__(self):
        return f"SpecialLinear(n={self.n}, p={self.p})"

    def identity(self) -> Mat:
        return self._identity

    def from_rows(self, rows: Sequence[Sequence[int]]) -> Mat:
        n, p = self.n, self.p
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n}x{n} rows")
        return tuple(int(x) % p for row in rows for x in row)

    def to_rows(self, g: Mat) -> list[list[int]]:
        n = self.n
        return [list(g[i * n : i * n + n]) for i in range(n)]

    def check_member(self, g: Mat) -> Mat:
        """Validate shape, canonical entries, and unit determinant."""
        n = self.n
        if len(g) != n * n:
            raise ValueError(f"expected flat tuple of length {n * n}")
        if any(not (0 <= x < self.p) for x in g):
            raise ValueError("entries must be canonical ints in [0, p)")
        if self.det(g) != 1:
            raise NotInGroup(f"determinant {self.det(g)} != 1")
        return g

    def order(self) -> int:
        """|SL_n(F_p)| = p^(n(n-1)/2) * prod_{i=2..n} (p^i - 1)."""
        n, p = self.n, self.p
        size = p ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            size *= p**i - 1
        return size

    # -- scalar extraction ------------------------------------------------

    def trace(self, g: Mat) -> int:
        n = self.n
        return sum(g[i * n + i] for i in range(n)) % self.p

    def trace_product(self, a: Mat, b: Mat) -> int:
        """tr(a @ b) without forming the product."""
        n = self.n
        s = 0
        for i in range(n):
            arow = a[i * n : i * n + n]
            for k in range(n):
                s += arow[k] * b[k * n + i]
        return s % self.p

    def det(self, g: Mat) -> int:
        p = self.p
        if self.n == 2:
            return (g[0] * g[3] - g[1] * g[2]) % p
        if self.n == 3:
            return (
                g[0] * (g[4] * g[8] - g[5] * g[7])
                - g[1] * (g[3] * g[8] - g[5] * g[6])
                + g[2] * (g[3] * g[7] - g[4] * g[6])
            ) % p
        return linalg.det_mod(self.to_rows(g), self.field)

    # -- products, inverses, powers ---------------------------------------

    def inv(self, g: Mat) -> Mat:
        n, p, field = self.n, self.p, self.field
        if n == 2:
            d = (g[0] * g[3] - g[1] * g[2]) % p
            if d == 0:
                raise SingularMatrix("determinant is zero")
            di = field.inv(d)
            return (
                (g[3] * di) % p,
                (-g[1] * di) % p,
                (-g[2] * di) % p,
                (g[0] * di) % p,
            )
        # Gauss-Jordan on [g | I]
        m = [list(g[i * n : i * n + n]) + [0] * n for i in range(n)]
        for i in range(n):
            m[i][n + i] = 1
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if m[r][col]:
                    pivot_row = r
                    break
            if pivot_row is None:
                raise SingularMatrix("determinant is zero")
            m[col], m[pivot_row] = m[pivot_row], m[col]
            inv_pivot = field.inv(m[col][col])
            m[col] = [(x * inv_pivot) % p for x in m[col]]
            row_c = m[col]
            for r in range(n):
                if r != col and m[r][col]:
                    factor = m[r][col]
                    row_r = m[r]
                    for c in range(col, 2 * n):
                        row_r[c] = (row_r[c] - factor * row_c[c]) % p
        return tuple(m[i][n + j] for i in range(n) for j in range(n))

    def power(self, g: Mat, e: int) -> Mat:
        if e < 0:
            return self.power(self.inv(g), -e)
        result = self._identity
        base = g
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def power_list(self, g: Mat, top: int) -> list[Mat]:
        """[I, g, g^2, ..., g^top] by repeated multiplication."""
        out = [self._identity]
        for _ in range(top):
            out.append(self.mul(out[-1], g))
        return out

    # -- characteristic and minimal polynomials ---------------------------

    def char_poly_full(self, g: Mat) -> list[int]:
        """Coefficients of det(xI - g), lowest degree first, monic."""
        n, p = self.n, self.p
        if n == 2:
            return [(g[0] * g[3] - g[1] * g[2]) % p, (-(g[0] + g[3])) % p, 1]
        if n == 3:
            e1 = (g[0] + g[4] + g[8]) % p
            e2 = (
                g[0] * g[4]
                - g[1] * g[3]
                + g[0] * g[8]
                - g[2] * g[6]
                + g[4] * g[8]
                - g[5] * g[7]
            ) % p
            e3 = self.det(g)
            return [(-e3) % p, e2, (-e1) % p, 1]
        # Newton's identities on power traces; valid since p > n
        powers = self.power_list(g, n)
        ptr = [self.trace(powers[i]) for i in range(n + 1)]
        es = [1] + [0] * n
        field = self.field
        for k in range(1, n + 1):
            acc = 0
            sign = 1
            for i in range(1, k + 1):
                acc += sign * es[k - i] * ptr[i]
                sign = -sign
            es[k] = (acc * field.inv(k)) % p
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        sign = -1
        for k in range(1, n + 1):
            coeffs[n - k] = (sign * es[k]) % p
            sign = -sign
        return coeffs

    def char_poly(self, g: Mat):
        """The conjugation invariant (a_{n-1}, ..., a_1) read off
        det(xI - g) = x^n + a_{n-1} x^(n-1) + ... + a_1 x + (-1)^n.

        Requires det(g) = 1; anything else raises NotInGroup.
        """
        n, p = self.n, self.p
        coeffs = self.char_poly_full(g)
        if coeffs[0] != (-1) ** n % p:
            raise NotInGroup("characteristic constant term shows det != 1")
        return tuple(coeffs[n - 1 - j] for j in range(n - 1))

    def minimal_polynomial(self, g: Mat) -> list[int]:
        """Monic minimal polynomial by iterating Krylov spans.

        For each basis vector, reduce the Krylov sequence v, gv, g^2 v,
        ... against an echelon basis while tracking the power combination
        that produced each vector; the first dependence yields the local
        annihilator, and the lcm over basis vectors is the answer.
        """
        n, p, field = self.n, self.p, self.field
        m_poly: list[int] = [1]
        for start in range(n):
            if polys.degree(m_poly) == n:
                break
            basis: list[tuple[int, list[int], list[int]]] = []
            vec = [0] * n
            vec[start] = 1
            combo = [1]
            while True:
                w = list(vec)
                cw = list(combo)
                for pivot, bvec, bcombo in basis:
                    c = w[pivot]
                    if c:
                        for i in range(n):
                            w[i] = (w[i] - c * bvec[i]) % p
                        if len(cw) < len(bcombo):
                            cw += [0] * (len(bcombo) - len(cw))
                        for i, b in enumerate(bcombo):
                            cw[i] = (cw[i] - c * b) % p
                pivot = next((i for i, x in enumerate(w) if x), None)
                if pivot is None:
                    ann = polys.monic(polys.trim(cw), field)
                    m_poly = polys.lcm(m_poly, ann, field)
                    break
                inv_pivot = field.inv(w[pivot])
                w = [(x * inv_pivot) % p for x in w]
                cw = [(x * inv_pivot) % p for x in cw]
                basis.append((pivot, w, cw))
                # next Krylov vector: apply g to the reduced vector
                vec = [
                    sum(g[i * n + k] * w[k] for k in range(n)) % p for i in range(n)
                ]
                combo = [0] + cw
        return m_poly

    # -- semisimplicity ----------------------------------------------------

    def classify_semisimple(self, g: Mat) -> SemisimplicityClass:
        """Three-way split driven by squarefreeness.

        Distinct eigenvalues (charpoly squarefree) give the regular case;
        otherwise diagonalizability is decided by squarefreeness of the
        minimal polynomial.  Valid since p > n keeps everything separable.
        """
        field = self.field
        f = self.char_poly_full(g)
        if polys.is_squarefree(f, field):
            return SemisimplicityClass.REGULAR_SEMISIMPLE
        m = self.minimal_polynomial(g)
        if polys.is_squarefree(m, field):
            return SemisimplicityClass.SEMISIMPLE_NOT_REGULAR
        return SemisimplicityClass.NOT_SEMISIMPLE

    def is_regular_semisimple(self, g: Mat) -> bool:
        return polys.is_squarefree(self.char_poly_full(g), self.field)

    def split_eigenvalues(self, g: Mat) -> Optional[list[int]]:
        """Eigenvalues sorted ascending as ints when g is split regular
        semisimple (n distinct rational roots); None otherwise."""
        f = self.char_poly_full(g)
        if not polys.is_squarefree(f, self.field):
            return None
        roots = polys.rational_roots(f, self.field)
        if len(roots) != self.n:
            return None
        return sorted(roots)

    # -- canonical bytes ----------------------------------------------------

    def encode(self, g: Mat) -> bytes:
        """Row-major bytes, one byte per entry for p < 256, else two
        (big-endian).  Injective on canonical matrices; decode inverts."""
        if self._entry_width == 1:
            return bytes(g)
        out = bytearray()
        for x in g:
            out.append(x >> 8)
            out.append(x & 0xFF)
        return bytes(out)

    def decode(self, data: bytes) -> Mat:
        n, w = self.n, self._entry_width
        if len(data) != n * n * w:
            raise ValueError(f"expected {n * n * w} bytes, got {len(data)}")
        if w == 1:
            entries = tuple(data)
        else:
            entries = tuple(
                (data[2 * i] << 8) | data[2 * i + 1] for i in range(n * n)
            )
        if any(x >= self.p for x in entries):
            raise ValueError("entry out of range for the field")
        return entries

    def kappa_hex(self, kappa: tuple) -> str:
        """Stable hex rendering of an invariant tuple (same entry width
        as encode)."""
        if self._entry_width == 1:
            return bytes(kappa).hex()
        out = bytearray()
        for x in kappa:
            out.append(x >> 8)
            out.append(x & 0xFF)
        return bytes(out).hex()

    # -- sampling ------------------------------------------------------------

    def random_element(self, rng) -> Mat:
        """Uniform element: random invertible matrix, then the last
        column is scaled by 1/det (column reduction to determinant one)."""
        n, p = self.n, self.p
        while True:
            entries = [rng.randrange(p) for _ in range(n * n)]
            d = self.det(tuple(entries))
            if d:
                break
        di = self.field.inv(d)
        for i in range(n):
            entries[i * n + n - 1] = (entries[i * n + n - 1] * di) % p
        return tuple(entries)

    def random_regular_semisimple(self, rng, max_tries: int = 10_000) -> Mat:
        for _ in range(max_tries):
            g = self.random_element(rng)
            if self.is_regular_semisimple(g):
                return g
        raise RuntimeError("no regular semisimple element found; tiny field?")
