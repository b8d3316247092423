"""Exact rank over F_p and exact integer spectral checks on Gram matrices.

Two elimination paths: a word-packed XOR path for p = 2 (rows are Python ints
used as bitsets) and a vectorized generic path for odd p.  Both use the same
deterministic pivot rule: sweep columns left to right, take the first row
with a nonzero entry.  Rational ranks for the spectral check are computed by
fraction-free (Bareiss) elimination over exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finitegeom import IncidenceMatrix

SPECTRUM_SIZE_CAP = 200

IntMatrix = list[list[int]]


@dataclass
class MatrixModP:
    """Dense matrix over F_p; bitset rows for p = 2, numpy rows otherwise."""
    p: int
    nrows: int
    ncols: int
    bitrows: list[int] | None = None
    array: np.ndarray | None = None

    @classmethod
    def from_rows(cls, p: int, rows, ncols: int | None = None) -> "MatrixModP":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if p == 2:
            bitrows = []
            for r in rows:
                bits = 0
                for j, x in enumerate(r):
                    if x % 2:
                        bits |= 1 << j
                bitrows.append(bits)
            return cls(2, len(rows), ncols, bitrows=bitrows)
        arr = np.array(rows, dtype=np.int64) % p
        arr = arr.reshape(len(rows), ncols)
        return cls(p, len(rows), ncols, array=arr)

    @classmethod
    def from_bitrows(cls, bitrows, ncols: int) -> "MatrixModP":
        return cls(2, len(bitrows), ncols, bitrows=list(bitrows))

    @classmethod
    def from_incidence(cls, m: IncidenceMatrix, p: int) -> "MatrixModP":
        if p == 2:
            return cls.from_bitrows(m.bitrows, m.ncols)
        rows = [[m.entry(i, j) for j in range(m.ncols)] for i in range(m.nrows)]
        return cls.from_rows(p, rows, m.ncols)

    def transpose(self) -> "MatrixModP":
        if self.p == 2:
            cols = [0] * self.ncols
            for i, row in enumerate(self.bitrows):
                while row:
                    j = (row & -row).bit_length() - 1
                    cols[j] |= 1 << i
                    row &= row - 1
            return MatrixModP(2, self.ncols, self.nrows, bitrows=cols)
        return MatrixModP(self.p, self.ncols, self.nrows, array=self.array.T.copy())


def _rank_packed_gf2(bitrows, ncols: int) -> int:
    rows = list(bitrows)
    r = 0
    for c in range(ncols):
        bit = 1 << c
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot_row = rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i] & bit:
                rows[i] ^= pivot_row
        r += 1
        if r == len(rows):
            break
    return r


def _rank_generic(arr: np.ndarray, p: int) -> int:
    a = arr % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:]
        factors = below[:, c]
        mask = factors != 0
        if mask.any():
            below[mask] = (below[mask] - np.outer(factors[mask], a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def rank_mod_p(m: MatrixModP) -> int:
    """Rank by Gaussian elimination mod p (deterministic pivoting)."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.p == 2:
        return _rank_packed_gf2(m.bitrows, m.ncols)
    return _rank_generic(m.array.copy(), m.p)


def rank_mod_p_generic(m: MatrixModP) -> int:
    """Generic-path rank regardless of p (cross-check for the packed path)."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.p == 2 and m.array is None:
        rows = [[(row >> j) & 1 for j in range(m.ncols)] for row in m.bitrows]
        return _rank_generic(np.array(rows, dtype=np.int64), 2)
    return _rank_generic(m.array.copy(), m.p)


# ---------------------------------------------------------------------------
# Exact integer linear algebra

def gram(m: IncidenceMatrix) -> IntMatrix:
    """A * A^T over the integers, via bitset popcounts on the 0/1 rows."""
    rows = m.bitrows
    n = len(rows)
    return [[(rows[i] & rows[j]).bit_count() for j in range(n)] for i in range(n)]


def int_mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    k = len(b)
    cols = len(b[0]) if b else 0
    bt = [[b[i][j] for i in range(k)] for j in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def bareiss_rank(mat: IntMatrix) -> int:
    """Exact rank over Q by fraction-free elimination."""
    m = [list(r) for r in mat]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            fi = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                num = row_i[j] * pivot - fi * row_r[j]
                quot, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division not exact"
                row_i[j] = quot
            row_i[c] = 0
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r


@dataclass(frozen=True)
class EigenPowerResult:
    ok: bool
    exponents: tuple[int, ...]
    has_zero_eigenvalue: bool

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "exponents": list(self.exponents),
                "has_zero_eigenvalue": self.has_zero_eigenvalue}


def check_eigen_powers(m: IntMatrix, q: int, max_exp: int) -> EigenPowerResult:
    """Certify that every nonzero eigenvalue of a symmetric integer matrix is
    a power of q, by exact annihilation.

    Greedily multiplies factors (M - q^a I), a = 0..max_exp, keeping those
    that strictly drop the rational rank of the running product; a singular M
    additionally gets the factor M itself, reported separately since 0 is not
    a power of q.  ok means the product reached the zero matrix.
    """
    n = len(m)
    if n > SPECTRUM_SIZE_CAP:
        raise ValueError(f"matrix size {n} exceeds spectral cap {SPECTRUM_SIZE_CAP}")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("eigen-power check requires a symmetric matrix")

    # The running product starts at the identity; for diagonalizable M its
    # rank counts the eigenvalues not yet annihilated, so each candidate
    # factor needs only one trial ever.
    product = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rank = n
    exponents = []

    # 0 is not a power of q: a singular M gets the factor M itself, reported
    # separately, and the power claim is checked on the nonzero spectrum
    has_zero = bareiss_rank(m) < n
    if has_zero:
        product = [list(row) for row in m]
        rank = bareiss_rank(product)

    for a in range(max_exp + 1):
        if rank == 0:
            break
        shift = q ** a
        factor = [[m[i][j] - (shift if i == j else 0) for j in range(n)]
                  for i in range(n)]
        trial = int_mat_mul(product, factor)
        r2 = bareiss_rank(trial)
        if r2 < rank:
            product, rank = trial, r2
            exponents.append(a)

    return EigenPowerResult(rank == 0, tuple(exponents), has_zero)
