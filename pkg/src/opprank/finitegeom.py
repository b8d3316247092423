"""Concrete building objects over GF(q) and oppositeness incidence matrices.

Type A objects are flags of subspaces of F_q^(l+1), canonicalized as
row-reduced echelon matrices; types B, C, D are restricted to singular points
of the standard split polar spaces.  Field elements are encoded as integers,
little-endian in p (digit k = coefficient of x^k of the residue polynomial).

Matrix file format (bit-exact):
    %%OppositenessMatrix v1
    <family> <rank> <q> <cotypeJ> <cotypeK> <nrows> <ncols>
followed by one '0'/'1' line per row.  Cotypes are written like [1,3] or [].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .jantzen import is_prime
from .rootdata import ConfigurationError, RootSystemSpec, build_root_system
from .weylgroup import TypeSet, complement, normalize_typeset, opposite_type, w_star

MAGIC = "%%OppositenessMatrix v1"
SIZE_CAP = 100_000

# Irreducible moduli for the non-prime fields in range (q <= 16),
# little-endian coefficient tuples: x^2+x+1, x^3+x+1, x^2+2x+2, x^4+x+1.
_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
}


class SizeCapError(ConfigurationError):
    """Requested enumeration exceeds the desk-scale object cap."""


class UnsupportedGeometryError(ConfigurationError):
    """No concrete point/flag model is implemented for this configuration."""


class ConsistencyError(AssertionError):
    """A built matrix violated a structural invariant (hard failure)."""


def _poly_mod(poly, modulus, p):
    poly = list(poly)
    t = len(modulus) - 1
    for k in range(len(poly) - 1, t - 1, -1):
        c = poly[k] % p
        if c:
            for j in range(t + 1):
                poly[k - t + j] = (poly[k - t + j] - c * modulus[j]) % p
    return [c % p for c in poly[:t]]


def _poly_divmod(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    inv_lead = pow(b[-1], -1, p)
    deg_b = len(b) - 1
    quot = [0] * max(len(a) - deg_b, 0)
    rem = list(a)
    for k in range(len(rem) - 1, deg_b - 1, -1):
        c = (rem[k] * inv_lead) % p
        if c:
            quot[k - deg_b] = c
            for j in range(deg_b + 1):
                rem[k - deg_b + j] = (rem[k - deg_b + j] - c * b[j]) % p
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def _check_irreducible(modulus, p):
    t = len(modulus) - 1
    if t == 1:
        return
    for deg in range(1, t // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]  # monic of degree deg
            _, rem = _poly_divmod(modulus, divisor, p)
            if not rem:
                raise ConfigurationError(
                    f"modulus {modulus} is reducible over F_{p}")


class FiniteField:
    """GF(q) for q = p^t <= 16, with full precomputed arithmetic tables."""

    def __init__(self, p: int, t: int = 1, modulus=None):
        if not is_prime(p):
            raise ConfigurationError(f"p = {p} is not prime")
        if t < 1:
            raise ConfigurationError("t must be >= 1")
        q = p ** t
        if q > 16:
            raise ConfigurationError(f"q = {q} exceeds the supported bound 16")
        if modulus is None:
            modulus = (0, 1) if t == 1 else _MODULI[q]
        modulus = tuple(c % p for c in modulus[:-1]) + (modulus[-1],)
        if len(modulus) != t + 1 or modulus[-1] != 1:
            raise ConfigurationError("modulus must be monic of degree t")
        _check_irreducible(modulus, p)
        self.p = p
        self.t = t
        self.q = q
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, t, q = self.p, self.t, self.q

        def digits(x):
            return [(x // p ** k) % p for k in range(t)]

        def undigits(ds):
            return sum(d * p ** k for k, d in enumerate(ds))

        self.add = [[undigits([(a + b) % p for a, b in zip(digits(x), digits(y))])
                     for y in range(q)] for x in range(q)]
        self.neg = [undigits([(-a) % p for a in digits(x)]) for x in range(q)]
        mul = []
        for x in range(q):
            row = []
            dx = digits(x)
            for y in range(q):
                dy = digits(y)
                prod = [0] * (2 * t - 1)
                for i, a in enumerate(dx):
                    if a:
                        for j, b in enumerate(dy):
                            prod[i + j] += a * b
                row.append(undigits(_poly_mod(prod, self.modulus, p)))
            mul.append(row)
        self.mul = mul
        self.inv = [0] * q
        for x in range(1, q):
            self.inv[x] = next(y for y in range(1, q) if mul[x][y] == 1)

    def sub(self, x, y):
        return self.add[x][self.neg[y]]

    def __repr__(self):
        return f"FiniteField(p={self.p}, t={self.t})"


@lru_cache(maxsize=None)
def finite_field(p: int, t: int = 1) -> FiniteField:
    return FiniteField(p, t)


# ---------------------------------------------------------------------------
# Subspaces as canonical RREF matrices (tuples of row tuples of encoded ints)

SubspaceMat = tuple[tuple[int, ...], ...]


def rref(field: FiniteField, rows) -> SubspaceMat:
    """Reduced row echelon form; zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv[m[r][c]]
        if inv != 1:
            m[r] = [field.mul[inv][x] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul[f][y]) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r] if any(row))


def matrix_rank(field: FiniteField, rows) -> int:
    return len(rref(field, rows))


def enumerate_subspaces(field: FiniteField, n: int, dim: int):
    """All dim-dimensional subspaces of F_q^n as canonical RREF matrices."""
    if dim == 0:
        yield ()
        return
    q = field.q
    for pivots in itertools.combinations(range(n), dim):
        pset = set(pivots)
        free = [(i, j) for i in range(dim) for j in range(n)
                if j > pivots[i] and j not in pset]
        for vals in itertools.product(range(q), repeat=len(free)):
            mat = [[0] * n for _ in range(dim)]
            for i, pc in enumerate(pivots):
                mat[i][pc] = 1
            for (i, j), v in zip(free, vals):
                mat[i][j] = v
            yield tuple(tuple(row) for row in mat)


def enumerate_superspaces(field: FiniteField, sub: SubspaceMat, n: int, dim: int):
    """All dim-dimensional subspaces containing `sub` (lift from the quotient)."""
    d = len(sub)
    pivots = [next(j for j in range(n) if row[j]) for row in sub]
    nonpivots = [j for j in range(n) if j not in pivots]
    for small in enumerate_subspaces(field, n - d, dim - d):
        lifted = list(sub)
        for row in small:
            vec = [0] * n
            for pos, val in zip(nonpivots, row):
                vec[pos] = val
            lifted.append(tuple(vec))
        yield rref(field, lifted)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# Geometry problems

Flag = tuple[SubspaceMat, ...]


@dataclass(frozen=True)
class GeometryProblem:
    family: str
    rank: int
    field: FiniteField
    cotype: TypeSet

    def __post_init__(self):
        RootSystemSpec(self.family, self.rank)  # validates (family, rank)
        cot = normalize_typeset(self.rank, self.cotype)
        object.__setattr__(self, "cotype", cot)
        if self.family == "A":
            if cot == tuple(range(1, self.rank + 1)):
                raise UnsupportedGeometryError(
                    "cotype I has the empty type; no objects to enumerate")
        elif self.family in ("B", "C", "D"):
            if cot != tuple(range(2, self.rank + 1)):
                raise UnsupportedGeometryError(
                    f"type {self.family}: only the singular-point cotype "
                    f"(all nodes but 1) is supported, got {list(cot)}")
            if self.family == "B" and self.field.p == 2:
                raise UnsupportedGeometryError(
                    "type B geometry needs an odd characteristic")
        else:
            raise UnsupportedGeometryError(
                f"no concrete geometry for family {self.family}")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def ambient_dim(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "B":
            return 2 * self.rank + 1
        return 2 * self.rank

    @property
    def type_dims(self) -> tuple[int, ...]:
        """Subspace dimensions of a flag of this cotype (type A)."""
        return complement(self.rank, self.cotype)

    def opposite_problem(self) -> "GeometryProblem":
        rs = build_root_system(RootSystemSpec(self.family, self.rank))
        k = opposite_type(rs, self.cotype)
        return GeometryProblem(self.family, self.rank, self.field, k)


def expected_object_count(problem: GeometryProblem) -> int:
    """Closed-form count: Gaussian binomials / classical point counts."""
    q = problem.q
    if problem.family == "A":
        n = problem.ambient_dim
        total = 1
        prev = 0
        for d in problem.type_dims:
            total *= gaussian_binomial(n - prev, d - prev, q)
            prev = d
        return total
    ell = problem.rank
    if problem.family in ("B", "C"):
        return (q ** (2 * ell) - 1) // (q - 1)
    return (q ** (ell - 1) + 1) * (q ** ell - 1) // (q - 1)  # D


def _gram_matrix(problem: GeometryProblem):
    """Encoded Gram matrix of the polar form B(x,y) (symplectic for C,
    polarization of the split quadratic form for B and D)."""
    field = problem.field
    n = problem.ambient_dim
    g = [[0] * n for _ in range(n)]
    ell = problem.rank
    one = 1
    if problem.family == "C":
        for i in range(ell):
            g[i][n - 1 - i] = one
            g[n - 1 - i][i] = field.neg[one]
    else:
        for i in range(ell):
            g[i][n - 1 - i] = one
            g[n - 1 - i][i] = one
        if problem.family == "B":
            two = field.add[one][one]
            g[ell][ell] = two  # middle coordinate, 2*z*z' from polarization
    return tuple(tuple(row) for row in g)


def _quadratic_value(problem: GeometryProblem, vec) -> int:
    """Q(v) for the split quadratic form (B and D families)."""
    field = problem.field
    n = problem.ambient_dim
    acc = 0
    for i in range(problem.rank):
        acc = field.add[acc][field.mul[vec[i]][vec[n - 1 - i]]]
    if problem.family == "B":
        m = problem.rank
        acc = field.add[acc][field.mul[vec[m]][vec[m]]]
    return acc


def form_value(problem: GeometryProblem, x, y) -> int:
    """B(x, y) for canonical point vectors x, y."""
    field = problem.field
    g = _gram_matrix(problem)
    acc = 0
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = g[i]
        for j, yj in enumerate(y):
            if yj and row[j]:
                acc = field.add[acc][field.mul[xi][field.mul[row[j]][yj]]]
    return acc


def _projective_vectors(field: FiniteField, n: int):
    """Canonical representatives of the points of PG(n-1, q)."""
    q = field.q
    for lead in range(n):
        for tail in itertools.product(range(q), repeat=n - 1 - lead):
            yield (0,) * lead + (1,) + tail


def enumerate_objects(problem: GeometryProblem) -> list[Flag]:
    """All objects of the problem's cotype, as flags of canonical matrices."""
    expected = expected_object_count(problem)
    if expected > SIZE_CAP:
        raise SizeCapError(
            f"{expected} objects exceed the size cap {SIZE_CAP}")

    if problem.family == "A":
        n = problem.ambient_dim
        dims = problem.type_dims
        flags: list[Flag] = [
            (s,) for s in enumerate_subspaces(problem.field, n, dims[0])]
        for d in dims[1:]:
            flags = [flag + (sup,) for flag in flags
                     for sup in enumerate_superspaces(problem.field, flag[-1], n, d)]
        out = flags
    else:
        out = []
        for vec in _projective_vectors(problem.field, problem.ambient_dim):
            if problem.family == "C" or _quadratic_value(problem, vec) == 0:
                out.append(((vec,),))

    if len(out) != expected:
        raise ConsistencyError(
            f"enumerated {len(out)} objects, closed form gives {expected}")
    return sorted(out)


def is_opposite(x: Flag, y: Flag, problem: GeometryProblem) -> bool:
    """Oppositeness: trivial intersections for type A flags, non-orthogonality
    of singular points for B/C/D."""
    if problem.family == "A":
        n = problem.ambient_dim
        # component of dim d in x pairs with the component of dim n-d in y
        for u in x:
            d = len(u)
            w = next((w for w in y if len(w) == n - d), None)
            if w is None:
                raise ValueError("flags have non-opposite types")
            if matrix_rank(problem.field, u + w) != n:
                return False
        return True
    return form_value(problem, x[0][0], y[0][0]) != 0


@dataclass(frozen=True)
class IncidenceMatrix:
    family: str
    rank: int
    q: int
    cotype_row: TypeSet
    cotype_col: TypeSet
    row_labels: tuple[Flag, ...]
    col_labels: tuple[Flag, ...]
    bitrows: tuple[int, ...]  # bit j of bitrows[i] = entry (i, j)
    wstar_length: int

    @property
    def nrows(self) -> int:
        return len(self.row_labels)

    @property
    def ncols(self) -> int:
        return len(self.col_labels)

    @property
    def row_sum(self) -> int:
        return self.q ** self.wstar_length

    def entry(self, i: int, j: int) -> int:
        return (self.bitrows[i] >> j) & 1

    def row_string(self, i: int) -> str:
        r = self.bitrows[i]
        return "".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols))

    def transpose(self) -> "IncidenceMatrix":
        cols = [0] * self.ncols
        for i, row in enumerate(self.bitrows):
            while row:
                j = (row & -row).bit_length() - 1
                cols[j] |= 1 << i
                row &= row - 1
        return IncidenceMatrix(self.family, self.rank, self.q,
                               self.cotype_col, self.cotype_row,
                               self.col_labels, self.row_labels,
                               tuple(cols), self.wstar_length)


def _fill_bitrows_points_prime(problem: GeometryProblem, rows):
    """Vectorized non-orthogonality fill for B/C/D points over a prime field.

    B(x, y) != 0 for all pairs at once via blocked V G V^T mod p; exact since
    the int64 intermediates stay tiny.  Returns (bitrows, column sums).
    """
    import numpy as np
    p = problem.field.p
    vecs = np.array([flag[0][0] for flag in rows], dtype=np.int64)
    g = np.array(_gram_matrix(problem), dtype=np.int64)
    vg = (vecs @ g) % p
    bitrows = []
    colsums = np.zeros(len(rows), dtype=np.int64)
    block = max(1, 4_000_000 // max(len(rows), 1))
    for start in range(0, len(rows), block):
        opp = (vg[start:start + block] @ vecs.T) % p != 0
        colsums += opp.sum(axis=0)
        packed = np.packbits(opp, axis=1, bitorder="little")
        for rowbytes in packed:
            bitrows.append(int.from_bytes(rowbytes.tobytes(), "little"))
    return bitrows, [int(s) for s in colsums]


def build_incidence(problem: GeometryProblem) -> IncidenceMatrix:
    """Oppositeness matrix with deterministic (lexicographic) label order.

    Row and column sums are checked against q^len(w*) and any violation is a
    hard failure.
    """
    rows = enumerate_objects(problem)
    opp = problem.opposite_problem()
    if opp.cotype == problem.cotype:
        cols = rows
    else:
        cols = enumerate_objects(opp)

    rs = build_root_system(RootSystemSpec(problem.family, problem.rank))
    lws = len(w_star(rs, problem.cotype))
    target = problem.q ** lws

    if problem.family in ("B", "C", "D") and problem.field.t == 1:
        bitrows, colsums = _fill_bitrows_points_prime(problem, rows)
    else:
        bitrows = []
        colsums = [0] * len(cols)
        for x in rows:
            bits = 0
            for j, y in enumerate(cols):
                if is_opposite(x, y, problem):
                    bits |= 1 << j
                    colsums[j] += 1
            bitrows.append(bits)

    for i, bits in enumerate(bitrows):
        if bits.bit_count() != target:
            raise ConsistencyError(
                f"row {i} sum {bits.bit_count()} != q^l(w*) = {target} "
                f"for {problem}")
    bad = next((s for s in colsums if s != target), None)
    if bad is not None:
        raise ConsistencyError(f"column sum {bad} != q^l(w*) = {target}")

    return IncidenceMatrix(problem.family, problem.rank, problem.q,
                           problem.cotype, opp.cotype,
                           tuple(rows), tuple(cols), tuple(bitrows), lws)


# ---------------------------------------------------------------------------
# Serialization

def _typeset_str(ts: TypeSet) -> str:
    return "[" + ",".join(str(i) for i in ts) + "]"


def parse_typeset(s: str) -> TypeSet:
    s = s.strip().strip("[]")
    if not s:
        return ()
    return tuple(sorted(set(int(tok) for tok in s.split(","))))


def matrix_to_text(m: IncidenceMatrix) -> str:
    header = (f"{MAGIC}\n{m.family} {m.rank} {m.q} "
              f"{_typeset_str(m.cotype_row)} {_typeset_str(m.cotype_col)} "
              f"{m.nrows} {m.ncols}\n")
    return header + "".join(m.row_string(i) + "\n" for i in range(m.nrows))


def parse_matrix_text(text: str):
    """Parse the matrix file format; returns (metadata dict, bitrows, ncols)."""
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise ValueError("not an oppositeness matrix file")
    fields = lines[1].split()
    if len(fields) != 7:
        raise ValueError("malformed matrix header")
    meta = {
        "family": fields[0],
        "rank": int(fields[1]),
        "q": int(fields[2]),
        "cotype_row": parse_typeset(fields[3]),
        "cotype_col": parse_typeset(fields[4]),
        "nrows": int(fields[5]),
        "ncols": int(fields[6]),
    }
    bitrows = []
    for line in lines[2:2 + meta["nrows"]]:
        if len(line) != meta["ncols"] or set(line) - {"0", "1"}:
            raise ValueError("malformed matrix row")
        bits = 0
        for j, ch in enumerate(line):
            if ch == "1":
                bits |= 1 << j
        bitrows.append(bits)
    if len(bitrows) != meta["nrows"]:
        raise ValueError("truncated matrix file")
    return meta, bitrows


def flag_label(flag: Flag) -> str:
    """One flag per line: components joined by '|', matrix rows by ';'."""
    return "|".join(";".join(" ".join(str(e) for e in row) for row in comp)
                    for comp in flag)


def labels_to_text(labels) -> str:
    return "".join(flag_label(f) + "\n" for f in labels)
