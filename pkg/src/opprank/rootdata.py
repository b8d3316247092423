"""Exact root-system data for the finite crystallographic families A-G.

All data lives in the simple-root / fundamental-weight bases with integer
coordinates; there are no Euclidean embeddings and no floating point.  The
Cartan convention is fixed once, here, and inherited by every other module:

    cartan[i][j] = <alpha_j, alpha_i_vee>

(row index = coroot, column index = root, both 0-based internally while the
public node labels are 1-based).

E-family node numbering: the chain is 1-2-3-5-6(-7)(-8) with node 4 hanging
below node 3.  For E6 this maps to Bourbaki labels as
ours (1,2,3,4,5,6) = Bourbaki (1,3,4,2,5,6).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[int, ...]


class ConfigurationError(ValueError):
    """Inadmissible root-system, geometry or job parameters."""


# (family, rank) admissibility: min rank, max rank
_RANK_RANGE = {"A": (1, 8), "B": (2, 8), "C": (2, 8), "D": (3, 8),
               "E": (6, 8), "F": (4, 4), "G": (2, 2)}


def positive_root_count(family: str, rank: int) -> int:
    """Classical count of positive roots."""
    if family == "A":
        return rank * (rank + 1) // 2
    if family in ("B", "C"):
        return rank * rank
    if family == "D":
        return rank * (rank - 1)
    if family == "E":
        return {6: 36, 7: 63, 8: 120}[rank]
    if family == "F":
        return 24
    return 6  # G2


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        lo_hi = _RANK_RANGE.get(self.family)
        if lo_hi is None:
            raise ConfigurationError(f"unknown family {self.family!r}")
        lo, hi = lo_hi
        if not (lo <= self.rank <= hi):
            raise ConfigurationError(
                f"rank {self.rank} not admissible for family {self.family} "
                f"(allowed {lo}..{hi})")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def parse_system_name(name: str) -> RootSystemSpec:
    """Parse a config name like 'E6' or 'A3'."""
    name = name.strip()
    if len(name) < 2 or not name[0].isalpha() or not name[1:].isdigit():
        raise ConfigurationError(f"bad root system name {name!r}")
    return RootSystemSpec(name[0].upper(), int(name[1:]))


@dataclass(frozen=True)
class Root:
    """A positive root: coordinates in the simple-root basis plus the
    precomputed integer coordinates of its coroot in the simple-coroot basis."""
    simple_coords: tuple[int, ...]
    coroot_simple_coords: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.simple_coords)


def _diagram(family: str, rank: int):
    """Edges (1-based node pairs, data = (c_ij, c_ji)) and symmetrizer d."""
    single = (-1, -1)
    edges: dict[tuple[int, int], tuple[int, int]] = {}
    d = [1] * rank
    if family in ("A", "B", "C"):
        for i in range(1, rank):
            edges[(i, i + 1)] = single
        if family == "B":
            # cartan[rank][rank-1] = -2: last node short
            edges[(rank - 1, rank)] = (-1, -2)
            d = [2] * (rank - 1) + [1]
        elif family == "C":
            edges[(rank - 1, rank)] = (-2, -1)
            d = [1] * (rank - 1) + [2]
    elif family == "D":
        for i in range(1, rank - 2):
            edges[(i, i + 1)] = single
        edges[(rank - 2, rank - 1)] = single
        edges[(rank - 2, rank)] = single
    elif family == "E":
        edges[(1, 2)] = single
        edges[(2, 3)] = single
        edges[(3, 4)] = single
        edges[(3, 5)] = single
        for i in range(5, rank):
            edges[(i, i + 1)] = single
    elif family == "F":
        edges[(1, 2)] = single
        edges[(2, 3)] = (-1, -2)  # nodes 1,2 long; 3,4 short
        edges[(3, 4)] = single
        d = [2, 2, 1, 1]
    else:  # G2: node 1 short, node 2 long
        edges[(1, 2)] = (-3, -1)
        d = [1, 3]
    return edges, d


def _build_cartan(family: str, rank: int):
    edges, d = _diagram(family, rank)
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for (a, b), (cab, cba) in edges.items():
        cartan[a - 1][b - 1] = cab
        cartan[b - 1][a - 1] = cba
    return tuple(tuple(row) for row in cartan), tuple(d)


def _close_positive_roots(cartan, rank: int) -> list[tuple[int, ...]]:
    """All positive roots by reflection closure starting from the simple roots."""
    def pair_with_coroot(coords, i):
        return sum(cartan[i][j] * coords[j] for j in range(rank))

    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for coords in frontier:
            for i in range(rank):
                c = pair_with_coroot(coords, i)
                refl = list(coords)
                refl[i] -= c
                refl_t = tuple(refl)
                if all(x >= 0 for x in refl_t) and refl_t not in found:
                    found.add(refl_t)
                    nxt.append(refl_t)
        frontier = nxt
    return sorted(found, key=lambda c: (sum(c), c))


def _invert_matrix(rows):
    """Exact inverse of a small integer matrix, as Fractions."""
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class RootSystem:
    spec: RootSystemSpec
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    cartan_inverse: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def family(self) -> str:
        return self.spec.family

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero_weight(self) -> Weight:
        return (0,) * self.rank

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def simple_root_in_weight_basis(self, i: int) -> Weight:
        """alpha_i written in the fundamental-weight basis (i 1-based)."""
        return tuple(self.cartan[j][i - 1] for j in range(self.rank))

    def weight_in_root_basis(self, w: Weight) -> tuple[Fraction, ...]:
        """Exact simple-root coordinates of a weight given in the omega basis."""
        n = self.rank
        return tuple(sum(self.cartan_inverse[i][j] * w[j] for j in range(n))
                     for i in range(n))


@lru_cache(maxsize=None)
def build_root_system(spec: RootSystemSpec) -> RootSystem:
    """Construct the full root system for an admissible (family, rank)."""
    rank = spec.rank
    cartan, d = _build_cartan(spec.family, rank)
    coords_list = _close_positive_roots(cartan, rank)

    expected = positive_root_count(spec.family, rank)
    if len(coords_list) != expected:
        raise AssertionError(
            f"positive-root closure for {spec.name} found {len(coords_list)} "
            f"roots, classical count is {expected}")

    roots = []
    for coords in coords_list:
        # (alpha, alpha)/2 from the symmetrized Cartan matrix
        norm = sum(coords[i] * coords[j] * d[i] * cartan[i][j]
                   for i in range(rank) for j in range(rank))
        assert norm % 2 == 0 and norm > 0
        half = norm // 2
        cor = []
        for i in range(rank):
            num = coords[i] * d[i]
            assert num % half == 0
            cor.append(num // half)
        roots.append(Root(coords, tuple(cor)))

    return RootSystem(spec, cartan, d, tuple(roots), _invert_matrix(cartan))


def root_system(name_or_spec) -> RootSystem:
    """Convenience accessor: root_system('E6') or root_system(spec)."""
    if isinstance(name_or_spec, RootSystemSpec):
        return build_root_system(name_or_spec)
    return build_root_system(parse_system_name(str(name_or_spec)))


def pairing(lam: Weight, root: Root) -> int:
    """<lam, alpha_vee> for lam in the fundamental-weight basis."""
    if len(lam) != len(root.coroot_simple_coords):
        raise ValueError("weight/root dimension mismatch")
    return sum(a * b for a, b in zip(lam, root.coroot_simple_coords))


def root_in_weight_basis(rs: RootSystem, root: Root) -> Weight:
    """A root re-expressed in the fundamental-weight basis (Cartan columns)."""
    n = rs.rank
    c = root.simple_coords
    return tuple(sum(rs.cartan[i][j] * c[j] for j in range(n)) for i in range(n))


def is_dominant(w: Weight) -> bool:
    return all(x >= 0 for x in w)


def add_weights(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub_weights(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale_weight(c: int, a: Weight) -> Weight:
    return tuple(c * x for x in a)
