"""Root-system construction: counts, pairings, symmetrizer, conventions."""

import itertools

import pytest

from opprank.rootdata import (ConfigurationError, RootSystemSpec, pairing,
                              positive_root_count, parse_system_name,
                              root_in_weight_basis, root_system)

ALL_SYSTEMS = (
    [f"A{l}" for l in range(1, 9)]
    + [f"B{l}" for l in range(2, 9)]
    + [f"C{l}" for l in range(2, 9)]
    + [f"D{l}" for l in range(3, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)

# classical positive-root counts per family
CLASSICAL_COUNTS = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "A5": 15, "A6": 21,
                    "A7": 28, "A8": 36,
                    "B2": 4, "B3": 9, "B4": 16, "B5": 25, "B6": 36, "B7": 49,
                    "B8": 64,
                    "C2": 4, "C3": 9, "C4": 16, "C5": 25, "C6": 36, "C7": 49,
                    "C8": 64,
                    "D3": 6, "D4": 12, "D5": 20, "D6": 30, "D7": 42, "D8": 56,
                    "E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}


@pytest.mark.parametrize("name", ALL_SYSTEMS)
def test_positive_root_count_table(name):
    rs = root_system(name)
    assert len(rs.positive_roots) == CLASSICAL_COUNTS[name]
    assert positive_root_count(rs.family, rs.rank) == CLASSICAL_COUNTS[name]


@pytest.mark.parametrize("name", ALL_SYSTEMS)
def test_cartan_shape(name):
    rs = root_system(name)
    n = rs.rank
    for i in range(n):
        assert rs.cartan[i][i] == 2
        for j in range(n):
            if i != j:
                assert rs.cartan[i][j] <= 0


@pytest.mark.parametrize("name", ALL_SYSTEMS)
def test_simple_roots_present_and_coords_nonnegative(name):
    rs = root_system(name)
    coords = {r.simple_coords for r in rs.positive_roots}
    for i in range(rs.rank):
        unit = tuple(1 if j == i else 0 for j in range(rs.rank))
        assert unit in coords
    for r in rs.positive_roots:
        assert all(c >= 0 for c in r.simple_coords)


@pytest.mark.parametrize("name", ALL_SYSTEMS)
def test_root_string_closure(name):
    # reflecting any positive root other than alpha_i by s_i stays positive
    rs = root_system(name)
    n = rs.rank
    coords = {r.simple_coords for r in rs.positive_roots}
    for r in rs.positive_roots:
        for i in range(n):
            c = sum(rs.cartan[i][j] * r.simple_coords[j] for j in range(n))
            refl = list(r.simple_coords)
            refl[i] -= c
            refl = tuple(refl)
            unit = tuple(1 if j == i else 0 for j in range(n))
            if r.simple_coords == unit:
                assert refl == tuple(-x for x in unit)
            else:
                assert refl in coords


@pytest.mark.parametrize("name", ALL_SYSTEMS)
def test_rho_pairing_is_coroot_height(name):
    rs = root_system(name)
    for r in rs.positive_roots:
        assert pairing(rs.rho, r) == sum(r.coroot_simple_coords)


@pytest.mark.parametrize("name", ALL_SYSTEMS)
def test_symmetrized_cartan_positive_definite(name):
    rs = root_system(name)
    n = rs.rank
    sym = [[rs.symmetrizer[i] * rs.cartan[i][j] for j in range(n)]
           for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert sym[i][j] == sym[j][i]
    # fraction-free elimination: after step c the pivot m[c][c] equals the
    # (c+1)-st leading principal minor, all of which must be > 0
    m = [list(row) for row in sym]
    prev = 1
    for c in range(n):
        assert m[c][c] > 0
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]


def test_a2_has_three_positive_roots():
    rs = root_system("A2")
    coords = sorted(r.simple_coords for r in rs.positive_roots)
    assert coords == [(0, 1), (1, 0), (1, 1)]


def test_e6_count_and_g2_cartan():
    assert len(root_system("E6").positive_roots) == 36
    g2 = root_system("G2")
    off = sorted([g2.cartan[0][1], g2.cartan[1][0]])
    assert off == [-3, -1]


def test_pairing_duality_and_diagonal():
    for name in ("A3", "B3", "C3", "G2", "F4"):
        rs = root_system(name)
        simple = {r.simple_coords: r for r in rs.positive_roots
                  if sum(r.simple_coords) == 1}
        for i in range(rs.rank):
            unit = tuple(1 if j == i else 0 for j in range(rs.rank))
            alpha_i = simple[unit]
            for k in range(1, rs.rank + 1):
                omega = rs.fundamental_weight(k)
                assert pairing(omega, alpha_i) == (1 if k == i + 1 else 0)
            alpha_w = root_in_weight_basis(rs, alpha_i)
            assert pairing(alpha_w, alpha_i) == 2


def test_a2_rho_with_highest_root():
    rs = root_system("A2")
    theta = next(r for r in rs.positive_roots if r.simple_coords == (1, 1))
    # sum of theta's coroot coordinates = 1 + 1
    assert pairing(rs.rho, theta) == 2


def test_root_in_weight_basis_examples():
    a1 = root_system("A1")
    (alpha,) = [r for r in a1.positive_roots]
    assert root_in_weight_basis(a1, alpha) == (2,)
    a2 = root_system("A2")
    by_coords = {r.simple_coords: r for r in a2.positive_roots}
    assert root_in_weight_basis(a2, by_coords[(1, 0)]) == (2, -1)
    # sum of the two Cartan columns
    assert root_in_weight_basis(a2, by_coords[(1, 1)]) == (1, 1)


@pytest.mark.parametrize("family,rank", [
    ("A", 0), ("A", 9), ("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9),
    ("F", 3), ("F", 5), ("G", 1), ("G", 3), ("H", 2),
])
def test_inadmissible_specs_rejected(family, rank):
    with pytest.raises(ConfigurationError):
        RootSystemSpec(family, rank)


def test_parse_system_name():
    assert parse_system_name("E6") == RootSystemSpec("E", 6)
    assert parse_system_name("a3") == RootSystemSpec("A", 3)
    with pytest.raises(ConfigurationError):
        parse_system_name("6E")
    with pytest.raises(ConfigurationError):
        parse_system_name("A")


def test_coroot_integrality():
    for name in ALL_SYSTEMS:
        rs = root_system(name)
        for r in rs.positive_roots:
            assert all(isinstance(c, int) for c in r.coroot_simple_coords)
            assert any(c != 0 for c in r.coroot_simple_coords)


def test_weight_in_root_basis_roundtrip():
    for name in ("A2", "B3", "G2", "E6"):
        rs = root_system(name)
        for r in itertools.islice(rs.positive_roots, 5):
            w = root_in_weight_basis(rs, r)
            back = rs.weight_in_root_basis(w)
            assert tuple(int(x) for x in back) == r.simple_coords
