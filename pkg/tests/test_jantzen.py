"""Jantzen sums, chain resolution, opposite weights, closed forms."""

import itertools

import pytest

from opprank.characters import char_dim, weyl_dim
from opprank.jantzen import (jantzen_sum, lambda_opp, resolve_simple,
                             steinberg_rank_power, truncated_poly_dim,
                             twist_exponent, twist_order)
from opprank.rootdata import ConfigurationError, root_system


def test_rank_one_steinberg_sum_is_empty():
    a1 = root_system("A1")
    for p in (2, 3, 5, 7):
        assert jantzen_sum(a1, (p - 1,), p) == {}


@pytest.mark.parametrize("p", [3, 5, 7])
def test_rank_one_frobenius_weight(p):
    # rad V(p omega) = L((p-2) omega) for rank one, so dim L(p omega) = 2,
    # matching the Steinberg factorization L(p omega) = L(0) x L(omega)^[p]
    a1 = root_system("A1")
    assert jantzen_sum(a1, (p,), p) == {(p - 2,): 1}
    res = resolve_simple(a1, (p,), p)
    assert res.status == "ChainResolved"
    assert res.dim == 2
    assert res.simple_char == {(p,): 1, (p - 2,): -1}


def test_rank_one_restricted_weights_simple():
    a1 = root_system("A1")
    for p in (3, 5, 7):
        for a in range(p):
            res = resolve_simple(a1, (a,), p)
            assert res.status == "Simple"
            assert res.dim == a + 1


def test_jantzen_sum_requires_dominant_and_prime():
    a1 = root_system("A1")
    with pytest.raises(ValueError):
        jantzen_sum(a1, (-1,), 3)
    with pytest.raises(ValueError):
        jantzen_sum(a1, (2,), 4)


def _e6_alt_character(p):
    """The five-term alternating sum for V((p-1)omega_1) on E6."""
    return {
        (p - 7, 0, 0, 0, 0, 3): 1,
        (p - 8, 0, 0, 1, 0, 2): -1,
        (p - 9, 0, 1, 0, 0, 1): 1,
        (p - 10, 1, 0, 0, 1, 0): -1,
        (p - 11, 2, 0, 0, 0, 0): 1,
    }


@pytest.mark.parametrize("p", [11, 13, 17])
def test_e6_jantzen_sum_five_terms(p):
    rs = root_system("E6")
    lam = (p - 1, 0, 0, 0, 0, 0)
    assert jantzen_sum(rs, lam, p) == _e6_alt_character(p)


@pytest.mark.parametrize("p", [11, 13, 17])
def test_e6_intermediate_links(p):
    rs = root_system("E6")
    # bottom module is simple; each intermediate Jantzen sum equals the
    # resolved character of the link below it
    bottom = (p - 11, 2, 0, 0, 0, 0)
    assert jantzen_sum(rs, bottom, p) == {}
    links = [
        (p - 10, 1, 0, 0, 1, 0),
        (p - 9, 0, 1, 0, 0, 1),
        (p - 8, 0, 0, 1, 0, 2),
        (p - 7, 0, 0, 0, 0, 3),
    ]
    assert jantzen_sum(rs, links[0], p) == {bottom: 1}
    for above, below in zip(links[1:], links[:-1]):
        expected = resolve_simple(rs, below, p).simple_char
        assert jantzen_sum(rs, above, p) == expected


@pytest.mark.parametrize("p", [11, 13, 17])
def test_e6_chain_resolution(p):
    rs = root_system("E6")
    res = resolve_simple(rs, (p - 1, 0, 0, 0, 0, 0), p)
    assert res.status == "ChainResolved"
    assert res.chain_depth == 5
    # chain consistency: stored sum of link i = resolved character of link i+1
    for (w, s), (w_next, _) in zip(res.chain, res.chain[1:]):
        sub = resolve_simple(rs, w_next, p)
        assert s == sub.simple_char
    # dimension sanity
    assert 0 < res.dim <= weyl_dim(rs, (p - 1, 0, 0, 0, 0, 0))
    assert res.dim == char_dim(rs, res.simple_char)


STEINBERG_SYSTEMS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4",
                     "C2", "C3", "C4", "D3", "D4", "F4", "G2"]


@pytest.mark.parametrize("name", STEINBERG_SYSTEMS)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_steinberg_weights_resolve_simple(name, p):
    rs = root_system(name)
    lam = tuple(p - 1 for _ in range(rs.rank))
    res = resolve_simple(rs, lam, p)
    assert res.status == "Simple"
    assert res.dim == p ** len(rs.positive_roots)


def test_resolution_dim_bounded_by_weyl_dim():
    for name, lam, p in [("A2", (1, 0), 2), ("A2", (2, 0), 3),
                         ("C2", (1, 0), 2), ("C2", (2, 0), 3),
                         ("A3", (0, 1, 0), 2), ("B2", (2, 0), 3)]:
        rs = root_system(name)
        res = resolve_simple(rs, lam, p)
        assert res.resolved
        assert 0 < res.dim <= weyl_dim(rs, lam)


def test_adjoint_weight_declines_resolution():
    # A3, omega_1 + omega_3 at p = 2: the trivial module shows up with
    # multiplicity 2 in the filtration sum, so it cannot equal any simple
    # character; the resolver must refuse rather than guess
    rs = root_system("A3")
    assert jantzen_sum(rs, (1, 0, 1), 2) == {(0, 0, 0): 2}
    res = resolve_simple(rs, (1, 0, 1), 2)
    assert res.status == "Unresolved"
    assert res.chain[0] == ((1, 0, 1), {(0, 0, 0): 2})


def test_depth_limit_yields_unresolved():
    a1 = root_system("A1")
    res = resolve_simple(a1, (3,), 3, depth_limit=1)
    assert res.status == "Unresolved"
    assert res.dim is None and res.simple_char is None
    assert res.chain[0][0] == (3,)
    with pytest.raises(ValueError):
        resolve_simple(a1, (3,), 3, depth_limit=0)


def test_b2_points_weight_chain_resolves():
    # rad V((p-1)omega_1) is handled by the chain method for the split
    # odd-dimensional quadric at small odd p
    rs = root_system("B2")
    res = resolve_simple(rs, (2, 0), 3)
    assert res.resolved
    assert 0 < res.dim <= weyl_dim(rs, (2, 0))


def test_lambda_opp_extremes():
    rs = root_system("B3")
    assert lambda_opp(rs, (1, 2, 3), 3, 1) == (0, 0, 0)
    assert lambda_opp(rs, (), 3, 2) == (8, 8, 8)


def test_lambda_opp_formula():
    rs = root_system("A2")
    assert lambda_opp(rs, (2,), 3, 1) == (2, 0)
    assert lambda_opp(rs, (2,), 2, 2) == (3, 0)


def test_lambda_opp_twisted_unitary():
    # overlying A3 with the fold 1<->3: cotype {2} (orbit labels) gives
    # (q0-1)(omega_1 + omega_3)
    rs = root_system("A3")
    orbits = ((1, 3), (2,))
    assert twist_order(rs, orbits) == 2
    assert lambda_opp(rs, (2,), 3, 2, orbits) == (2, 0, 2)
    assert lambda_opp(rs, (2,), 3, 4, orbits) == (8, 0, 8)
    assert twist_exponent(rs, 3, 4, orbits) == 2


def test_lambda_opp_twisted_triality():
    rs = root_system("D4")
    orbits = ((2,), (1, 3, 4))
    assert twist_order(rs, orbits) == 3
    # orbits sort to [(1,3,4), (2,)]: label 1 is the fork orbit, 2 the center
    assert lambda_opp(rs, (1,), 2, 3, orbits) == (0, 1, 0, 0)
    assert lambda_opp(rs, (2,), 2, 3, orbits) == (1, 0, 1, 1)


def test_lambda_opp_twist_validation():
    rs = root_system("A3")
    with pytest.raises(ConfigurationError):
        lambda_opp(rs, (1,), 3, 2, ((1, 2), (3,)))  # not an automorphism
    with pytest.raises(ConfigurationError):
        lambda_opp(rs, (1,), 3, 2, ((1, 3),))  # not a partition
    with pytest.raises(ConfigurationError):
        lambda_opp(rs, (1,), 3, 3, ((1, 3), (2,)))  # t not divisible by e
    with pytest.raises(ConfigurationError):
        lambda_opp(rs, (1,), 3, 2, ((1,), (2,), (3,)))  # identity twist


def _brute_force_truncated_count(nvars, p, degree):
    count = 0
    for expo in itertools.product(range(p), repeat=nvars):
        if sum(expo) == degree:
            count += 1
    return count


def test_truncated_poly_dim_examples():
    assert truncated_poly_dim(4, 5, 0) == 1
    # oracle: {x0x1, x0x2, x1x2}
    assert truncated_poly_dim(3, 2, 2) == _brute_force_truncated_count(3, 2, 2) == 3
    assert truncated_poly_dim(3, 3, 4) == _brute_force_truncated_count(3, 3, 4) == 6


@pytest.mark.parametrize("nvars,p", [(2, 3), (3, 2), (3, 3), (4, 2), (2, 5)])
def test_truncated_poly_dim_against_enumeration(nvars, p):
    for degree in range(nvars * (p - 1) + 2):
        assert truncated_poly_dim(nvars, p, degree) == \
            _brute_force_truncated_count(nvars, p, degree)
    # all degrees together exhaust the p^nvars monomials
    total = sum(truncated_poly_dim(nvars, p, d)
                for d in range(nvars * (p - 1) + 1))
    assert total == p ** nvars


def test_steinberg_rank_power():
    assert steinberg_rank_power(3, 2) == 9
    assert steinberg_rank_power(7, 1) == 7
    assert steinberg_rank_power(4, 3) == 64
    with pytest.raises(ValueError):
        steinberg_rank_power(3, 0)
