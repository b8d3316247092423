"""Weyl words: reflections, longest elements, w*, opposition."""

import itertools

import pytest

from opprank.rootdata import root_system
from opprank.weylgroup import (WeylWord, apply_word, canonical_reduced,
                               complement, inversion_count, longest_word,
                               normalize_typeset, opposite_type,
                               reflect_simple, w_star, words_equal)


def test_reflect_fixes_other_fundamental_weights():
    rs = root_system("B3")
    for i in range(1, 4):
        for j in range(1, 4):
            w = rs.fundamental_weight(j)
            if i != j:
                assert reflect_simple(rs, i, w) == w


def test_reflect_involutive():
    rs = root_system("F4")
    for i in range(1, 5):
        for lam in [(1, 2, 0, 3), (-1, 0, 4, 2), rs.rho]:
            assert reflect_simple(rs, i, reflect_simple(rs, i, lam)) == lam


def test_reflect_examples():
    a1 = root_system("A1")
    assert reflect_simple(a1, 1, a1.rho) == (-1,)
    a2 = root_system("A2")
    # subtract the Cartan column (2, -1) from omega_1
    assert reflect_simple(a2, 1, (1, 0)) == (-1, 1)


def test_reflect_index_range():
    rs = root_system("A2")
    with pytest.raises(ValueError):
        reflect_simple(rs, 0, (0, 0))
    with pytest.raises(ValueError):
        reflect_simple(rs, 3, (0, 0))


@pytest.mark.parametrize("name,length", [("A2", 3), ("E6", 36), ("B4", 16)])
def test_longest_word_full_length(name, length):
    rs = root_system(name)
    w0 = longest_word(rs, range(1, rs.rank + 1))
    assert len(w0) == length
    assert inversion_count(rs, w0) == length  # reduced
    assert apply_word(rs, w0, rs.rho) == tuple(-1 for _ in range(rs.rank))


def test_longest_word_empty_set_is_identity():
    rs = root_system("C3")
    assert longest_word(rs, ()).letters == ()


def test_longest_word_is_involution():
    for name in ("A3", "B3", "D4"):
        rs = root_system(name)
        for r in range(rs.rank + 1):
            for subset in itertools.combinations(range(1, rs.rank + 1), r):
                wj = longest_word(rs, subset)
                twice = WeylWord(wj.letters + wj.letters)
                for i in range(1, rs.rank + 1):
                    w = rs.fundamental_weight(i)
                    assert apply_word(rs, twice, w) == w


def test_longest_word_parabolic_length_is_subsystem_count():
    # |R_J+| by brute force: positive roots supported on J
    for name in ("A4", "B3", "F4", "D4"):
        rs = root_system(name)
        for r in range(rs.rank + 1):
            for subset in itertools.combinations(range(1, rs.rank + 1), r):
                sup = sum(1 for root in rs.positive_roots
                          if all(root.simple_coords[i - 1] == 0
                                 for i in range(1, rs.rank + 1)
                                 if i not in subset))
                assert len(longest_word(rs, subset)) == sup


def test_wstar_length_complementary():
    for name in ("A3", "B3", "C2", "D4", "G2"):
        rs = root_system(name)
        full = len(longest_word(rs, range(1, rs.rank + 1)))
        for r in range(rs.rank + 1):
            for subset in itertools.combinations(range(1, rs.rank + 1), r):
                ws = w_star(rs, subset)
                assert len(ws) + len(longest_word(rs, subset)) == full
                assert inversion_count(rs, ws) == len(ws)


def test_wstar_examples():
    a2 = root_system("A2")
    assert len(w_star(a2, (2,))) == 2
    assert w_star(a2, (1, 2)).letters == ()
    ws = w_star(a2, ())
    w0 = longest_word(a2, (1, 2))
    assert words_equal(a2, ws, w0)


def test_wstar_times_wj_is_w0():
    for name in ("A3", "B3", "E6"):
        rs = root_system(name)
        w0 = longest_word(rs, range(1, rs.rank + 1))
        for subset in [(1,), (2,), (1, 2), ()]:
            ws = w_star(rs, subset)
            wj = longest_word(rs, subset)
            combined = WeylWord(ws.letters + wj.letters)
            assert words_equal(rs, combined, w0)


def test_apply_word_conventions():
    rs = root_system("A2")
    assert apply_word(rs, WeylWord(()), (3, -2)) == (3, -2)
    w0 = longest_word(rs, (1, 2))
    assert apply_word(rs, w0, rs.rho) == (-1, -1)
    # w0(omega1) = -omega2: apply s1 s2 s1 step by step
    assert apply_word(rs, w0, (1, 0)) == (0, -1)


def test_apply_word_is_composition():
    # letters concatenate like group elements: last letter acts first
    rs = root_system("B2")
    w = WeylWord((1, 2))
    lam = (1, 1)
    assert apply_word(rs, w, lam) == reflect_simple(
        rs, 1, reflect_simple(rs, 2, lam))


def test_w0_negates_fundamental_weights_up_to_opposition():
    for name in ("A4", "D5", "E6", "B3", "F4"):
        rs = root_system(name)
        w0 = longest_word(rs, range(1, rs.rank + 1))
        sigma = {i: opposite_type(rs, (i,))[0] for i in range(1, rs.rank + 1)}
        for i in range(1, rs.rank + 1):
            expected = tuple(-1 if j == sigma[i] - 1 else 0
                             for j in range(rs.rank))
            assert apply_word(rs, w0, rs.fundamental_weight(i)) == expected


def test_opposite_type_involution():
    for name in ("A5", "D5", "E6", "D4"):
        rs = root_system(name)
        for r in range(rs.rank + 1):
            for subset in itertools.combinations(range(1, rs.rank + 1), r):
                sub = normalize_typeset(rs.rank, subset)
                assert opposite_type(rs, opposite_type(rs, sub)) == sub


@pytest.mark.parametrize("ell", range(1, 9))
def test_opposite_type_a_family_formula(ell):
    rs = root_system(f"A{ell}")
    for i in range(1, ell + 1):
        assert opposite_type(rs, (i,)) == (ell + 1 - i,)


def test_opposite_type_identity_families():
    # w0 = -1 for B, C, D even, E7, E8, F4, G2
    for name in ("B3", "C4", "D4", "D6", "E7", "E8", "F4", "G2"):
        rs = root_system(name)
        for i in range(1, rs.rank + 1):
            assert opposite_type(rs, (i,)) == (i,)


def test_opposite_type_d_odd_swaps_fork():
    for ell in (3, 5, 7):
        rs = root_system(f"D{ell}")
        assert opposite_type(rs, (ell - 1,)) == (ell,)
        assert opposite_type(rs, (ell,)) == (ell - 1,)
        for i in range(1, ell - 1):
            assert opposite_type(rs, (i,)) == (i,)


def test_opposite_type_e6():
    rs = root_system("E6")
    assert opposite_type(rs, (1,)) == (6,)
    assert opposite_type(rs, (2,)) == (5,)
    assert opposite_type(rs, (3,)) == (3,)
    assert opposite_type(rs, (4,)) == (4,)


def test_b2_points_cotype_self_opposite():
    rs = root_system("B2")
    assert opposite_type(rs, (2,)) == (2,)


def test_canonical_reduced_of_unreduced_word():
    rs = root_system("A2")
    noisy = WeylWord((1, 1, 2, 2, 1))  # collapses to s1
    red = canonical_reduced(rs, noisy.letters)
    assert red.letters == (1,)
    assert words_equal(rs, red, WeylWord((1,)))


def test_normalize_typeset_and_complement():
    assert normalize_typeset(4, [3, 1, 3]) == (1, 3)
    assert complement(4, (1, 3)) == (2, 4)
    with pytest.raises(ValueError):
        normalize_typeset(3, [0])
    with pytest.raises(ValueError):
        normalize_typeset(3, [4])
