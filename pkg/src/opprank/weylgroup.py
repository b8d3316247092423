"""Weyl group elements as reduced words acting on weights.

Words are sequences of simple-reflection indices (1-based).  The fixed
application convention: apply_word([l1, ..., ln], lam) evaluates
s_{l1}(s_{l2}(... s_{ln}(lam))), i.e. the last letter acts first, so
concatenation of letter lists is composition in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .rootdata import RootSystem, Weight

TypeSet = tuple[int, ...]


def normalize_typeset(rank: int, indices) -> TypeSet:
    """Sorted duplicate-free subset of {1..rank}."""
    out = tuple(sorted(set(int(i) for i in indices)))
    for i in out:
        if not (1 <= i <= rank):
            raise ValueError(f"type index {i} out of range 1..{rank}")
    return out


def complement(rank: int, subset: TypeSet) -> TypeSet:
    return tuple(i for i in range(1, rank + 1) if i not in subset)


@dataclass(frozen=True)
class WeylWord:
    letters: tuple[int, ...]
    reduced: bool = field(default=False, compare=False)

    def __len__(self) -> int:
        return len(self.letters)


def reflect_simple(rs: RootSystem, i: int, lam: Weight) -> Weight:
    """s_i(lam) = lam - <lam, alpha_i_vee> alpha_i, in the omega basis."""
    if not (1 <= i <= rs.rank):
        raise ValueError(f"reflection index {i} out of range 1..{rs.rank}")
    c = lam[i - 1]
    if c == 0:
        return lam
    col = rs.simple_root_in_weight_basis(i)
    return tuple(x - c * y for x, y in zip(lam, col))


def apply_word(rs: RootSystem, w: WeylWord, lam: Weight) -> Weight:
    for letter in reversed(w.letters):
        lam = reflect_simple(rs, letter, lam)
    return lam


def _reflect_root_coords(rs: RootSystem, i: int, coords):
    """s_i acting on simple-root coordinates."""
    c = sum(rs.cartan[i - 1][j] * coords[j] for j in range(rs.rank))
    out = list(coords)
    out[i - 1] -= c
    return tuple(out)


def apply_word_to_root(rs: RootSystem, w: WeylWord, coords):
    for letter in reversed(w.letters):
        coords = _reflect_root_coords(rs, letter, coords)
    return coords


def inversion_count(rs: RootSystem, w: WeylWord) -> int:
    """Number of positive roots the element sends to negatives (= its length)."""
    n = 0
    for root in rs.positive_roots:
        image = apply_word_to_root(rs, w, root.simple_coords)
        if any(x < 0 for x in image):
            n += 1
    return n


def _descent_letters(rs: RootSystem, start: Weight, allowed) -> list[int]:
    """Greedy descent to the (allowed-)dominant chamber, smallest index first.

    Returns the reflection indices in order of application; the composite of
    the recorded reflections, taken as a letters list in recorded order, is the
    canonical reduced word of the group element inverse-transporting `start`.
    """
    w = list(start)
    rec = []
    while True:
        i = next((i for i in allowed if w[i - 1] < 0), None)
        if i is None:
            return rec
        c = w[i - 1]
        col = rs.simple_root_in_weight_basis(i)
        for j in range(rs.rank):
            w[j] -= c * col[j]
        rec.append(i)


def canonical_reduced(rs: RootSystem, letters) -> WeylWord:
    """Canonical reduced word of the element spelled by an arbitrary word."""
    mu = apply_word(rs, WeylWord(tuple(letters)), rs.rho)
    rec = _descent_letters(rs, mu, range(1, rs.rank + 1))
    return WeylWord(tuple(rec), reduced=True)


@lru_cache(maxsize=None)
def _longest_word_cached(rs: RootSystem, subset: TypeSet) -> WeylWord:
    start = tuple(-1 if i + 1 in subset else 0 for i in range(rs.rank))
    rec = _descent_letters(rs, start, subset)
    # recorded order spells the inverse; w_J is an involution, so reversing
    # just fixes a deterministic representative
    return WeylWord(tuple(reversed(rec)), reduced=True)


def longest_word(rs: RootSystem, subset) -> WeylWord:
    """Longest element w_J of the parabolic W_J (J = I gives w0, J = {} id)."""
    return _longest_word_cached(rs, normalize_typeset(rs.rank, subset))


def w_star(rs: RootSystem, subset) -> WeylWord:
    """Reduced word for w0 * w_J, of length |R+| - |R_J+|."""
    subset = normalize_typeset(rs.rank, subset)
    w0 = longest_word(rs, range(1, rs.rank + 1))
    wj = longest_word(rs, subset)
    word = canonical_reduced(rs, w0.letters + wj.letters)
    expected = len(w0) - len(wj)
    assert len(word) == expected, (subset, len(word), expected)
    return word


@lru_cache(maxsize=None)
def _opposition_permutation(rs: RootSystem) -> tuple[int, ...]:
    """sigma with -w0(alpha_i) = alpha_sigma(i), as a tuple indexed from 0."""
    w0 = longest_word(rs, range(1, rs.rank + 1))
    sigma = []
    for i in range(rs.rank):
        e_i = tuple(1 if j == i else 0 for j in range(rs.rank))
        image = tuple(-x for x in apply_word_to_root(rs, w0, e_i))
        assert sum(image) == 1 and all(x in (0, 1) for x in image)
        sigma.append(image.index(1) + 1)
    return tuple(sigma)


def opposite_type(rs: RootSystem, subset) -> TypeSet:
    """The type paired with `subset` by the diagram symmetry induced by -w0."""
    subset = normalize_typeset(rs.rank, subset)
    sigma = _opposition_permutation(rs)
    return tuple(sorted(sigma[i - 1] for i in subset))


def longest_element_length(rs: RootSystem, subset) -> int:
    return len(longest_word(rs, subset))


def words_equal(rs: RootSystem, a: WeylWord, b: WeylWord) -> bool:
    """Element equality, tested by the action on rho and all omega_i."""
    if apply_word(rs, a, rs.rho) != apply_word(rs, b, rs.rho):
        return False
    return all(
        apply_word(rs, a, rs.fundamental_weight(i))
        == apply_word(rs, b, rs.fundamental_weight(i))
        for i in range(1, rs.rank + 1))
