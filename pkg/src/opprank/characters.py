"""Weyl dimension formula and arithmetic on formal sums of Weyl characters.

A formal character is a dict mapping dominant weights (omega-basis tuples) to
nonzero integer coefficients; the empty dict is the zero character.  All
integers are exact (Python bignums): E6 dimensions at p = 17 overflow any
fixed width long before the final division.
"""

from __future__ import annotations

from .rootdata import (RootSystem, Weight, add_weights, is_dominant, pairing)

FormalCharacter = dict[Weight, int]


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    """dim V(lam) = prod <lam+rho, a_vee> / prod <rho, a_vee> over R+."""
    if len(lam) != rs.rank:
        raise ValueError("weight has wrong rank")
    if not is_dominant(lam):
        raise ValueError(f"weyl_dim requires a dominant weight, got {lam}")
    shifted = add_weights(lam, rs.rho)
    num = 1
    den = 1
    for root in rs.positive_roots:
        num *= pairing(shifted, root)
        den *= pairing(rs.rho, root)
    q, r = divmod(num, den)
    assert r == 0, "Weyl numerator not divisible by denominator"
    return q


def normalize_chi(rs: RootSystem, mu: Weight):
    """Dot-action normalization of chi(mu).

    Returns None when mu + rho lies on a wall (chi(mu) = 0), otherwise
    (sign, lam) with lam dominant and chi(mu) = sign * Ch V(lam).  Reduction
    is the same smallest-negative-index-first descent used for longest words.
    """
    n = rs.rank
    nu = [m + 1 for m in mu]
    sign = 1
    while True:
        i = next((i for i in range(n) if nu[i] < 0), None)
        if i is None:
            break
        c = nu[i]
        for j in range(n):
            nu[j] -= c * rs.cartan[j][i]
        sign = -sign
    if any(x == 0 for x in nu):
        return None
    return sign, tuple(x - 1 for x in nu)


def char_combine(a: FormalCharacter, c: int, b: FormalCharacter) -> FormalCharacter:
    """a + c*b with zero-coefficient pruning."""
    ranks = {len(k) for k in a} | {len(k) for k in b}
    if len(ranks) > 1:
        raise ValueError("cannot combine characters of different root systems")
    out = dict(a)
    for key, coeff in b.items():
        new = out.get(key, 0) + c * coeff
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


def char_add_term(acc: FormalCharacter, key: Weight, coeff: int) -> None:
    """In-place accumulation used while building characters."""
    if coeff == 0:
        return
    new = acc.get(key, 0) + coeff
    if new:
        acc[key] = new
    else:
        del acc[key]


def char_dim(rs: RootSystem, x: FormalCharacter) -> int:
    """Linear extension of weyl_dim; may be negative for general inputs."""
    return sum(coeff * weyl_dim(rs, key) for key, coeff in x.items())


def char_terms_sorted(x: FormalCharacter):
    """Terms in the canonical (lexicographic on coordinates) order."""
    return [(key, x[key]) for key in sorted(x)]


def char_to_json(x: FormalCharacter):
    return [{"weight": list(key), "coeff": coeff}
            for key, coeff in char_terms_sorted(x)]
