"""Jantzen-sum evaluation and chain resolution of simple-module dimensions.

The sum for a Weyl module V(lam) in characteristic p is the formal character

    - sum_{a > 0} sum_{0 < m*p < <lam+rho, a_vee>} v_p(m*p) chi(lam - m*p*a)

with each chi normalized through the dot action.  When the sum is zero the
Weyl module is simple.  When it is nonzero the resolver tries the chain
method: if the sum has a unique dominance-maximal key mu and equals the
(recursively resolved) character of the simple module with highest weight mu,
then Ch L(lam) = chi(lam) - sum.  Anything else is reported Unresolved, which
is a first-class outcome, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .characters import (FormalCharacter, char_add_term, char_combine,
                         char_dim, char_to_json, normalize_chi, weyl_dim)
from .rootdata import (ConfigurationError, RootSystem, Weight, add_weights,
                       is_dominant, pairing, root_in_weight_basis)
from .weylgroup import normalize_typeset

DEFAULT_DEPTH_LIMIT = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def jantzen_sum(rs: RootSystem, lam: Weight, p: int) -> FormalCharacter:
    """The Jantzen sum of V(lam) at the prime p, as a formal character."""
    if not is_dominant(lam):
        raise ValueError(f"jantzen_sum requires a dominant weight, got {lam}")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    shifted = add_weights(lam, rs.rho)
    acc: FormalCharacter = {}
    for root in rs.positive_roots:
        bound = pairing(shifted, root)
        alpha_w = root_in_weight_basis(rs, root)
        mp = p
        while mp < bound:
            v = _vp(mp, p)
            mu = tuple(a - mp * b for a, b in zip(lam, alpha_w))
            res = normalize_chi(rs, mu)
            if res is not None:
                sign, key = res
                char_add_term(acc, key, -v * sign)
            mp += p
    return acc


def _dominates(rs: RootSystem, a: Weight, b: Weight) -> bool:
    """a >= b: a - b is a non-negative integer combination of simple roots."""
    diff = tuple(x - y for x, y in zip(a, b))
    coords = rs.weight_in_root_basis(diff)
    return all(c.denominator == 1 and c >= 0 for c in coords)


def _maximal_keys(rs: RootSystem, char: FormalCharacter) -> list[Weight]:
    keys = list(char)
    return [k for k in keys
            if not any(o != k and _dominates(rs, o, k) for o in keys)]


@dataclass(frozen=True)
class Resolution:
    """Outcome of resolving Ch L(lam) by the chain method."""
    status: str  # "Simple" | "ChainResolved" | "Unresolved"
    simple_char: Optional[FormalCharacter]
    chain: tuple[tuple[Weight, FormalCharacter], ...]
    dim: Optional[int]

    @property
    def resolved(self) -> bool:
        return self.status != "Unresolved"

    @property
    def chain_depth(self) -> int:
        return max(len(self.chain) - 1, 0)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "chain_depth": self.chain_depth,
            "chain": [{"weight": list(w), "jantzen_sum": char_to_json(s)}
                      for w, s in self.chain],
            "dim": str(self.dim) if self.dim is not None else None,
        }


_resolve_cache: dict[tuple, Resolution] = {}


def resolve_simple(rs: RootSystem, lam: Weight, p: int,
                   depth_limit: int = DEFAULT_DEPTH_LIMIT) -> Resolution:
    """Resolve Ch L(lam) and its dimension at the prime p by the chain method."""
    if depth_limit < 1:
        raise ValueError("depth_limit must be >= 1")
    key = (rs.spec, lam, p)
    hit = _resolve_cache.get(key)
    if hit is not None and len(hit.chain) <= depth_limit:
        return hit

    summed = jantzen_sum(rs, lam, p)
    if not summed:
        out = Resolution("Simple", {lam: 1}, ((lam, {}),), weyl_dim(rs, lam))
        _resolve_cache[key] = out
        return out

    def unresolved(tail=()):
        return Resolution("Unresolved", None, ((lam, summed),) + tuple(tail), None)

    if depth_limit == 1:
        return unresolved()
    maxima = _maximal_keys(rs, summed)
    if len(maxima) != 1:
        return unresolved()
    sub = resolve_simple(rs, maxima[0], p, depth_limit - 1)
    if not sub.resolved or sub.simple_char != summed:
        return unresolved(sub.chain)

    simple_char = char_combine({lam: 1}, -1, summed)
    out = Resolution("ChainResolved", simple_char,
                     ((lam, summed),) + sub.chain,
                     char_dim(rs, simple_char))
    _resolve_cache[key] = out
    return out


def _validate_orbits(rs: RootSystem, orbits) -> list[tuple[int, ...]]:
    rank = rs.rank
    parts = [tuple(sorted(set(int(i) for i in orbit))) for orbit in orbits]
    flat = [i for part in parts for i in part]
    if sorted(flat) != list(range(1, rank + 1)) or any(not part for part in parts):
        raise ConfigurationError(
            f"twist orbits {orbits} are not a partition of 1..{rank}")
    if not _diagram_automorphism_exists(rs, parts):
        raise ConfigurationError(
            f"twist orbits {orbits} are not the orbits of a diagram automorphism")
    return sorted(parts)


def _diagram_automorphism_exists(rs: RootSystem, parts) -> bool:
    """Is there a Cartan-matrix automorphism whose orbits are exactly `parts`?"""
    import itertools
    n = rs.rank
    choices = []
    for part in parts:
        cycles = []
        rest = part[1:]
        for perm in itertools.permutations(rest):
            order = (part[0],) + perm
            cycles.append({order[i]: order[(i + 1) % len(order)]
                           for i in range(len(order))})
        choices.append(cycles)
    for combo in itertools.product(*choices):
        sigma = {}
        for cyc in combo:
            sigma.update(cyc)
        if all(rs.cartan[sigma[i + 1] - 1][sigma[j + 1] - 1] == rs.cartan[i][j]
               for i in range(n) for j in range(n)):
            return True
    return False


def lambda_opp(rs: RootSystem, cotype, p: int, t: int,
               twist_orbits=None) -> Weight:
    """Highest weight whose simple module dimension is the oppositeness p-rank.

    Untwisted: coordinate i is q-1 = p^t - 1 off the cotype, 0 on it.
    Twisted (orbit data on the overlying diagram): cotype indices label
    orbits; coordinates are q0-1 off the union of the selected orbits, where
    q = q0^e and e is the automorphism order.
    """
    if not is_prime(p):
        raise ConfigurationError(f"p = {p} is not prime")
    if t < 1:
        raise ConfigurationError("t must be >= 1")
    if twist_orbits is None:
        cotype = normalize_typeset(rs.rank, cotype)
        q = p ** t
        return tuple(0 if i + 1 in cotype else q - 1 for i in range(rs.rank))

    parts = _validate_orbits(rs, twist_orbits)
    e = math.lcm(*(len(part) for part in parts))
    if e < 2:
        raise ConfigurationError("twist orbits describe the identity automorphism")
    if t % e != 0:
        raise ConfigurationError(
            f"q = p^{t} is not a power of q0^{e} (t must be divisible by {e})")
    cotype = normalize_typeset(len(parts), cotype)
    q0 = p ** (t // e)
    starred = set()
    for j in cotype:
        starred.update(parts[j - 1])
    return tuple(0 if i + 1 in starred else q0 - 1 for i in range(rs.rank))


def twist_order(rs: RootSystem, twist_orbits) -> int:
    """Order of the diagram automorphism described by an orbit partition."""
    parts = _validate_orbits(rs, twist_orbits)
    e = math.lcm(*(len(part) for part in parts))
    if e < 2:
        raise ConfigurationError("twist orbits describe the identity automorphism")
    return e


def twist_exponent(rs: RootSystem, p: int, t: int, twist_orbits=None) -> int:
    """Number of Frobenius-twist factors in the Steinberg factorization."""
    if twist_orbits is None:
        return t
    e = twist_order(rs, twist_orbits)
    if t % e != 0:
        raise ConfigurationError(f"t must be divisible by {e}")
    return t // e


def truncated_poly_dim(nvars: int, p: int, degree: int) -> int:
    """Monomials of given total degree in nvars variables, exponents <= p-1."""
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if degree < 0:
        raise ValueError("degree must be >= 0")

    def binom(n, k):
        return math.comb(n, k) if 0 <= k <= n else 0

    total = 0
    for j in range(nvars + 1):
        rem = degree - j * p
        if rem < 0:
            break
        total += (-1) ** j * binom(nvars, j) * binom(rem + nvars - 1, nvars - 1)
    return total


def steinberg_rank_power(rank_at_p: int, t: int) -> int:
    """rank over F_q = (rank over F_p)^t for q = p^t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return rank_at_p ** t
