"""Seeded random generators for property checks.

Rationals have numerators in [-bound, bound] and denominators in
[1, max_den].  Levi elements are words of bounded length in the
one-parameter generators and the central labels.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .adelic import INF, AdeleCharacter
from .group import GroupElement, LeviElement, LeviSystem, central_element, one_param
from .ratlinalg import Subspace

PLACES = (INF, 2, 3, 5)


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_vector(rng: random.Random, dim: int, bound: int = 5, max_den: int = 4,
                  sparsity: float = 0.0) -> tuple[Fraction, ...]:
    return tuple(Fraction(0) if rng.random() < sparsity else random_rational(rng, bound, max_den)
                 for _ in range(dim))


def random_in_subspace(rng: random.Random, s: Subspace, bound: int = 5, max_den: int = 4) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * s.ambient_dim
    for b in s.vectors():
        c = random_rational(rng, bound, max_den)
        out = [x + c * y for x, y in zip(out, b)]
    return tuple(out)


def random_lambda(rng: random.Random, dim: int, places=PLACES, max_den: int = 20,
                  bound: int = 20) -> AdeleCharacter:
    """Random places from ``places``; each coordinate is zero with probability 1/2."""
    chosen = [v for v in places if rng.random() < 0.5] or [rng.choice(places)]
    comps = {v: random_vector(rng, dim, bound, max_den, sparsity=0.5) for v in chosen}
    return AdeleCharacter.from_components(dim, comps)


def random_levi(rng: random.Random, system: LeviSystem, max_len: int = 3,
                max_den: int = 3) -> LeviElement:
    out = system.levi_identity()
    n_gens = len(system.one_param_gens)
    others = [lbl for lbl in system.central_labels if lbl != system.identity_label]
    for _ in range(rng.randint(0, max_len)):
        if others and (n_gens == 0 or rng.random() < 0.25):
            out = out * central_element(system, rng.choice(others))
        elif n_gens:
            out = out * one_param(system, rng.randrange(n_gens), random_rational(rng, 3, max_den))
    return out


def random_element(rng: random.Random, system: LeviSystem, max_len: int = 3) -> GroupElement:
    """Mixes generic elements with ones whose Levi part is central or trivial,
    so that characters supported on small subgroups are exercised."""
    r = rng.random()
    if r < 0.35:
        levi = random_levi(rng, system, max_len)
    elif r < 0.6 and len(system.central_labels) > 1:
        levi = central_element(system, rng.choice(system.central_labels))
    else:
        levi = system.levi_identity()
    sparsity = rng.choice((0.0, 0.5, 0.8))
    return system.element(levi, random_vector(rng, system.dim, 4, 3, sparsity))


def random_elements(rng: random.Random, system: LeviSystem, n: int) -> list[GroupElement]:
    return [random_element(rng, system) for _ in range(n)]
