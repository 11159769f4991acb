"""Classification of the characters of G = L ⋉ U attached to a character λ of u.

For λ the engine computes

* k_λ, the largest G-invariant subspace on whose lines λ is trivial,
* p_λ, the X with Ad(g)X - X in k_λ for all g (the preimage of the
  G-fixed center of u/k_λ),
* L_λ membership, χ_λ = λ on p_λ, and the character Φ_(λ,φ),
* the orbit direction V, whose annihilator is p_λ, and the quasi-orbit key.

Invariance under G is decided on infinitesimal generators: the Levi
derivations N_i, ad X_j for a basis of u, and α_c - I for central labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .adelic import (
    AdeleCharacter,
    coadjoint,
    eval_character,
    line_trivial_locus,
    trivial_on_subspace,
)
from .group import GroupElement, LeviElement, LeviSystem, adjoint_action
from .nilpotent import LieAlgebra, LieVector
from .qmod1 import ONE, ZERO, CharValue, Phase
from .ratlinalg import (
    DimensionError,
    RatMatrix,
    Subspace,
    annihilator,
    intersect,
    kernel,
    largest_invariant_in,
    preimage,
    smallest_invariant_containing,
)
from .traces import TildeCentralCharacter, TraceFunction


class NotInSubspace(ValueError):
    pass


class SupportError(ValueError):
    """A φ support element lies outside L_λ."""


def _check_dim(lam: AdeleCharacter, system: LeviSystem) -> None:
    if lam.dim != system.dim:
        raise DimensionError(f"character of Q^{lam.dim} on an algebra of dimension {system.dim}")


def full_operator_set(system: LeviSystem) -> list[RatMatrix]:
    """N_i, ad X_j, and the central actions together with their inverses."""
    ops = list(system.one_param_gens) + list(system.algebra.basis_ad)
    ident = RatMatrix.identity(system.dim)
    for m in system.central_actions:
        if m != ident:
            ops.append(m)
            ops.append(m.inverse())
    return ops


def infinitesimal_operators(system: LeviSystem) -> list[RatMatrix]:
    """N_i, ad X_j and α_c - I; a subspace is G-invariant iff each maps it into itself."""
    ident = RatMatrix.identity(system.dim)
    ops = [n for n in system.one_param_gens if not n.is_zero()]
    ops += [a for a in system.algebra.basis_ad if not a.is_zero()]
    ops += [m - ident for m in system.central_actions if m != ident]
    return ops


@lru_cache(maxsize=4096)
def _k(lam: AdeleCharacter, system: LeviSystem) -> Subspace:
    return largest_invariant_in(line_trivial_locus(lam), full_operator_set(system))


@lru_cache(maxsize=4096)
def _p(lam: AdeleCharacter, system: LeviSystem) -> Subspace:
    k = _k(lam, system)
    p = Subspace.full(system.dim)
    for op in infinitesimal_operators(system):
        p = intersect(p, preimage(op, k))
    return p


def compute_k(lam: AdeleCharacter, system: LeviSystem) -> Subspace:
    _check_dim(lam, system)
    return _k(lam, system)


def compute_p(lam: AdeleCharacter, system: LeviSystem) -> Subspace:
    _check_dim(lam, system)
    return _p(lam, system)


def fixed_center_of_quotient(lam: AdeleCharacter, system: LeviSystem) -> Subspace:
    """Preimage of the G-fixed central vectors of u/k_λ, computed in the quotient algebra."""
    _check_dim(lam, system)
    d = system.dim
    k = compute_k(lam, system)
    pivots = set(k.pivots())
    free = [j for j in range(d) if j not in pivots]
    q = len(free)
    if q == 0:
        return Subspace.full(d)

    def project(v) -> list[Fraction]:
        r = k.reduce(v)
        return [r[j] for j in free]

    def lift(y) -> list[Fraction]:
        v = [Fraction(0)] * d
        for j, c in zip(free, y):
            v[j] = c
        return v

    proj = RatMatrix.from_rows([project(RatMatrix.identity(d).column(j)) for j in range(d)], q).transpose()
    alg = system.algebra
    lifted = [lift(RatMatrix.identity(q).row(i)) for i in range(q)]
    # structure constants of u/k in the basis given by the free coordinates
    triples = []
    for a in range(q):
        for b in range(a + 1, q):
            for c, val in enumerate(project(alg.bracket_coords(lifted[a], lifted[b]))):
                if val:
                    triples.append((a, b, c, val))
    quotient = LieAlgebra.from_triples(q, triples)

    def induced(m: RatMatrix) -> RatMatrix:
        cols = [project(m.apply(lifted[a])) for a in range(q)]
        return RatMatrix.from_rows([[cols[a][i] for a in range(q)] for i in range(q)], q)

    ident = RatMatrix.identity(q)
    conditions = []
    for a in range(q):
        # y is central in u/k iff ad(ē_a) y = 0 for every a
        conditions.extend(quotient.basis_ad[a].to_rows())
    for n in system.one_param_gens:
        conditions.extend(induced(n).to_rows())
    for m in system.central_actions:
        conditions.extend((induced(m) - ident).to_rows())
    fixed_center = kernel(RatMatrix.from_rows(conditions, q)) if conditions else Subspace.full(q)
    return preimage(proj, fixed_center)


def in_L_lambda(l: LeviElement, k: Subspace) -> bool:
    """Whether Ad(l) X ∈ X + k for every X."""
    d = l.action.rows
    if k.ambient_dim != d:
        raise DimensionError("subspace and action dimensions differ")
    diff = l.action - RatMatrix.identity(d)
    return all(diff.column(j) in k for j in range(d))


def chi_lambda(lam: AdeleCharacter, x: LieVector | Sequence, p: Subspace) -> Phase:
    coords = x.coords if isinstance(x, LieVector) else tuple(Fraction(c) for c in x)
    if coords not in p:
        raise NotInSubspace("element is not in p_λ")
    return eval_character(lam, coords)


Phi = Callable[[LeviElement], CharValue]


def make_character(lam: AdeleCharacter, system: LeviSystem,
                   phi: TildeCentralCharacter | Phi | None = None,
                   support_checks: Sequence[LeviElement] = ()) -> TraceFunction:
    """Φ_(λ,φ)(l exp x) = φ(l) χ_λ(x) when l ∈ L_λ and x ∈ p_λ, else 0.

    ``phi=None`` is the constant one on L_λ.  Support elements of a
    :class:`TildeCentralCharacter` (and any ``support_checks`` given for a
    plug-in φ) must lie in L_λ.
    """
    _check_dim(lam, system)
    k = compute_k(lam, system)
    p = compute_p(lam, system)
    if isinstance(phi, TildeCentralCharacter):
        problems = phi.check(system)
        if problems:
            raise SupportError("; ".join(problems))
        for lbl, m, _ in phi.support:
            if not in_L_lambda(system.central(lbl), k):
                raise SupportError(f"support element {lbl!r} is not in L_λ")
    for l in support_checks:
        if not in_L_lambda(l, k):
            raise SupportError(f"support element {l.describe()} is not in L_λ")
    levi_value: Phi = (lambda l: ONE) if phi is None else phi

    def value(g: GroupElement) -> CharValue:
        if g.uni.coords not in p or not in_L_lambda(g.levi, k):
            return ZERO
        return levi_value(g.levi) * CharValue(eval_character(lam, g.uni.coords))

    name = "Phi" if phi is None else f"Phi[{getattr(phi, 'name', 'phi')}]"
    return TraceFunction(system, value, name)


def orbit_direction_V(lam: AdeleCharacter, system: LeviSystem) -> Subspace:
    """Smallest invariant subspace, under the transposed operators, containing M^T a_v."""
    _check_dim(lam, system)
    ops = infinitesimal_operators(system)
    seeds = [m.transpose().apply(a) for m in ops for a in lam.vectors()]
    return smallest_invariant_containing(seeds, [m.transpose() for m in ops], system.dim)


def duality_check(lam: AdeleCharacter, system: LeviSystem) -> bool:
    return compute_p(lam, system) == annihilator(orbit_direction_V(lam, system))


@dataclass(frozen=True)
class QuasiOrbitKey:
    """p_λ together with λ restricted to p_λ.

    The restriction is stored as a character of Q^{dim p} in the canonical
    basis of p_λ; ``chi_values`` are the phases on that basis (informative,
    not part of equality since basis values alone do not determine a
    character of Q^m).
    """

    p: Subspace
    restriction: AdeleCharacter
    chi_values: tuple[Phase, ...] = field(compare=False)


def quasi_orbit_key(lam: AdeleCharacter, system: LeviSystem) -> QuasiOrbitKey:
    p = compute_p(lam, system)
    return QuasiOrbitKey(p, lam.restrict(p),
                         tuple(eval_character(lam, b) for b in p.vectors()))


def same_quasi_orbit(lam1: AdeleCharacter, lam2: AdeleCharacter, system: LeviSystem) -> bool:
    _check_dim(lam1, system)
    _check_dim(lam2, system)
    p1, p2 = compute_p(lam1, system), compute_p(lam2, system)
    return p1 == p2 and trivial_on_subspace(lam1 - lam2, p1)


@dataclass(frozen=True)
class ClassificationReport:
    lam: AdeleCharacter
    k: Subspace
    p: Subspace
    chi_on_p_basis: tuple[Phase, ...]
    orbit_V: Subspace
    duality_ok: bool
    l_lambda_samples: tuple[tuple[str, bool], ...]


def classify(lam: AdeleCharacter, system: LeviSystem,
             sample_levi_elements: Sequence[LeviElement] = ()) -> ClassificationReport:
    _check_dim(lam, system)
    k = compute_k(lam, system)
    p = compute_p(lam, system)
    v = orbit_direction_V(lam, system)
    return ClassificationReport(
        lam=lam,
        k=k,
        p=p,
        chi_on_p_basis=tuple(eval_character(lam, b) for b in p.vectors()),
        orbit_V=v,
        duality_ok=p == annihilator(v),
        l_lambda_samples=tuple((l.describe(), in_L_lambda(l, k)) for l in sample_levi_elements),
    )


def coadjoint_by(lam: AdeleCharacter, g: GroupElement) -> AdeleCharacter:
    """Ad*(g) λ = λ ∘ Ad(g)^{-1}."""
    return coadjoint(lam, adjoint_action(g))
