"""Characters of Q^d given by rational-supported adele vectors.

An :class:`AdeleCharacter` stores one rational vector per place (the real
place ``INF`` or a prime) and is zero at every other place.  Its value at
q in Q^d is ``e(<a, q>)`` for the standard character e of the adeles,
``e = e_inf * prod_p e_p`` with ``e_inf(x) = exp(2 pi i x)`` and
``e_p(x) = exp(-2 pi i frac_p(x))``, which is trivial on Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .qmod1 import NotPrime, Phase, frac_p, is_prime
from .ratlinalg import DimensionError, RatMatrix, Subspace, kernel

INF = "inf"
Place = Union[str, int]


def _place_key(v: Place) -> tuple[int, int]:
    return (0, 0) if v == INF else (1, v)


def check_place(v) -> Place:
    if v == INF:
        return INF
    if isinstance(v, bool) or not isinstance(v, int):
        raise NotPrime(f"unknown place {v!r}")
    if not is_prime(v):
        raise NotPrime(f"{v} is not prime")
    return v


def _dot(a: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, q) if x and y), Fraction(0))


@dataclass(frozen=True)
class AdeleCharacter:
    """Canonical form: no zero component, places sorted with INF first."""

    dim: int
    comps: tuple[tuple[Place, tuple[Fraction, ...]], ...]

    def __post_init__(self):
        for v, vec in self.comps:
            check_place(v)
            if len(vec) != self.dim:
                raise DimensionError(f"component at {v} has length {len(vec)}, expected {self.dim}")

    @classmethod
    def from_components(cls, dim: int, comps: Mapping[Place, Sequence] | Sequence) -> "AdeleCharacter":
        items = comps.items() if isinstance(comps, Mapping) else comps
        acc: dict[Place, list[Fraction]] = {}
        for v, vec in items:
            v = check_place(v)
            vec = [Fraction(x) for x in vec]
            if len(vec) != dim:
                raise DimensionError(f"component at {v} has length {len(vec)}, expected {dim}")
            cur = acc.setdefault(v, [Fraction(0)] * dim)
            acc[v] = [a + b for a, b in zip(cur, vec)]
        canon = tuple((v, tuple(acc[v])) for v in sorted(acc, key=_place_key) if any(acc[v]))
        return cls(dim, canon)

    @classmethod
    def zero(cls, dim: int) -> "AdeleCharacter":
        return cls(dim, ())

    @classmethod
    def archimedean(cls, vec: Sequence) -> "AdeleCharacter":
        return cls.from_components(len(vec), {INF: vec})

    @property
    def places(self) -> list[Place]:
        return [v for v, _ in self.comps]

    def component(self, v: Place) -> tuple[Fraction, ...]:
        for w, vec in self.comps:
            if w == v:
                return vec
        return (Fraction(0),) * self.dim

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [vec for _, vec in self.comps]

    def is_trivial(self) -> bool:
        return not self.comps

    def __sub__(self, other: "AdeleCharacter") -> "AdeleCharacter":
        if other.dim != self.dim:
            raise DimensionError("characters of different dimensions")
        neg = [(v, [-x for x in vec]) for v, vec in other.comps]
        return AdeleCharacter.from_components(self.dim, list(self.comps) + neg)

    def __add__(self, other: "AdeleCharacter") -> "AdeleCharacter":
        if other.dim != self.dim:
            raise DimensionError("characters of different dimensions")
        return AdeleCharacter.from_components(self.dim, list(self.comps) + list(other.comps))

    def restrict(self, s: Subspace) -> "AdeleCharacter":
        """The restriction to ``s``, written in the coordinates of its canonical basis."""
        if s.ambient_dim != self.dim:
            raise DimensionError("subspace and character dimensions differ")
        basis = s.vectors()
        return AdeleCharacter.from_components(
            s.dim, [(v, [_dot(vec, b) for b in basis]) for v, vec in self.comps])


def eval_character(lam: AdeleCharacter, q: Sequence) -> Phase:
    """Phase of lambda(q): <a_inf, q> - sum_p frac_p(<a_p, q>) mod 1."""
    if len(q) != lam.dim:
        raise DimensionError(f"vector of length {len(q)} for a character of Q^{lam.dim}")
    q = [Fraction(x) for x in q]
    total = Fraction(0)
    for v, vec in lam.comps:
        s = _dot(vec, q)
        total += s if v == INF else -frac_p(s, v)
    return Phase(total)


def line_trivial(lam: AdeleCharacter, x: Sequence) -> bool:
    """Whether lambda(t x) = 1 for every rational t."""
    if len(x) != lam.dim:
        raise DimensionError(f"vector of length {len(x)} for a character of Q^{lam.dim}")
    x = [Fraction(c) for c in x]
    return all(_dot(vec, x) == 0 for _, vec in lam.comps)


def trivial_on_subspace(lam: AdeleCharacter, s: Subspace) -> bool:
    if s.ambient_dim != lam.dim:
        raise DimensionError("subspace and character dimensions differ")
    return all(line_trivial(lam, b) for b in s.vectors())


def line_trivial_locus(lam: AdeleCharacter) -> Subspace:
    """W = {x : lambda(t x) = 1 for all t}, the common kernel of the components."""
    if lam.is_trivial():
        return Subspace.full(lam.dim)
    return kernel(RatMatrix.from_rows(lam.vectors(), lam.dim))


def coadjoint(lam: AdeleCharacter, g_action: RatMatrix) -> AdeleCharacter:
    """lambda o g^{-1}, realized by applying (g^{-1})^T to every component."""
    if g_action.rows != lam.dim or g_action.cols != lam.dim:
        raise DimensionError("action matrix does not match character dimension")
    m = g_action.inverse().transpose()
    return AdeleCharacter.from_components(lam.dim, [(v, m.apply(vec)) for v, vec in lam.comps])
