"""Trace functions on G = L ⋉ U and sampled checks of the trace axioms.

A trace is normalized, constant on conjugacy classes and of positive type.
G is infinite, so every check here runs on supplied samples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath

from .group import (
    GroupElement,
    LeviElement,
    LeviSystem,
    conjugate,
    direct_sum,
    inverse,
    multiply,
    split_element,
)
from .qmod1 import ONE, ZERO, CharValue, Phase
from .ratlinalg import RatMatrix

DEFAULT_PRECISION = 60
PRECISION_ENV = "ADELIC_CHARS_PSD_PREC"
DEFAULT_TOLERANCE = 1e-9


def default_precision() -> int:
    """Bits of working precision for the numerical PSD check."""
    return int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION))


class NotHermitian(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TraceFunction:
    system: LeviSystem
    func: Callable[[GroupElement], CharValue]
    name: str = ""

    def __call__(self, g: GroupElement) -> CharValue:
        return self.func(g)


@dataclass(frozen=True)
class TildeCentralCharacter:
    """A character of a subgroup of the central table, extended by zero.

    ``support`` lists ``(label, action, value)``; an element of L matches an
    entry when both its label and its action agree.
    """

    support: tuple[tuple[str, RatMatrix, Phase], ...]

    @classmethod
    def of(cls, entries: Iterable[tuple[str, RatMatrix, object]]) -> "TildeCentralCharacter":
        return cls(tuple((lbl, m, v if isinstance(v, Phase) else Phase(Fraction(v)))
                         for lbl, m, v in entries))

    def __call__(self, l: LeviElement) -> CharValue:
        for lbl, m, v in self.support:
            if l.label == lbl and l.action == m:
                return CharValue(v)
        return ZERO

    def check(self, system: LeviSystem) -> list[str]:
        """Subgroup and homomorphism conditions inside ``system``'s central table."""
        problems = []
        entries = {lbl: (m, v) for lbl, m, v in self.support}
        if system.identity_label not in entries or not entries[system.identity_label][1].is_zero():
            problems.append("identity must carry phase 0")
        for lbl, (m, v) in entries.items():
            if lbl not in system.central_labels or system.central_action(lbl) != m:
                problems.append(f"entry {lbl!r} is not a central-table element")
                continue
            for lbl2, (m2, v2) in entries.items():
                prod = system.table.get((lbl, lbl2))
                if prod not in entries:
                    problems.append(f"support not closed under ({lbl},{lbl2})")
                elif entries[prod][1] != v + v2:
                    problems.append(f"values not multiplicative on ({lbl},{lbl2})")
        return problems


def constant_one(system: LeviSystem) -> TraceFunction:
    return TraceFunction(system, lambda g: ONE, "1_G")


def delta_identity(system: LeviSystem) -> TraceFunction:
    return TraceFunction(system, lambda g: ONE if g.is_identity() else ZERO, "delta_e")


def trivial_extension(psi: Callable[[GroupElement], CharValue],
                      membership: Callable[[GroupElement], bool],
                      system: LeviSystem, name: str = "") -> TraceFunction:
    """psi on the subgroup given by ``membership``, zero outside it."""
    if not membership(system.identity()):
        raise ValueError("membership predicate must contain the identity")
    return TraceFunction(system, lambda g: psi(g) if membership(g) else ZERO, name)


def tensor(phi1: TraceFunction, phi2: TraceFunction,
           system: LeviSystem | None = None) -> TraceFunction:
    """phi1 ⊗ phi2 on the direct sum of their systems."""
    if system is None:
        system = direct_sum(phi1.system, phi2.system)

    def value(g: GroupElement) -> CharValue:
        g1, g2 = split_element(system, g)
        return phi1(g1) * phi2(g2)

    return TraceFunction(system, value, f"{phi1.name}⊗{phi2.name}")


def gram_matrix(phi: Callable[[GroupElement], CharValue],
                elems: Sequence[GroupElement]) -> list[list[CharValue]]:
    """Exact matrix (phi(g_j^{-1} g_i))_{i,j}."""
    if not elems:
        raise ValueError("need at least one element")
    invs = [inverse(g) for g in elems]
    return [[phi(multiply(invs[j], elems[i])) for j in range(len(elems))]
            for i in range(len(elems))]


def to_mp_matrix(gram, prec: int | None = None) -> mpmath.matrix:
    """Complex matrix at ``prec`` bits; phases are converted only here."""
    prec = default_precision() if prec is None else prec
    with mpmath.workprec(prec):
        n = len(gram)
        m = mpmath.matrix(n, n)
        for i, row in enumerate(gram):
            for j, x in enumerate(row):
                m[i, j] = _to_mpc(x)
        return m


def _to_mpc(x):
    if isinstance(x, CharValue):
        if x.phase is None:
            return mpmath.mpc(0)
        r = x.phase.value
        return mpmath.expjpi(2 * mpmath.mpf(r.numerator) / r.denominator)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def _exact_entries(gram) -> list[list[Fraction]] | None:
    out = []
    for row in gram:
        r = []
        for x in row:
            if isinstance(x, CharValue):
                if not x.is_real_rational():
                    return None
                r.append(x.to_rational())
            elif isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                r.append(Fraction(x))
            else:
                return None
        out.append(r)
    return out


def _exact_psd(a: list[list[Fraction]]) -> bool:
    """Symmetric elimination with diagonal pivoting over Q."""
    n = len(a)
    a = [row[:] for row in a]
    alive = list(range(n))
    while alive:
        piv = next((i for i in alive if a[i][i] > 0), None)
        if any(a[i][i] < 0 for i in alive):
            return False
        if piv is None:
            # all remaining diagonal entries vanish; PSD forces the block to be zero
            return all(a[i][j] == 0 for i in alive for j in alive)
        alive.remove(piv)
        d = a[piv][piv]
        for i in alive:
            f = a[i][piv] / d
            if f:
                for j in alive:
                    a[i][j] -= f * a[piv][j]
    return True


def psd_check(gram, tol: float = DEFAULT_TOLERANCE, prec: int | None = None) -> bool:
    """Whether a Hermitian matrix is positive semidefinite.

    Matrices whose entries are all in {-1, 0, 1} (or rational) are decided
    exactly; otherwise the smallest eigenvalue is compared with ``-tol``.
    """
    exact = _exact_entries(gram)
    if exact is not None:
        n = len(exact)
        if any(exact[i][j] != exact[j][i] for i in range(n) for j in range(n)):
            raise NotHermitian("matrix is not symmetric")
        return _exact_psd(exact)
    prec = default_precision() if prec is None else prec
    with mpmath.workprec(prec):
        m = to_mp_matrix(gram, prec)
        n = m.rows
        for i in range(n):
            for j in range(n):
                if abs(m[i, j] - mpmath.conj(m[j, i])) > tol:
                    raise NotHermitian(f"entries ({i},{j}) and ({j},{i}) are not conjugate")
        return min_eigenvalue(m, prec) >= -tol


def min_eigenvalue(m: mpmath.matrix, prec: int | None = None) -> float:
    prec = default_precision() if prec is None else prec
    with mpmath.workprec(prec):
        herm = (m + m.transpose_conj()) / 2
        evals = mpmath.eighe(herm, eigvals_only=True)
        return float(min(mpmath.re(e) for e in evals))


def central_check(phi: Callable[[GroupElement], CharValue],
                  pairs: Iterable[tuple[GroupElement, GroupElement]]) -> bool:
    """phi(h g h^{-1}) == phi(g) for every (g, h)."""
    return all(phi(conjugate(g, h)) == phi(g) for g, h in pairs)


def central_failures(phi, pairs) -> list[tuple[GroupElement, GroupElement]]:
    return [(g, h) for g, h in pairs if phi(conjugate(g, h)) != phi(g)]


def normalized(phi: TraceFunction) -> bool:
    return phi(phi.system.identity()) == ONE


@dataclass
class KernelProbe:
    k_members: list[GroupElement]
    p_members: list[GroupElement]
    multiplicative: bool


def projective_kernel_probe(phi: Callable[[GroupElement], CharValue],
                            elems: Sequence[GroupElement]) -> KernelProbe:
    """Split ``elems`` by phi(g) = 1 and |phi(g)| = 1, and test phi(x g) = phi(x) phi(g) on P."""
    values = [phi(g) for g in elems]
    k = [g for g, v in zip(elems, values) if v == ONE]
    p = [g for g, v in zip(elems, values) if not v.is_zero]
    ok = all(phi(multiply(x, g)) == phi(x) * v for x in p for g, v in zip(elems, values))
    return KernelProbe(k, p, ok)
