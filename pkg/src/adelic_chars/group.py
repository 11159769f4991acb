"""The semidirect product G = L ⋉ U.

L is described through its action on the Lie algebra u of U: a list of
nilpotent derivations N_i (one-parameter subgroups t -> exp(t N_i)) and a
finite table of labeled central elements.  An element of L is the pair
(central label, action matrix); an element of G is ``l * exp(x)`` with the
unipotent part on the right, so

    (l1, x1)(l2, x2) = (l1 l2, bch(alpha(l2)^{-1} x1, x2)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .nilpotent import (
    LieAlgebra,
    LieVector,
    Ad_of_group,
    bch,
    exp_nilpotent,
    is_automorphism,
    is_derivation,
    validate as validate_algebra,
)
from .ratlinalg import DimensionError, RatMatrix


class SystemMismatch(ValueError):
    pass


class InvalidSystem(ValueError):
    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True, eq=False)
class LeviSystem:
    """A nilpotent Lie algebra with the Levi action on it.

    ``central_labels[i]`` acts by ``central_actions[i]``; ``table[(a, b)]``
    is the label of the product a*b.  ``factors`` is set on direct sums.
    """

    algebra: LieAlgebra
    one_param_gens: tuple[RatMatrix, ...]
    central_labels: tuple[str, ...]
    central_actions: tuple[RatMatrix, ...]
    table: Mapping[tuple[str, str], str]
    name: str = ""
    factors: tuple["LeviSystem", "LeviSystem"] | None = None

    @classmethod
    def build(cls, algebra: LieAlgebra, gens: Sequence[RatMatrix] = (),
              central: Sequence[tuple[str, RatMatrix]] | None = None,
              table: Mapping[tuple[str, str], str] | None = None,
              name: str = "", check: bool = True) -> "LeviSystem":
        """Assemble a system; with ``check`` the result is validated.

        Without ``central`` the table is the trivial group ``{"e"}``.  With two
        entries and no table, the second label is taken to have order 2.
        """
        d = algebra.dim
        if central is None:
            central = [("e", RatMatrix.identity(d))]
        labels = tuple(lbl for lbl, _ in central)
        actions = tuple(m for _, m in central)
        if table is None:
            if len(labels) == 1:
                table = {(labels[0], labels[0]): labels[0]}
            elif len(labels) == 2:
                e, s = labels
                table = {(e, e): e, (e, s): s, (s, e): s, (s, s): e}
            else:
                raise InvalidSystem(["a multiplication table is required for more than two labels"])
        system = cls(algebra, tuple(gens), labels, actions, dict(table), name)
        if check:
            problems = validate_system(system)
            if problems:
                raise InvalidSystem(problems)
        return system

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def identity_label(self) -> str:
        for a in self.central_labels:
            if all(self.table.get((a, b)) == b for b in self.central_labels):
                return a
        raise InvalidSystem(["central table has no identity"])

    def central_action(self, label: str) -> RatMatrix:
        try:
            return self.central_actions[self.central_labels.index(label)]
        except ValueError:
            raise KeyError(f"unknown central label {label!r}") from None

    def label_inverse(self, label: str) -> str:
        e = self.identity_label
        for b in self.central_labels:
            if self.table[(label, b)] == e:
                return b
        raise InvalidSystem([f"label {label!r} has no inverse"])

    @cached_property
    def _identity_matrix(self) -> RatMatrix:
        return RatMatrix.identity(self.dim)

    def levi_identity(self) -> "LeviElement":
        return LeviElement(self, self.identity_label, self._identity_matrix, ())

    def identity(self) -> "GroupElement":
        return GroupElement(self.levi_identity(), self.algebra.zero())

    def central(self, label: str) -> "LeviElement":
        return central_element(self, label)

    def one_param(self, i: int, t=1) -> "LeviElement":
        return one_param(self, i, t)

    def element(self, levi: "LeviElement | None" = None, uni: Sequence | LieVector | None = None) -> "GroupElement":
        levi = self.levi_identity() if levi is None else levi
        if uni is None:
            uni = self.algebra.zero()
        elif not isinstance(uni, LieVector):
            uni = self.algebra.vector(uni)
        return GroupElement(levi, uni)

    def unipotent(self, x: Sequence | LieVector) -> "GroupElement":
        return self.element(None, x)


def validate_system(system: LeviSystem) -> list[str]:
    """Every violated axiom of the algebra, the generators and the central table."""
    alg = system.algebra
    problems = list(validate_algebra(alg))
    alg_ok = not problems
    d = alg.dim
    for i, n in enumerate(system.one_param_gens):
        if n.rows != d or n.cols != d:
            problems.append(f"generator {i} is {n.rows}x{n.cols}, expected {d}x{d}")
            continue
        if not (n ** d).is_zero():
            problems.append(f"generator {i} is not nilpotent")
        elif alg_ok and not is_derivation(n, alg):
            problems.append(f"generator {i} is not a derivation")
    labels = system.central_labels
    if len(set(labels)) != len(labels):
        problems.append("duplicate central labels")
    for lbl, m in zip(labels, system.central_actions):
        if m.rows != d or m.cols != d:
            problems.append(f"central action {lbl!r} has the wrong shape")
            continue
        try:
            m.inverse()
        except ZeroDivisionError:
            problems.append(f"central action {lbl!r} is singular")
            continue
        if alg_ok and not is_automorphism(m, alg):
            problems.append(f"central action {lbl!r} is not an automorphism")
        for i, n in enumerate(system.one_param_gens):
            if n.rows == d and m @ n != n @ m:
                problems.append(f"central action {lbl!r} does not commute with generator {i}")
    if problems:
        return problems
    for a in labels:
        for b in labels:
            c = system.table.get((a, b))
            if c not in labels:
                problems.append(f"table product ({a},{b}) missing or outside the table")
            elif system.central_action(a) @ system.central_action(b) != system.central_action(c):
                problems.append(f"actions are not multiplicative on ({a},{b})")
    if problems:
        return problems
    try:
        e = system.identity_label
    except InvalidSystem as exc:
        return exc.problems
    if system.central_action(e) != RatMatrix.identity(d):
        problems.append("identity label does not act trivially")
    for a in labels:
        if not any(system.table[(a, b)] == e for b in labels):
            problems.append(f"label {a!r} has no inverse")
        for b in labels:
            for c in labels:
                if system.table[(system.table[(a, b)], c)] != system.table[(a, system.table[(b, c)])]:
                    problems.append(f"table not associative on ({a},{b},{c})")
    return problems


@dataclass(frozen=True)
class LeviElement:
    """An element of L as a (central label, action on u) pair.

    ``word`` records how the element was built and is ignored by equality.
    """

    system: LeviSystem = field(compare=False, repr=False)
    label: str
    action: RatMatrix
    word: tuple[tuple[object, Fraction], ...] = field(default=(), compare=False)

    @cached_property
    def action_inverse(self) -> RatMatrix:
        return self.action.inverse()

    def __mul__(self, other: "LeviElement") -> "LeviElement":
        if other.system is not self.system:
            raise SystemMismatch("Levi elements of different systems")
        return LeviElement(self.system, self.system.table[(self.label, other.label)],
                           self.action @ other.action, self.word + other.word)

    def inverse(self) -> "LeviElement":
        inv_word = tuple((g, -t) if isinstance(g, int) else (self.system.label_inverse(g), t)
                         for g, t in reversed(self.word))
        return LeviElement(self.system, self.system.label_inverse(self.label),
                           self.action_inverse, inv_word)

    def is_identity(self) -> bool:
        return self.label == self.system.identity_label and self.action == self.system._identity_matrix

    def describe(self) -> str:
        parts = [f"exp({t}*N{g})" if isinstance(g, int) else str(g) for g, t in self.word]
        if not parts:
            return self.label
        return "*".join(parts)


@dataclass(frozen=True)
class GroupElement:
    levi: LeviElement
    uni: LieVector

    @property
    def system(self) -> LeviSystem:
        return self.levi.system

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def is_identity(self) -> bool:
        return self.levi.is_identity() and self.uni.is_zero()


def one_param(system: LeviSystem, i: int, t=1) -> LeviElement:
    if not 0 <= i < len(system.one_param_gens):
        raise IndexError(f"generator index {i} out of range")
    t = Fraction(t)
    return LeviElement(system, system.identity_label,
                       exp_nilpotent(system.one_param_gens[i], t), ((i, t),) if t else ())


def central_element(system: LeviSystem, label: str) -> LeviElement:
    return LeviElement(system, label, system.central_action(label), ((label, Fraction(0)),))


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.system is not b.system:
        raise SystemMismatch("elements of different systems")
    x1 = LieVector(a.uni.algebra, b.levi.action_inverse.apply(a.uni.coords))
    return GroupElement(a.levi * b.levi, bch(x1, b.uni))


def inverse(a: GroupElement) -> GroupElement:
    return GroupElement(a.levi.inverse(), LieVector(a.uni.algebra, tuple(-c for c in a.levi.action.apply(a.uni.coords))))


def conjugate(a: GroupElement, h: GroupElement) -> GroupElement:
    """h a h^{-1}."""
    return multiply(multiply(h, a), inverse(h))


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """a b a^{-1} b^{-1}."""
    return multiply(multiply(a, b), multiply(inverse(a), inverse(b)))


def adjoint_action(g: GroupElement) -> RatMatrix:
    """Matrix of Ad(g) on u for g = l exp(x): alpha(l) Ad(exp x)."""
    return g.levi.action @ Ad_of_group(g.uni)


def direct_sum(sys1: LeviSystem, sys2: LeviSystem) -> LeviSystem:
    """The product group, acting block-diagonally on u1 ⊕ u2."""
    a1, a2 = sys1.algebra, sys2.algebra
    d1, d = a1.dim, a1.dim + a2.dim
    triples = [(i, j, k, c) for i, j, k, c in a1.triples()]
    triples += [(i + d1, j + d1, k + d1, c) for i, j, k, c in a2.triples()]
    names = tuple(a1.basis_names) + tuple(a2.basis_names)
    if len(set(names)) != len(names):
        names = tuple(f"{n}.1" for n in a1.basis_names) + tuple(f"{n}.2" for n in a2.basis_names)
    alg = LieAlgebra.from_triples(d, triples, names)
    z1, z2 = RatMatrix.zeros(a1.dim), RatMatrix.zeros(a2.dim)
    gens = [RatMatrix.block_diag(n, z2) for n in sys1.one_param_gens]
    gens += [RatMatrix.block_diag(z1, n) for n in sys2.one_param_gens]
    central = []
    for l1, m1 in zip(sys1.central_labels, sys1.central_actions):
        for l2, m2 in zip(sys2.central_labels, sys2.central_actions):
            central.append((_pair_label(l1, l2), RatMatrix.block_diag(m1, m2)))
    table = {}
    for l1 in sys1.central_labels:
        for l2 in sys2.central_labels:
            for k1 in sys1.central_labels:
                for k2 in sys2.central_labels:
                    table[(_pair_label(l1, l2), _pair_label(k1, k2))] = _pair_label(
                        sys1.table[(l1, k1)], sys2.table[(l2, k2)])
    name = f"{sys1.name or 'G1'}+{sys2.name or 'G2'}"
    system = LeviSystem.build(alg, gens, central, table, name=name)
    object.__setattr__(system, "factors", (sys1, sys2))
    return system


def _pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def _block(m: RatMatrix, lo: int, hi: int) -> RatMatrix:
    return RatMatrix.from_rows([m.row(i)[lo:hi] for i in range(lo, hi)], hi - lo)


def split_element(system: LeviSystem, g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Components of an element of a direct sum in the two factor groups."""
    if system.factors is None:
        raise SystemMismatch("system is not a direct sum")
    s1, s2 = system.factors
    d1, d = s1.dim, system.dim
    act = g.levi.action
    if any(act[i, j] for i in range(d1) for j in range(d1, d)) or any(
            act[i, j] for i in range(d1, d) for j in range(d1)):
        raise DimensionError("action is not block diagonal")
    pair = {_pair_label(a, b): (a, b) for a in s1.central_labels for b in s2.central_labels}
    l1, l2 = pair[g.levi.label]
    n1 = len(s1.one_param_gens)
    w1 = tuple((i, t) for i, t in g.levi.word if isinstance(i, int) and i < n1)
    w2 = tuple((i - n1, t) for i, t in g.levi.word if isinstance(i, int) and i >= n1)
    e1 = GroupElement(LeviElement(s1, l1, _block(act, 0, d1), w1), s1.algebra.vector(g.uni.coords[:d1]))
    e2 = GroupElement(LeviElement(s2, l2, _block(act, d1, d), w2), s2.algebra.vector(g.uni.coords[d1:]))
    return e1, e2


def join_elements(system: LeviSystem, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Inverse of :func:`split_element`."""
    s1, s2 = system.factors
    n1 = len(s1.one_param_gens)
    word = tuple(w for w in g1.levi.word if isinstance(w[0], int))
    word += tuple((i + n1, t) for i, t in g2.levi.word if isinstance(i, int))
    levi = LeviElement(system, _pair_label(g1.levi.label, g2.levi.label),
                       RatMatrix.block_diag(g1.levi.action, g2.levi.action), word)
    return GroupElement(levi, system.algebra.vector(tuple(g1.uni.coords) + tuple(g2.uni.coords)))
