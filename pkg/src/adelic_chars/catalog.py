"""Example systems with known classifications.

* ``abelian_radical_system``: SL_2(Q) acting on V = Sym^k(Q^2), u abelian.
* ``heisenberg_system``: Sp_2n(Q) acting on the Heisenberg algebra h_{2n+1}.
* ``free_nilpotent_system``: SL_n(Q) acting on the free 2-step algebra V ⊕ ∧²V.

Levi generators are the elementary root vectors of the Levi Lie algebra in
the given representation, and the central table holds ±I where -I lies in L.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .adelic import INF, AdeleCharacter
from .group import LeviElement, LeviSystem, central_element, one_param
from .nilpotent import LieAlgebra
from .ratlinalg import RatMatrix, Subspace, smallest_invariant_containing
from .chars import full_operator_set


@dataclass(frozen=True)
class ExpectedCase:
    name: str
    k_dim: int
    p_dim: int
    k: Subspace
    p: Subspace
    levi_facts: tuple[tuple[LeviElement, bool], ...]
    characters: str


@dataclass(frozen=True)
class CatalogFixture:
    system: LeviSystem
    labeled_lambdas: tuple[tuple[str, AdeleCharacter], ...]
    expected: tuple[ExpectedCase, ...]
    invariant_ideals: tuple[Subspace, ...] = field(default=())

    def lam(self, name: str) -> AdeleCharacter:
        return dict(self.labeled_lambdas)[name]

    def case(self, name: str) -> ExpectedCase:
        return next(c for c in self.expected if c.name == name)


def _pm_identity(d: int, signs) -> RatMatrix:
    return RatMatrix.from_rows([[signs[i] if i == j else 0 for j in range(d)] for i in range(d)], d)


def _coordinate_span(d: int, idx) -> Subspace:
    return Subspace.span([[1 if j == i else 0 for j in range(d)] for i in idx], d)


def _dual(d: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * d
    v[i] = Fraction(c)
    return v


def standard_levi_samples(system: LeviSystem) -> list[LeviElement]:
    """The identity, every central label, and exp(N_i) for each generator."""
    out = [system.levi_identity()]
    out += [central_element(system, lbl) for lbl in system.central_labels
            if lbl != system.identity_label]
    out += [one_param(system, i, 1) for i in range(len(system.one_param_gens))]
    return out


def sl2_sym_generators(k: int) -> tuple[RatMatrix, RatMatrix]:
    """e = x d/dy and f = y d/dx on the monomial basis x^{k-i} y^i, i = 0..k."""
    d = k + 1
    e = [[0] * d for _ in range(d)]
    f = [[0] * d for _ in range(d)]
    for i in range(d):
        if i >= 1:
            e[i - 1][i] = i
        if i < k:
            f[i + 1][i] = k - i
    return RatMatrix.from_rows(e, d), RatMatrix.from_rows(f, d)


def abelian_radical_system(k: int = 1) -> CatalogFixture:
    if k < 1:
        raise ValueError("Sym^k needs k >= 1")
    d = k + 1
    if k == 1:
        names = ("v1", "v2")
    else:
        names = tuple(f"x{k - i}y{i}" for i in range(d))
    alg = LieAlgebra.abelian(d, names)
    e, f = sl2_sym_generators(k)
    minus = _pm_identity(d, [(-1) ** k] * d)
    system = LeviSystem.build(alg, [e, f], [("I", RatMatrix.identity(d)), ("-I", minus)],
                              name="abelian-sl2" if k == 1 else f"abelian-sl2-sym{k}")
    full, zero = Subspace.full(d), Subspace.zero(d)
    ident = system.levi_identity()
    minus_i = central_element(system, "-I")
    u1 = one_param(system, 0, 1)
    lambdas = (
        ("zero", AdeleCharacter.zero(d)),
        ("e1", AdeleCharacter.from_components(d, {INF: _dual(d, 0)})),
        ("e1_2adic", AdeleCharacter.from_components(d, {2: _dual(d, 0, Fraction(1, 2))})),
    )
    kernel_case = ((ident, True), (minus_i, k % 2 == 0), (u1, False))
    expected = (
        ExpectedCase("zero", d, d, full, full, ((ident, True), (minus_i, True), (u1, True)),
                     "characters of SL2(Q) lifted to G: 1_G, epsilon"),
        ExpectedCase("e1", 0, 0, zero, zero, kernel_case,
                     "delta_e" if k % 2 else "trivial extensions of characters of F = {±I}"),
        ExpectedCase("e1_2adic", 0, 0, zero, zero, kernel_case,
                     "delta_e" if k % 2 else "trivial extensions of characters of F = {±I}"),
    )
    return CatalogFixture(system, lambdas, expected, (zero, full))


def symplectic_root_vectors(n: int) -> list[RatMatrix]:
    """Nilpotent root vectors of sp_2n for the form with J = [[0, I], [-I, 0]]."""
    m = 2 * n
    out = []
    for i, j in itertools.permutations(range(n), 2):
        a = [[0] * m for _ in range(m)]
        a[i][j] = 1
        a[n + j][n + i] = -1
        out.append(RatMatrix.from_rows(a, m))
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        b = [[0] * m for _ in range(m)]
        b[i][n + j] = 1
        b[j][n + i] = 1
        out.append(RatMatrix.from_rows(b, m))
        c = [[0] * m for _ in range(m)]
        c[n + i][j] = 1
        c[n + j][i] = 1
        out.append(RatMatrix.from_rows(c, m))
    return out


def _extend_by_zero(m: RatMatrix, extra: int) -> RatMatrix:
    return RatMatrix.block_diag(m, RatMatrix.zeros(extra))


def heisenberg_system(n: int = 1) -> CatalogFixture:
    if n < 1:
        raise ValueError("n must be at least 1")
    d = 2 * n + 1
    if n == 1:
        names = ("X", "Y", "Z")
    else:
        names = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n)) + ("z",)
    alg = LieAlgebra.from_triples(d, [(i, n + i, 2 * n, 1) for i in range(n)], names)
    gens = [_extend_by_zero(r, 1) for r in symplectic_root_vectors(n)]
    minus = _pm_identity(d, [-1] * (2 * n) + [1])
    system = LeviSystem.build(alg, gens, [("I", RatMatrix.identity(d)), ("-I", minus)],
                              name=f"heisenberg-{n}")
    full, zero = Subspace.full(d), Subspace.zero(d)
    z = _coordinate_span(d, [2 * n])
    ident = system.levi_identity()
    minus_i = central_element(system, "-I")
    units = [one_param(system, i, 1) for i in range(len(gens))]
    trivial_only = ((ident, True), (minus_i, False)) + tuple((u, False) for u in units)
    lambdas = (
        ("zero", AdeleCharacter.zero(d)),
        ("center", AdeleCharacter.from_components(d, {INF: _dual(d, 2 * n)})),
        ("V", AdeleCharacter.from_components(d, {INF: _dual(d, 0)})),
    )
    expected = (
        ExpectedCase("zero", d, d, full, full,
                     ((ident, True), (minus_i, True)) + tuple((u, True) for u in units),
                     "characters of Sp(Q) lifted to G: 1_G, 1_H, epsilon"),
        ExpectedCase("center", 0, 1, zero, z, trivial_only, "tilde chi_lambda"),
        ExpectedCase("V", 1, 1, z, z, trivial_only, "1_Z"),
    )
    return CatalogFixture(system, lambdas, expected, (zero, z, full))


def _wedge_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: n + idx for idx, pair in enumerate(itertools.combinations(range(n), 2))}


def free_nilpotent_system(n: int = 3) -> CatalogFixture:
    if n < 3:
        raise ValueError("the free 2-step algebra needs n >= 3 (n = 2 is the Heisenberg case)")
    widx = _wedge_index(n)
    d = n + len(widx)
    names = tuple(f"v{i + 1}" for i in range(n)) + tuple(f"w{a + 1}{b + 1}" for a, b in widx)
    alg = LieAlgebra.from_triples(d, [(a, b, widx[(a, b)], 1) for a, b in widx], names)

    def wedge(a: int, b: int) -> tuple[int, int] | None:
        # v_a ∧ v_b as (sign, basis index)
        if a == b:
            return None
        return (1, widx[(a, b)]) if a < b else (-1, widx[(b, a)])

    gens = []
    for i, j in itertools.permutations(range(n), 2):
        m = [[0] * d for _ in range(d)]
        m[i][j] = 1  # E_ij v_j = v_i
        for (a, b), col in widx.items():
            # E_ij (v_a ∧ v_b) = δ_ja v_i ∧ v_b + δ_jb v_a ∧ v_i
            for hit, pair in ((j == a, (i, b)), (j == b, (a, i))):
                if hit:
                    w = wedge(*pair)
                    if w is not None:
                        m[w[1]][col] += w[0]
        gens.append(RatMatrix.from_rows(m, d))
    central = [("I", RatMatrix.identity(d))]
    if n % 2 == 0:
        central.append(("-I", _pm_identity(d, [-1] * n + [1] * len(widx))))
    system = LeviSystem.build(alg, gens, central, name=f"free-{n}")
    full, zero = Subspace.full(d), Subspace.zero(d)
    z = _coordinate_span(d, range(n, d))
    ident = system.levi_identity()
    units = [one_param(system, i, 1) for i in range(len(gens))]
    trivial_only = ((ident, True),) + tuple((u, False) for u in units)
    lambdas = (
        ("zero", AdeleCharacter.zero(d)),
        ("V", AdeleCharacter.from_components(d, {INF: _dual(d, 0)})),
        ("center", AdeleCharacter.from_components(d, {INF: _dual(d, n)})),
    )
    expected = (
        ExpectedCase("zero", d, d, full, full,
                     ((ident, True),) + tuple((u, True) for u in units),
                     "characters of L lifted to G: 1_G and tilde chi o p for chi in Z(L)^"),
        ExpectedCase("V", len(widx), len(widx), z, z, trivial_only, "1_{wedge^2 V}"),
        ExpectedCase("center", 0, 0, zero, zero, trivial_only, "delta_e"),
    )
    return CatalogFixture(system, lambdas, expected, (zero, z, full))


def invariant_ideals_from_basis(system: LeviSystem) -> set[Subspace]:
    """Invariant subspaces generated by single basis vectors, plus {0}."""
    ops = full_operator_set(system)
    d = system.dim
    found = {Subspace.zero(d)}
    for i in range(d):
        found.add(smallest_invariant_containing([_dual(d, i)], ops, d))
    return found


CATALOG_NAMES = ("abelian-sl2", "heisenberg-1", "heisenberg-2", "free-3")


def catalog_fixture(name: str) -> CatalogFixture:
    if name == "abelian-sl2":
        return abelian_radical_system(1)
    if name.startswith("heisenberg-"):
        return heisenberg_system(int(name.split("-", 1)[1]))
    if name.startswith("free-"):
        return free_nilpotent_system(int(name.split("-", 1)[1]))
    raise KeyError(f"unknown catalog system {name!r}; choose from {', '.join(CATALOG_NAMES)}")


def strictly_upper_triangular(n: int = 4) -> tuple[LieAlgebra, list[RatMatrix]]:
    """The algebra of strictly upper triangular n x n matrices (class n - 1).

    Basis E_ij (i < j) ordered by j - i, then by i; the matrices are
    returned alongside so callers can compare with matrix arithmetic.
    """
    idx = [(i, i + s) for s in range(1, n) for i in range(n - s)]
    pos = {ij: a for a, ij in enumerate(idx)}
    triples = []
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if a < b:
                # [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
                if j == k:
                    triples.append((a, b, pos[(i, l)], 1))
                if l == i:
                    triples.append((a, b, pos[(k, j)], -1))
    names = [f"E{i + 1}{j + 1}" for i, j in idx]
    mats = [RatMatrix.elementary(n, i, j) for i, j in idx]
    return LieAlgebra.from_triples(len(idx), triples, names), mats
