"""Nilpotent Lie algebras over Q given by structure constants.

Vectors of the algebra double as elements of the unipotent group through
exponential coordinates: the group law is the truncated
Baker-Campbell-Hausdorff series, summed with Dynkin's formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .ratlinalg import DimensionError, RatMatrix, Subspace, preimage, intersect


class AlgebraMismatch(ValueError):
    """Operands belong to different Lie algebras."""


class NotNilpotent(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra with basis X_0..X_{d-1} and ``[X_i, X_j] = sum_k c[i][j][k] X_k``.

    ``structure`` is the flattened tensor, index ``(i*d + j)*d + k``.
    """

    dim: int
    structure: tuple[Fraction, ...]
    basis_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.structure) != self.dim ** 3:
            raise DimensionError("structure tensor must have dim**3 entries")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(self.dim)))
        elif len(self.basis_names) != self.dim:
            raise DimensionError("one basis name per basis vector")

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict[tuple[int, int], Sequence],
                      basis_names: Sequence[str] = ()) -> "LieAlgebra":
        """Build from ``{(i, j): coords of [X_i, X_j]}`` for i < j; antisymmetry is implied."""
        c = [Fraction(0)] * dim ** 3
        for (i, j), vec in brackets.items():
            for k, x in enumerate(vec):
                x = Fraction(x)
                c[(i * dim + j) * dim + k] += x
                c[(j * dim + i) * dim + k] -= x
        return cls(dim, tuple(c), tuple(basis_names))

    @classmethod
    def from_triples(cls, dim: int, triples, basis_names: Sequence[str] = ()) -> "LieAlgebra":
        """Build from sparse ``(i, j, k, c)`` with i < j; antisymmetry is implied."""
        c = [Fraction(0)] * dim ** 3
        for i, j, k, v in triples:
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise DimensionError(f"bad structure triple ({i},{j},{k})")
            v = Fraction(v)
            c[(i * dim + j) * dim + k] += v
            c[(j * dim + i) * dim + k] -= v
        return cls(dim, tuple(c), tuple(basis_names))

    @classmethod
    def abelian(cls, dim: int, basis_names: Sequence[str] = ()) -> "LieAlgebra":
        return cls(dim, (Fraction(0),) * dim ** 3, tuple(basis_names))

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.structure[(i * self.dim + j) * self.dim + k]

    @cached_property
    def _nonzero(self) -> tuple[tuple[int, int, int, Fraction], ...]:
        d = self.dim
        return tuple((i, j, k, self.c(i, j, k))
                     for i in range(d) for j in range(d) for k in range(d) if self.c(i, j, k))

    def triples(self) -> list[tuple[int, int, int, Fraction]]:
        """Sparse structure constants with i < j."""
        return [t for t in self._nonzero if t[0] < t[1]]

    def bracket_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for i, j, k, c in self._nonzero:
            xi = x[i]
            if xi:
                yj = y[j]
                if yj:
                    out[k] += c * xi * yj
        return tuple(out)

    def basis_vector(self, i: int) -> "LieVector":
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return LieVector(self, tuple(v))

    def vector(self, coords: Sequence) -> "LieVector":
        return LieVector(self, tuple(Fraction(x) for x in coords))

    def zero(self) -> "LieVector":
        return LieVector(self, (Fraction(0),) * self.dim)

    @cached_property
    def basis_ad(self) -> tuple[RatMatrix, ...]:
        return tuple(ad_matrix(self.basis_vector(i)) for i in range(self.dim))

    @cached_property
    def nil_class(self) -> int:
        """Nilpotency class (0 for the zero algebra, 1 for abelian)."""
        series = lower_central_series(self)
        if series[-1].dim != 0:
            raise NotNilpotent("lower central series does not reach {0}")
        return len(series) - 1

    def is_abelian(self) -> bool:
        return not self._nonzero


@dataclass(frozen=True)
class LieVector:
    algebra: LieAlgebra = field(repr=False)
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise DimensionError("coordinate count differs from algebra dimension")

    def _same(self, other: "LieVector") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("vectors live in different algebras")

    def __add__(self, other: "LieVector") -> "LieVector":
        self._same(other)
        return LieVector(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LieVector") -> "LieVector":
        self._same(other)
        return LieVector(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LieVector":
        return LieVector(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, t) -> "LieVector":
        t = Fraction(t)
        return LieVector(self.algebra, tuple(t * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)


def bracket(x: LieVector, y: LieVector) -> LieVector:
    x._same(y)
    return LieVector(x.algebra, x.algebra.bracket_coords(x.coords, y.coords))


def lower_central_series(alg: LieAlgebra) -> list[Subspace]:
    """u = C^1 ⊇ C^2 = [u, u] ⊇ ... until the series stabilizes."""
    d = alg.dim
    series = [Subspace.full(d)]
    while True:
        cur = series[-1]
        nxt = Subspace.span(
            [alg.bracket_coords(alg.basis_vector(i).coords, v)
             for i in range(d) for v in cur.vectors()], d)
        if nxt == cur:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def validate(alg: LieAlgebra) -> list[str]:
    """Violations of antisymmetry, the Jacobi identity and nilpotency; empty when valid."""
    d = alg.dim
    problems = []
    for i in range(d):
        for j in range(i, d):
            for k in range(d):
                if alg.c(i, j, k) != -alg.c(j, i, k):
                    problems.append(f"antisymmetry violated at ({i},{j},{k})")
    if problems:
        return problems
    basis = [alg.basis_vector(i).coords for i in range(d)]
    br = alg.bracket_coords
    for i, j, k in itertools.combinations(range(d), 3):
        a, b, c = basis[i], basis[j], basis[k]
        total = [x + y + z for x, y, z in zip(br(a, br(b, c)), br(b, br(c, a)), br(c, br(a, b)))]
        if any(total):
            problems.append(f"jacobi identity violated at ({i},{j},{k})")
    if problems:
        return problems
    if lower_central_series(alg)[-1].dim != 0:
        problems.append("algebra is not nilpotent")
    return problems


def ad_matrix(x: LieVector) -> RatMatrix:
    """Matrix of y -> [x, y]."""
    alg = x.algebra
    d = alg.dim
    cols = [alg.bracket_coords(x.coords, alg.basis_vector(j).coords) for j in range(d)]
    return RatMatrix.from_rows([[cols[j][i] for j in range(d)] for i in range(d)], d)


def _truncated_exp(n: RatMatrix, order: int, t: Fraction = Fraction(1)) -> RatMatrix:
    result = RatMatrix.identity(n.rows)
    term = RatMatrix.identity(n.rows)
    for k in range(1, order):
        term = (term @ n).scale(t / k)
        if term.is_zero():
            break
        result = result + term
    return result


def Ad_of_group(x: LieVector) -> RatMatrix:
    """Matrix of Ad(exp x) = exp(ad x), a finite sum since ad x is nilpotent."""
    return _truncated_exp(ad_matrix(x), max(x.algebra.nil_class, 1))


def exp_nilpotent(n: RatMatrix, t=1) -> RatMatrix:
    """exp(t n) for a nilpotent matrix n."""
    if not n.is_square:
        raise DimensionError("exp of a non-square matrix")
    if not (n ** n.rows).is_zero():
        raise NotNilpotent("matrix is not nilpotent")
    return _truncated_exp(n, n.rows + 1, Fraction(t))


def is_derivation(n: RatMatrix, alg: LieAlgebra) -> bool:
    """Whether n[x, y] = [nx, y] + [x, ny] on all basis pairs."""
    d = alg.dim
    if n.rows != d or n.cols != d:
        raise DimensionError("derivation must be a dim x dim matrix")
    cols = [n.column(j) for j in range(d)]
    basis = [alg.basis_vector(i).coords for i in range(d)]
    br = alg.bracket_coords
    for i in range(d):
        for j in range(i + 1, d):
            lhs = n.apply(br(basis[i], basis[j]))
            rhs = [a + b for a, b in zip(br(cols[i], basis[j]), br(basis[i], cols[j]))]
            if list(lhs) != rhs:
                return False
    return True


def is_automorphism(m: RatMatrix, alg: LieAlgebra) -> bool:
    d = alg.dim
    cols = [m.column(j) for j in range(d)]
    basis = [alg.basis_vector(i).coords for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            if m.apply(alg.bracket_coords(basis[i], basis[j])) != alg.bracket_coords(cols[i], cols[j]):
                return False
    return True


def center(alg: LieAlgebra) -> Subspace:
    z = Subspace.full(alg.dim)
    for ad in alg.basis_ad:
        z = intersect(z, preimage(ad, Subspace.zero(alg.dim)))
    return z


def ascending_central_series(alg: LieAlgebra) -> list[Subspace]:
    """z^1 = center, z^{i+1} = {X : [X, u] ⊆ z^i}, ending with the whole algebra."""
    d = alg.dim
    series: list[Subspace] = []
    cur = Subspace.zero(d)
    while cur.dim < d:
        nxt = Subspace.full(d)
        for ad in alg.basis_ad:
            nxt = intersect(nxt, preimage(ad, cur))
        if nxt == cur:
            raise NotNilpotent("ascending central series stalls below the full algebra")
        series.append(nxt)
        cur = nxt
    return series or [Subspace.full(d)]


@lru_cache(maxsize=None)
def dynkin_terms(order: int) -> tuple[tuple[Fraction, str], ...]:
    """Dynkin coefficients of log(e^X e^Y) up to bracket degree ``order``.

    Each term is ``(coefficient, word)`` with word over "XY"; the word
    w1 w2 ... wm stands for the right-nested bracket [w1, [w2, ..., wm]].
    """
    words: dict[str, Fraction] = {}

    def compositions(budget):
        # sequences of pairs (r, s), r + s > 0, of total degree <= budget
        yield ()
        for r in range(budget + 1):
            for s in range(budget + 1 - r):
                if r + s:
                    for rest in compositions(budget - r - s):
                        yield ((r, s),) + rest

    for seq in compositions(order):
        if not seq:
            continue
        n = len(seq)
        deg = sum(r + s for r, s in seq)
        denom = deg
        for r, s in seq:
            denom *= math.factorial(r) * math.factorial(s)
        word = "".join("X" * r + "Y" * s for r, s in seq)
        # right-nested brackets ending in a repeated letter vanish
        if len(word) > 1 and word[-1] == word[-2]:
            continue
        words[word] = words.get(word, Fraction(0)) + Fraction((-1) ** (n - 1), n * denom)
    return tuple(sorted(((c, w) for w, c in words.items() if c), key=lambda t: (len(t[1]), t[1])))


def bch(x: LieVector, y: LieVector) -> LieVector:
    """The Baker-Campbell-Hausdorff product: exp(x) exp(y) = exp(bch(x, y))."""
    x._same(y)
    alg = x.algebra
    order = max(alg.nil_class, 1)
    br = alg.bracket_coords
    letters = {"X": x.coords, "Y": y.coords}
    out = [Fraction(0)] * alg.dim
    for coef, word in dynkin_terms(order):
        v = letters[word[-1]]
        for ch in reversed(word[:-1]):
            v = br(letters[ch], v)
            if not any(v):
                break
        if any(v):
            for k, a in enumerate(v):
                if a:
                    out[k] += coef * a
    return LieVector(alg, tuple(out))
