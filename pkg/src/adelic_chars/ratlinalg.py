"""Exact linear algebra over Q.

Matrices hold :class:`fractions.Fraction` entries.  Subspaces of Q^d are
stored by the reduced row-echelon form of a basis, so two subspaces are
equal exactly when their stored bases are identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "RatMatrix",
    "Subspace",
    "rref",
    "kernel",
    "intersect",
    "subspace_sum",
    "preimage",
    "image",
    "largest_invariant_in",
    "smallest_invariant_containing",
    "annihilator",
]


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted")
    return Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(_q(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def elementary(cls, n: int, i: int, j: int, value=1) -> "RatMatrix":
        e = [Fraction(0)] * (n * n)
        e[i * n + j] = _q(value)
        return cls(n, n, tuple(e))

    @classmethod
    def block_diag(cls, a: "RatMatrix", b: "RatMatrix") -> "RatMatrix":
        rows = [list(r) + [0] * b.cols for r in a.to_rows()]
        rows += [[0] * a.cols + list(r) for r in b.to_rows()]
        return cls.from_rows(rows, a.cols + b.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return RatMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in subtraction")
        return RatMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "RatMatrix":
        c = _q(c)
        return RatMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for j in range(p):
                s = Fraction(0)
                for k, x in enumerate(arow):
                    if x:
                        y = b[k * p + j]
                        if y:
                            s += x * y
                out.append(s)
        return RatMatrix(n, p, tuple(out))

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.cols} columns")
        out = []
        for i in range(self.rows):
            s = Fraction(0)
            for x, y in zip(self.row(i), v):
                if x and y:
                    s += x * y
            out.append(s)
        return tuple(out)

    def __pow__(self, k: int) -> "RatMatrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        result = RatMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "RatMatrix":
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = RatMatrix.from_rows(
            [list(self.row(i)) + list(RatMatrix.identity(n).row(i)) for i in range(n)], 2 * n)
        red, pivots, rank = rref(aug)
        if pivots != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return RatMatrix.from_rows([red.row(i)[n:] for i in range(n)], n)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int], int]:
    """Reduced row-echelon form of ``m`` with its pivot columns and rank."""
    rows, pivots = _rref_rows([list(m.row(i)) for i in range(m.rows)], m.cols)
    return RatMatrix.from_rows(rows, m.cols), pivots, len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^d, canonically represented by its RREF basis."""

    ambient_dim: int
    basis: RatMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [[_q(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionError(f"vector of length {len(r)} in Q^{ambient_dim}")
        rows, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, RatMatrix.from_rows(rows[:len(pivots)], ambient_dim))

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls(d, RatMatrix(0, d, ()))

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(d, RatMatrix.identity(d))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return self.basis.to_rows()

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(r) if x) for r in self.vectors()]

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        """Reduce ``v`` modulo the subspace; the result vanishes at every pivot."""
        v = [_q(x) for x in v]
        for row, p in zip(self.vectors(), self.pivots()):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(v in self for v in other.vectors())

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vectors())
        return f"Subspace(Q^{self.ambient_dim}; {{{vecs}}})"


def _check_same(s1: Subspace, s2: Subspace) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}")


def kernel(m: RatMatrix) -> Subspace:
    """Null space {x : m x = 0}."""
    red, pivots, rank = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        vecs.append(v)
    return Subspace.span(vecs, m.cols)


def annihilator(s: Subspace) -> Subspace:
    """Vectors orthogonal to ``s`` under the standard dot product."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel(s.basis)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _check_same(s1, s2)
    return Subspace.span(s1.vectors() + s2.vectors(), s1.ambient_dim)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    _check_same(s1, s2)
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(s1.ambient_dim)
    # S1 ∩ S2 = ann(ann S1 + ann S2)
    return annihilator(subspace_sum(annihilator(s1), annihilator(s2)))


def image(m: RatMatrix, s: Subspace) -> Subspace:
    if m.cols != s.ambient_dim:
        raise DimensionError("matrix columns differ from ambient dimension")
    return Subspace.span([m.apply(v) for v in s.vectors()], m.rows)


def preimage(m: RatMatrix, s: Subspace) -> Subspace:
    """{x : m x ∈ s}."""
    if m.rows != s.ambient_dim:
        raise DimensionError("matrix rows differ from ambient dimension")
    ann = annihilator(s)
    if ann.dim == 0:
        return Subspace.full(m.cols)
    return kernel(ann.basis @ m)


def _check_ops(d: int, ops: Sequence[RatMatrix]) -> None:
    for op in ops:
        if op.rows != d or op.cols != d:
            raise DimensionError(f"operator {op.rows}x{op.cols} on Q^{d}")


def largest_invariant_in(w: Subspace, ops: Sequence[RatMatrix]) -> Subspace:
    """Largest subspace of ``w`` mapped into itself by every operator."""
    _check_ops(w.ambient_dim, ops)
    v = w
    while True:
        nxt = v
        for op in ops:
            nxt = intersect(nxt, preimage(op, v))
        if nxt == v:
            return v
        v = nxt


def smallest_invariant_containing(seeds: Iterable[Sequence], ops: Sequence[RatMatrix],
                                  ambient_dim: int | None = None) -> Subspace:
    """Smallest subspace containing ``seeds`` and mapped into itself by every operator."""
    seeds = [list(v) for v in seeds]
    if ambient_dim is None:
        if seeds:
            ambient_dim = len(seeds[0])
        elif ops:
            ambient_dim = ops[0].rows
        else:
            raise DimensionError("cannot infer ambient dimension")
    _check_ops(ambient_dim, ops)
    s = Subspace.span(seeds, ambient_dim)
    while True:
        vecs = s.vectors()
        nxt = Subspace.span(vecs + [op.apply(v) for op in ops for v in vecs], ambient_dim)
        if nxt.dim == s.dim:
            return s
        s = nxt
