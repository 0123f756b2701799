"""Super vector spaces, super inner products and reciprocal bases.

A super space V = V0 + V1 is described by its even and odd dimensions.  A
homogeneous basis is always the ordered list e_1..e_n (even) followed by
a_1..a_m (odd).  Inner products are block Grams: a symmetric block on the
even part, a skew block on the odd part, nothing across parities.  Gram
entries are rational functions, so the same type serves pointwise products
and metric fields on a chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .errors import (
    DimensionMismatch,
    OddSymplecticDimension,
    ParityError,
    SingularGram,
)
from .scalars import RationalFunction

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class SuperSpaceSpec:
    """Dimensions of a super vector space."""

    even_dim: int
    odd_dim: int

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0:
            raise DimensionMismatch("dimensions must be nonnegative")

    @property
    def total_dim(self) -> int:
        return self.even_dim + self.odd_dim

    def parity_of(self, index: int) -> int:
        """Parity of the index-th basis vector in the ordered basis."""
        if not 0 <= index < self.total_dim:
            raise DimensionMismatch(f"basis index {index} out of range")
        return EVEN if index < self.even_dim else ODD


class SuperVector:
    """Vector (or vector field) with even and odd component functions."""

    __slots__ = ("space", "even", "odd")

    def __init__(self, space: SuperSpaceSpec, even, odd):
        even = tuple(even)
        odd = tuple(odd)
        if len(even) != space.even_dim or len(odd) != space.odd_dim:
            raise DimensionMismatch("component counts do not match the space")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "even", even)
        object.__setattr__(self, "odd", odd)

    def __setattr__(self, name, value):
        raise AttributeError("SuperVector is immutable")

    @classmethod
    def zero(cls, space: SuperSpaceSpec, nvars: int) -> SuperVector:
        z = RationalFunction.zero(nvars)
        return cls(space, (z,) * space.even_dim, (z,) * space.odd_dim)

    @classmethod
    def basis_even(cls, space: SuperSpaceSpec, index: int, nvars: int) -> SuperVector:
        v = cls.zero(space, nvars)
        even = list(v.even)
        even[index] = RationalFunction.one(nvars)
        return cls(space, even, v.odd)

    @classmethod
    def basis_odd(cls, space: SuperSpaceSpec, index: int, nvars: int) -> SuperVector:
        v = cls.zero(space, nvars)
        odd = list(v.odd)
        odd[index] = RationalFunction.one(nvars)
        return cls(space, v.even, odd)

    @property
    def nvars(self) -> int:
        for c in self.even + self.odd:
            return c.nvars
        raise DimensionMismatch("zero-dimensional vector has no coefficients")

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.even) and all(c.is_zero for c in self.odd)

    @property
    def parity(self) -> int | None:
        """0 for even, 1 for odd, None for mixed; zero vector counts even."""
        has_even = any(not c.is_zero for c in self.even)
        has_odd = any(not c.is_zero for c in self.odd)
        if has_even and has_odd:
            return None
        if has_odd:
            return ODD
        return EVEN

    def even_part(self) -> SuperVector:
        z = RationalFunction.zero(self.nvars)
        return SuperVector(self.space, self.even, (z,) * self.space.odd_dim)

    def odd_part(self) -> SuperVector:
        z = RationalFunction.zero(self.nvars)
        return SuperVector(self.space, (z,) * self.space.even_dim, self.odd)

    def __add__(self, other: SuperVector) -> SuperVector:
        if self.space != other.space:
            raise DimensionMismatch("vectors live over different spaces")
        return SuperVector(
            self.space,
            tuple(a + b for a, b in zip(self.even, other.even)),
            tuple(a + b for a, b in zip(self.odd, other.odd)),
        )

    def __neg__(self) -> SuperVector:
        return SuperVector(self.space, tuple(-c for c in self.even), tuple(-c for c in self.odd))

    def __sub__(self, other: SuperVector) -> SuperVector:
        return self + (-other)

    def scale(self, f: RationalFunction) -> SuperVector:
        return SuperVector(
            self.space,
            tuple(f * c for c in self.even),
            tuple(f * c for c in self.odd),
        )

    def __eq__(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        return self.space == other.space and self.even == other.even and self.odd == other.odd

    def __hash__(self):
        return hash((self.space, self.even, self.odd))

    def __repr__(self):
        return f"SuperVector(even={list(self.even)}, odd={list(self.odd)})"


class SuperInnerProduct:
    """Block Gram data: symmetric even block, skew odd block."""

    __slots__ = ("space", "even_gram", "odd_gram", "__dict__")

    def __init__(self, space: SuperSpaceSpec, even_gram, odd_gram):
        even_gram = linalg.as_matrix(even_gram) if space.even_dim else ()
        odd_gram = linalg.as_matrix(odd_gram) if space.odd_dim else ()
        n, m = space.even_dim, space.odd_dim
        if len(even_gram) != n or any(len(r) != n for r in even_gram):
            raise DimensionMismatch("even Gram block has the wrong shape")
        if len(odd_gram) != m or any(len(r) != m for r in odd_gram):
            raise DimensionMismatch("odd Gram block has the wrong shape")
        if m % 2 != 0:
            raise OddSymplecticDimension(
                f"odd dimension {m} cannot carry a nondegenerate skew product"
            )
        for i in range(n):
            for j in range(i, n):
                if even_gram[i][j] != even_gram[j][i]:
                    raise ParityError("even Gram block must be symmetric")
        for i in range(m):
            for j in range(i, m):
                if odd_gram[i][j] != -odd_gram[j][i]:
                    raise ParityError("odd Gram block must be skew-symmetric")
        if n and linalg.determinant(even_gram).is_zero:
            raise SingularGram("even Gram block is singular")
        if m and linalg.determinant(odd_gram).is_zero:
            raise SingularGram("odd Gram block is singular")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "even_gram", even_gram)
        object.__setattr__(self, "odd_gram", odd_gram)

    def __setattr__(self, name, value):
        if name == "__dict__" or name in ("space", "even_gram", "odd_gram"):
            raise AttributeError("SuperInnerProduct is immutable")
        object.__setattr__(self, name, value)

    @property
    def nvars(self) -> int:
        if self.space.even_dim:
            return self.even_gram[0][0].nvars
        return self.odd_gram[0][0].nvars

    @cached_property
    def even_inverse(self) -> linalg.Matrix:
        return linalg.inverse(self.even_gram)

    @cached_property
    def odd_inverse(self) -> linalg.Matrix:
        return linalg.inverse(self.odd_gram)

    @cached_property
    def even_covector_gram(self) -> linalg.Matrix:
        """Gram of the reciprocal/dual even basis: inverse of the even block."""
        return self.even_inverse

    @cached_property
    def odd_covector_gram(self) -> linalg.Matrix:
        """Gram of the reciprocal/dual odd basis: minus the inverse block."""
        return tuple(tuple(-x for x in row) for row in self.odd_inverse)


def pair(g: SuperInnerProduct, u: SuperVector, v: SuperVector) -> RationalFunction:
    """Graded-symmetric pairing <u, v> through the block Grams."""
    if u.space != g.space or v.space != g.space:
        raise DimensionMismatch("vector does not match the inner product space")
    total = RationalFunction.zero(g.nvars)
    for i, ui in enumerate(u.even):
        if ui.is_zero:
            continue
        for j, vj in enumerate(v.even):
            if vj.is_zero:
                continue
            total = total + ui * vj * g.even_gram[i][j]
    for i, ui in enumerate(u.odd):
        if ui.is_zero:
            continue
        for j, vj in enumerate(v.odd):
            if vj.is_zero:
                continue
            total = total + ui * vj * g.odd_gram[i][j]
    return total


def reciprocal_basis(g: SuperInnerProduct) -> list[SuperVector]:
    """The unique homogeneous basis {e^i, a^j} with <e^j, e_i> = delta."""
    space = g.space
    nvars = g.nvars
    zero = RationalFunction.zero(nvars)
    out = []
    if space.even_dim:
        inv = g.even_inverse
        for j in range(space.even_dim):
            out.append(SuperVector(space, inv[j], (zero,) * space.odd_dim))
    if space.odd_dim:
        inv = g.odd_inverse
        for j in range(space.odd_dim):
            out.append(SuperVector(space, (zero,) * space.even_dim, inv[j]))
    return out


@dataclass(frozen=True)
class BilinearForm:
    """Parity-preserving bilinear map given by its two diagonal blocks."""

    space: SuperSpaceSpec
    even_block: linalg.Matrix
    odd_block: linalg.Matrix

    @classmethod
    def from_full_matrix(cls, space: SuperSpaceSpec, rows) -> BilinearForm:
        """Build from a full (n+m) x (n+m) matrix, rejecting mixed blocks."""
        rows = linalg.as_matrix(rows)
        n, m = space.even_dim, space.odd_dim
        if len(rows) != n + m or any(len(r) != n + m for r in rows):
            raise DimensionMismatch("matrix does not match the space")
        for i in range(n + m):
            for j in range(n + m):
                if (i < n) != (j < n) and not rows[i][j].is_zero:
                    raise ParityError("bilinear map does not preserve parity")
        even = tuple(tuple(rows[i][j] for j in range(n)) for i in range(n))
        odd = tuple(tuple(rows[n + i][n + j] for j in range(m)) for i in range(m))
        return cls(space, even, odd)

    def __call__(self, u: SuperVector, v: SuperVector) -> RationalFunction:
        nvars = u.nvars
        total = RationalFunction.zero(nvars)
        for i, ui in enumerate(u.even):
            for j, vj in enumerate(v.even):
                total = total + ui * vj * self.even_block[i][j]
        for i, ui in enumerate(u.odd):
            for j, vj in enumerate(v.odd):
                total = total + ui * vj * self.odd_block[i][j]
        return total


def super_contraction(g: SuperInnerProduct, t: BilinearForm) -> RationalFunction:
    """Base-independent trace sum_i T(e_i, e^i) over a homogeneous basis."""
    if t.space != g.space:
        raise DimensionMismatch("bilinear map does not match the inner product")
    space = g.space
    nvars = g.nvars
    total = RationalFunction.zero(nvars)
    recip = reciprocal_basis(g)
    for i in range(space.even_dim):
        e_i = SuperVector.basis_even(space, i, nvars)
        total = total + t(e_i, recip[i])
    for j in range(space.odd_dim):
        a_j = SuperVector.basis_odd(space, j, nvars)
        total = total + t(a_j, recip[space.even_dim + j])
    return total
