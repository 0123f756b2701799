"""Exact scalar arithmetic for chart computations.

Three layers, all immutable and exact:

  * rationals: ``fractions.Fraction``, re-exported as ``Rational``,
  * ``Polynomial``: sparse multivariate polynomials over the rationals,
  * ``RationalFunction``: normalized quotients of polynomials; the scalar
    field that every tensor coefficient lives in.

A polynomial stores ``{exponent_tuple: Fraction}`` with no zero
coefficients, so equal polynomials have identical term dicts.  A rational
function is kept canonical: integer coefficients, no common polynomial
factor, coprime integer contents, and positive leading denominator
coefficient under graded-lex order.  Equality of values is therefore
equality of representations, which is what makes zero-tolerance identity
checking possible everywhere else in the library.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, DivisionByZero, PoleError

Rational = Fraction
Exponent = tuple[int, ...]


def _grlex(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != nvars:
                    raise DimensionMismatch(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}"
                    )
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = Fraction(coeff)
                if c != 0:
                    clean[tuple(exp)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> Polynomial:
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise DimensionMismatch(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading term under graded-lex order; zero polynomial has none."""
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex)
        return exp, self.terms[exp]

    # -- ring operations -----------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"variable counts differ: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            c = out.get(exp, Fraction(0)) + coeff
            if c == 0:
                out.pop(exp, None)
            else:
                out[exp] = c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = out.get(e, Fraction(0)) + ca * cb
                if c == 0:
                    out.pop(e, None)
                else:
                    out[e] = c
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if power < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base if power > 1 else base
            power >>= 1
        return result

    def derivative(self, index: int) -> Polynomial:
        if not 0 <= index < self.nvars:
            raise DimensionMismatch(f"variable index {index} out of range")
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            k = exp[index]
            if k == 0:
                continue
            e = list(exp)
            e[index] = k - 1
            out[tuple(e)] = coeff * k
        return Polynomial(self.nvars, out)

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionMismatch(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = coeff
            for e, v in zip(exp, pt):
                if e:
                    term *= v**e
            total += term
        return total

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        from .expressions import render_polynomial

        return f"Polynomial({self.nvars}, {render_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# gcd machinery
#
# poly_gcd works on integer-coefficient primitive polynomials and runs the
# classical primitive PRS recursively on the highest variable present;
# contents in the remaining variables are gcd'd by recursion, integers at
# the base.  Sizes here stay small (few variables, modest degree), which is
# exactly the regime where this approach is solid.
# ---------------------------------------------------------------------------


def _coeff_lcm_denominator(p: Polynomial) -> int:
    lcm = 1
    for c in p.terms.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return lcm


def _int_content(p: Polynomial) -> int:
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, abs(c.numerator))
        if g == 1:
            break
    return g


def _make_primitive_integer(p: Polynomial) -> Polynomial:
    """Scale to integer coefficients, content 1, positive leading coeff."""
    if p.is_zero:
        return p
    lcm = _coeff_lcm_denominator(p)
    if lcm != 1:
        p = p * lcm
    content = _int_content(p)
    if content > 1:
        p = p * Fraction(1, content)
    if p.leading()[1] < 0:
        p = -p
    return p


def _degree_in(p: Polynomial, v: int) -> int:
    return max((e[v] for e in p.terms), default=0)


def _coeffs_in(p: Polynomial, v: int) -> dict[int, Polynomial]:
    """View p as a univariate polynomial in x_v with Polynomial coefficients."""
    buckets: dict[int, dict[Exponent, Fraction]] = {}
    for exp, coeff in p.terms.items():
        d = exp[v]
        e = list(exp)
        e[v] = 0
        buckets.setdefault(d, {})[tuple(e)] = coeff
    return {d: Polynomial(p.nvars, t) for d, t in buckets.items()}


def _monomial(nvars: int, v: int, power: int) -> Polynomial:
    exp = [0] * nvars
    exp[v] = power
    return Polynomial(nvars, {tuple(exp): Fraction(1)})


def poly_divexact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact division a / b; raises ValueError when b does not divide a."""
    if b.is_zero:
        raise DivisionByZero("division by the zero polynomial")
    a._check(b)
    if a.is_zero:
        return a
    bexp, bc = b.leading()
    quotient: dict[Exponent, Fraction] = {}
    rest = dict(a.terms)
    while rest:
        rexp = max(rest, key=_grlex)
        qexp = tuple(x - y for x, y in zip(rexp, bexp))
        if any(e < 0 for e in qexp):
            raise ValueError("inexact polynomial division")
        qc = rest[rexp] / bc
        quotient[qexp] = qc
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(qexp, eb))
            c = rest.get(e, Fraction(0)) - qc * cb
            if c == 0:
                rest.pop(e, None)
            else:
                rest[e] = c
    return Polynomial(a.nvars, quotient)


def _strip_int_content(p: Polynomial) -> Polynomial:
    if p.is_zero:
        return p
    content = _int_content(p)
    if content > 1:
        p = p * Fraction(1, content)
    return p


def _prem(f: Polynomial, g: Polynomial, v: int) -> Polynomial:
    """Pseudo-remainder of f by g in the variable x_v."""
    dg = _degree_in(g, v)
    g_coeffs = _coeffs_in(g, v)
    lg = g_coeffs[dg]
    while not f.is_zero:
        df = _degree_in(f, v)
        if df < dg:
            break
        lf = _coeffs_in(f, v)[df]
        f = lg * f - lf * _monomial(f.nvars, v, df - dg) * g
        f = _strip_int_content(f)
    return f


def _content_in(p: Polynomial, v: int) -> Polynomial:
    coeffs = list(_coeffs_in(p, v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = _gcd_rec(g, c)
        if g.is_constant and g.constant_value() == 1:
            break
    return g


def _gcd_rec(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero:
        return _make_primitive_integer(b)
    if b.is_zero:
        return _make_primitive_integer(a)

    # shared monomial factor, stripped up front: cheap and very common
    min_a = [min(e[i] for e in a.terms) for i in range(a.nvars)]
    min_b = [min(e[i] for e in b.terms) for i in range(b.nvars)]
    shared = tuple(min(x, y) for x, y in zip(min_a, min_b))
    if any(min_a) or any(min_b):
        a = Polynomial(a.nvars, {tuple(x - y for x, y in zip(e, min_a)): c for e, c in a.terms.items()})
        b = Polynomial(b.nvars, {tuple(x - y for x, y in zip(e, min_b)): c for e, c in b.terms.items()})

    v = None
    for i in reversed(range(a.nvars)):
        if _degree_in(a, i) or _degree_in(b, i):
            v = i
            break

    if v is None:
        g = Polynomial.constant(a.nvars, math.gcd(_int_content(a), _int_content(b)))
    elif _degree_in(a, v) == 0:
        g = _gcd_rec(a, _content_in(b, v))
    elif _degree_in(b, v) == 0:
        g = _gcd_rec(b, _content_in(a, v))
    else:
        cont_a = _content_in(a, v)
        cont_b = _content_in(b, v)
        c = _gcd_rec(cont_a, cont_b)
        f = poly_divexact(a, cont_a)
        h = poly_divexact(b, cont_b)
        if _degree_in(f, v) < _degree_in(h, v):
            f, h = h, f
        while not h.is_zero:
            r = _prem(f, h, v)
            if r.is_zero:
                f, h = h, r
            else:
                f, h = h, poly_divexact(r, _content_in(r, v))
        g = c * poly_divexact(f, _content_in(f, v))
    if any(shared):
        g = g * Polynomial(a.nvars, {shared: Fraction(1)})
    return _make_primitive_integer(g)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd with integer coefficients and positive leading term."""
    a._check(b)
    if a.is_zero and b.is_zero:
        return a
    return _gcd_rec(_make_primitive_integer(a), _make_primitive_integer(b))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero:
        raise DivisionByZero("zero denominator")
    if num.is_zero:
        return Polynomial.zero(num.nvars), Polynomial.one(num.nvars)
    scale = _coeff_lcm_denominator(num) * _coeff_lcm_denominator(den)
    if scale != 1:
        num = num * scale
        den = den * scale
    g = poly_gcd(num, den)
    if not (g.is_constant and g.constant_value() == 1):
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    content = math.gcd(_int_content(num), _int_content(den))
    if content > 1:
        inv = Fraction(1, content)
        num = num * inv
        den = den * inv
    if den.leading()[1] < 0:
        num = -num
        den = -den
    return num, den


class RationalFunction:
    """Canonical quotient of polynomials; the coefficient field."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.one(num.nvars)
        num._check(den)
        num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> RationalFunction:
        rf = object.__new__(cls)
        object.__setattr__(rf, "num", num)
        object.__setattr__(rf, "den", den)
        return rf

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, value) -> RationalFunction:
        c = Fraction(value)
        return cls._raw(
            Polynomial(nvars, {(0,) * nvars: Fraction(c.numerator)}),
            Polynomial.constant(nvars, c.denominator),
        )

    @classmethod
    def zero(cls, nvars: int) -> RationalFunction:
        return cls._raw(Polynomial.zero(nvars), Polynomial.one(nvars))

    @classmethod
    def one(cls, nvars: int) -> RationalFunction:
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> RationalFunction:
        return cls._raw(Polynomial.variable(nvars, index), Polynomial.one(nvars))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> RationalFunction:
        num, den = _normalize(p, Polynomial.one(p.nvars))
        return cls._raw(num, den)

    # -- predicates -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    # -- field operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise DimensionMismatch(
                    f"variable counts differ: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.nvars, other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero:
            return rhs
        if rhs.is_zero:
            return self
        return RationalFunction(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero or rhs.is_zero:
            return RationalFunction.zero(self.nvars)
        # cross-cancel before multiplying to keep intermediates small
        g1 = poly_gcd(self.num, rhs.den)
        g2 = poly_gcd(rhs.num, self.den)
        a = self.num if g1.is_constant else poly_divexact(self.num, g1)
        d = rhs.den if g1.is_constant else poly_divexact(rhs.den, g1)
        c = rhs.num if g2.is_constant else poly_divexact(rhs.num, g2)
        b = self.den if g2.is_constant else poly_divexact(self.den, g2)
        return RationalFunction(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero:
            raise DivisionByZero("inverse of the zero function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __pow__(self, power: int):
        if power < 0:
            return self.inverse() ** (-power)
        result = RationalFunction.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base if power > 1 else base
            power >>= 1
        return result

    def derivative(self, index: int) -> RationalFunction:
        """Exact partial derivative by the quotient rule."""
        if not 0 <= index < self.nvars:
            raise DimensionMismatch(f"variable index {index} out of range")
        dn = self.num.derivative(index)
        dd = self.den.derivative(index)
        if dd.is_zero:
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def __call__(self, point: Sequence) -> Fraction:
        d = self.den(point)
        if d == 0:
            raise PoleError(f"denominator vanishes at {tuple(point)}")
        return self.num(point) / d

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        rhs = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if rhs is None:
            return NotImplemented
        return self.num == rhs.num and self.den == rhs.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        from .expressions import render

        return f"RationalFunction({self.nvars}, {render(self)!r})"


def rf_sum(values: Iterable[RationalFunction], nvars: int) -> RationalFunction:
    total = RationalFunction.zero(nvars)
    for v in values:
        total = total + v
    return total
