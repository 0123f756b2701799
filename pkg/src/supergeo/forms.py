"""Graded alternating tensors: wedge products, insertions, pairings.

A form is a finite sum of basis monomials ``e^I (x) a^J`` where I is a
strictly increasing tuple of even indices and J a non-decreasing tuple of
odd indices (repeats allowed: the odd block is symmetric).  Coefficients
are rational functions, or tuples of them for vector-valued forms.  A
monomial with |I| = s, |J| = l has pair order (s, l): alternating in s even
arguments, symmetric in l odd ones.

Evaluation conventions, pinned by the test suite:

  * the even block evaluates through a determinant, the odd block through a
    permanent, so ``a^1 v a^1`` on (a_1, a_1) gives 2;
  * the symmetric product is concatenate-and-sort with no combinatorial
    normalization factor;
  * moving an even argument left past an odd one flips the sign, even past
    even flips, odd past odd does not.

Forms may mix pair orders (covariant derivatives in odd directions produce
such sums); operations act per monomial.
"""

from __future__ import annotations

from itertools import permutations

from .errors import DimensionMismatch, PairOrderMismatch, ParityError
from .scalars import RationalFunction
from .spaces import EVEN, ODD, SuperInnerProduct, SuperSpaceSpec, SuperVector, pair

FormIndex = tuple[tuple[int, ...], tuple[int, ...]]


def _validate_index(space: SuperSpaceSpec, key: FormIndex) -> FormIndex:
    evens, odds = key
    evens = tuple(evens)
    odds = tuple(odds)
    if any(not 0 <= i < space.even_dim for i in evens):
        raise DimensionMismatch(f"even index out of range in {evens}")
    if any(not 0 <= j < space.odd_dim for j in odds):
        raise DimensionMismatch(f"odd index out of range in {odds}")
    if any(a >= b for a, b in zip(evens, evens[1:])):
        raise DimensionMismatch(f"even indices must strictly increase: {evens}")
    if any(a > b for a, b in zip(odds, odds[1:])):
        raise DimensionMismatch(f"odd indices must be non-decreasing: {odds}")
    return evens, odds


def _index_sort_key(key: FormIndex):
    evens, odds = key
    return (len(evens) + len(odds), len(odds), evens, odds)


class SuperForm:
    """Sum of graded alternating basis monomials with function coefficients."""

    __slots__ = ("space", "nvars", "coeffs", "value_space")

    def __init__(self, space, nvars, coeffs=None, value_space=None):
        clean: dict[FormIndex, object] = {}
        if coeffs:
            for key, value in coeffs.items():
                key = _validate_index(space, key)
                if value_space is None:
                    if not isinstance(value, RationalFunction):
                        raise DimensionMismatch("scalar form coefficient must be a RationalFunction")
                    if value.is_zero:
                        continue
                else:
                    value = tuple(value)
                    if len(value) != value_space.total_dim:
                        raise DimensionMismatch("value vector has the wrong length")
                    if all(c.is_zero for c in value):
                        continue
                clean[key] = value
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "value_space", value_space)

    def __setattr__(self, name, value):
        raise AttributeError("SuperForm is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, space, nvars, value_space=None) -> SuperForm:
        return cls(space, nvars, {}, value_space)

    @classmethod
    def from_function(cls, space, f: RationalFunction) -> SuperForm:
        return cls(space, f.nvars, {((), ()): f})

    @classmethod
    def monomial(cls, space, nvars, evens, odds, coeff=None, value_space=None) -> SuperForm:
        if coeff is None:
            coeff = RationalFunction.one(nvars)
        return cls(space, nvars, {(tuple(evens), tuple(odds)): coeff}, value_space)

    @classmethod
    def even_coframe(cls, space, nvars, index: int) -> SuperForm:
        """The dual basis covector e^index as a (1, 0) form."""
        return cls.monomial(space, nvars, (index,), ())

    @classmethod
    def odd_coframe(cls, space, nvars, index: int) -> SuperForm:
        """The dual basis covector a^index as a (0, 1) form."""
        return cls.monomial(space, nvars, (), (index,))

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def pair_orders(self) -> set[tuple[int, int]]:
        return {(len(i), len(j)) for i, j in self.coeffs}

    @property
    def pair_order(self) -> tuple[int, int] | None:
        """The common (s, l) of all monomials, or None when mixed or zero."""
        orders = self.pair_orders()
        if len(orders) == 1:
            return next(iter(orders))
        return None

    def total_order(self) -> int | None:
        orders = {s + l for s, l in self.pair_orders()}
        if len(orders) == 1:
            return next(iter(orders))
        return None

    def terms_sorted(self):
        for key in sorted(self.coeffs, key=_index_sort_key):
            yield key, self.coeffs[key]

    def _zero_coeff(self):
        z = RationalFunction.zero(self.nvars)
        if self.value_space is None:
            return z
        return (z,) * self.value_space.total_dim

    def _same_kind(self, other: SuperForm) -> None:
        if self.space != other.space or self.nvars != other.nvars:
            raise DimensionMismatch("forms live over different spaces")
        if self.value_space != other.value_space:
            raise DimensionMismatch("forms have different value spaces")

    # -- linear operations -------------------------------------------------

    def __add__(self, other: SuperForm) -> SuperForm:
        if not isinstance(other, SuperForm):
            return NotImplemented
        self._same_kind(other)
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            if key in out:
                out[key] = _cadd(out[key], value)
            else:
                out[key] = value
        return SuperForm(self.space, self.nvars, out, self.value_space)

    def __neg__(self) -> SuperForm:
        return SuperForm(
            self.space,
            self.nvars,
            {k: _cneg(v) for k, v in self.coeffs.items()},
            self.value_space,
        )

    def __sub__(self, other: SuperForm) -> SuperForm:
        if not isinstance(other, SuperForm):
            return NotImplemented
        return self + (-other)

    def scale(self, f) -> SuperForm:
        if isinstance(f, int):
            f = RationalFunction.constant(self.nvars, f)
        return SuperForm(
            self.space,
            self.nvars,
            {k: _cscale(f, v) for k, v in self.coeffs.items()},
            self.value_space,
        )

    def map_coeffs(self, fn) -> SuperForm:
        """Apply fn to every scalar coefficient entry."""
        if self.value_space is None:
            out = {k: fn(v) for k, v in self.coeffs.items()}
        else:
            out = {k: tuple(fn(c) for c in v) for k, v in self.coeffs.items()}
        return SuperForm(self.space, self.nvars, out, self.value_space)

    def component(self, index: int) -> SuperForm:
        """Scalar form holding one component of a vector-valued form."""
        if self.value_space is None:
            raise DimensionMismatch("form is scalar-valued")
        return SuperForm(
            self.space, self.nvars, {k: v[index] for k, v in self.coeffs.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, SuperForm):
            return NotImplemented
        return (
            self.space == other.space
            and self.nvars == other.nvars
            and self.value_space == other.value_space
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(
            (self.space, self.nvars, self.value_space, frozenset(self.coeffs.items()))
        )

    def __repr__(self):
        keys = ", ".join(str(k) for k, _ in self.terms_sorted())
        return f"SuperForm<{keys or '0'}>"


def _cadd(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _cneg(a):
    if isinstance(a, tuple):
        return tuple(-x for x in a)
    return -a


def _cscale(f, a):
    if isinstance(a, tuple):
        return tuple(f * x for x in a)
    return f * a


def _cis_zero(a) -> bool:
    if isinstance(a, tuple):
        return all(x.is_zero for x in a)
    return a.is_zero


def _accumulate(table: dict, key: FormIndex, value) -> None:
    if key in table:
        total = _cadd(table[key], value)
        if _cis_zero(total):
            del table[key]
        else:
            table[key] = total
    elif not _cis_zero(value):
        table[key] = value


# ---------------------------------------------------------------------------
# merging helpers
# ---------------------------------------------------------------------------


def merge_even(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two increasing index tuples; returns (sign, merged) or None."""
    if set(a) & set(b):
        return None
    merged = a + b
    sign = 1
    # count inversions between the two blocks
    for x in a:
        for y in b:
            if x > y:
                sign = -sign
    return sign, tuple(sorted(merged))


def merge_odd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b))


def _det(matrix: list[list[RationalFunction]], nvars: int) -> RationalFunction:
    size = len(matrix)
    if size == 0:
        return RationalFunction.one(nvars)
    total = RationalFunction.zero(nvars)
    for perm in permutations(range(size)):
        sign = _perm_sign(perm)
        prod = matrix[0][perm[0]]
        for i in range(1, size):
            if prod.is_zero:
                break
            prod = prod * matrix[i][perm[i]]
        total = total + prod if sign > 0 else total - prod
    return total


def _perm(matrix: list[list[RationalFunction]], nvars: int) -> RationalFunction:
    size = len(matrix)
    if size == 0:
        return RationalFunction.one(nvars)
    total = RationalFunction.zero(nvars)
    for perm in permutations(range(size)):
        prod = matrix[0][perm[0]]
        for i in range(1, size):
            if prod.is_zero:
                break
            prod = prod * matrix[i][perm[i]]
        total = total + prod
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def evaluate_form(form: SuperForm, vectors):
    """Evaluate on a list of vectors; mixed vectors expand bilinearly.

    Returns a RationalFunction, or a tuple of them for vector-valued forms.
    """
    vectors = list(vectors)
    orders = {s + l for s, l in form.pair_orders()}
    if orders and orders != {len(vectors)}:
        raise PairOrderMismatch(
            f"form of total order {sorted(orders)} evaluated on {len(vectors)} vectors"
        )
    for v in vectors:
        if v.space != form.space:
            raise DimensionMismatch("vector does not match the form's space")
    return _evaluate(form, vectors)


def _evaluate(form: SuperForm, vectors):
    zero = form._zero_coeff()
    for i, v in enumerate(vectors):
        if v.parity is None:
            left = _evaluate(form, vectors[:i] + [v.even_part()] + vectors[i + 1 :])
            right = _evaluate(form, vectors[:i] + [v.odd_part()] + vectors[i + 1 :])
            return _cadd(left, right)
    evens = [v for v in vectors if v.parity == EVEN]
    odds = [v for v in vectors if v.parity == ODD]
    sign = 1
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if vectors[i].parity == ODD and vectors[j].parity == EVEN:
                sign = -sign
    total = zero
    for (ik, jk), coeff in form.coeffs.items():
        if len(ik) != len(evens) or len(jk) != len(odds):
            continue
        det = _det([[v.even[a] for v in evens] for a in ik], form.nvars)
        if det.is_zero:
            continue
        per = _perm([[v.odd[b] for v in odds] for b in jk], form.nvars)
        if per.is_zero:
            continue
        factor = det * per
        total = _cadd(total, _cscale(factor, coeff))
    if sign < 0:
        total = _cneg(total)
    return total


# ---------------------------------------------------------------------------
# wedge product
# ---------------------------------------------------------------------------


def wedge(a: SuperForm, b: SuperForm, value_product=None, value_space=None) -> SuperForm:
    """Exterior product; pair orders add componentwise.

    Scalar-by-vector products need nothing extra.  For two vector-valued
    operands a parity-preserving ``value_product(u, v)`` and the resulting
    ``value_space`` must be supplied.
    """
    if a.space != b.space or a.nvars != b.nvars:
        raise DimensionMismatch("forms live over different spaces")
    if a.value_space is not None and b.value_space is not None:
        if value_product is None or value_space is None:
            raise ValueError("wedge of two vector-valued forms needs a value product")
        out_values = value_space
    elif a.value_space is not None:
        out_values = a.value_space
    else:
        out_values = b.value_space
    table: dict[FormIndex, object] = {}
    for (ia, ja), ca in a.coeffs.items():
        for (ib, jb), cb in b.coeffs.items():
            merged = merge_even(ia, ib)
            if merged is None:
                continue
            sign, evens = merged
            odds = merge_odd(ja, jb)
            if a.value_space is not None and b.value_space is not None:
                value = value_product(ca, cb)
            elif a.value_space is not None:
                value = _cscale(cb, ca)
            elif b.value_space is not None:
                value = _cscale(ca, cb)
            else:
                value = ca * cb
            if sign < 0:
                value = _cneg(value)
            _accumulate(table, (evens, odds), value)
    return SuperForm(a.space, a.nvars, table, out_values)


def wedge_many(forms) -> SuperForm:
    forms = list(forms)
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


# ---------------------------------------------------------------------------
# insertion
# ---------------------------------------------------------------------------


def insert(v: SuperVector, form: SuperForm) -> SuperForm:
    """Insertion i_v for a homogeneous vector (zero on order-0 forms)."""
    if v.space != form.space:
        raise DimensionMismatch("vector does not match the form's space")
    parity = v.parity
    if parity is None:
        raise ParityError("insertion needs a homogeneous vector")
    table: dict[FormIndex, object] = {}
    if parity == EVEN:
        for (ik, jk), coeff in form.coeffs.items():
            for pos, p in enumerate(ik):
                comp = v.even[p]
                if comp.is_zero:
                    continue
                value = _cscale(comp, coeff)
                if pos % 2:
                    value = _cneg(value)
                _accumulate(table, (ik[:pos] + ik[pos + 1 :], jk), value)
    else:
        for (ik, jk), coeff in form.coeffs.items():
            seen = set()
            for pos, q in enumerate(jk):
                if q in seen:
                    continue
                seen.add(q)
                comp = v.odd[q]
                if comp.is_zero:
                    continue
                mult = jk.count(q)
                value = _cscale(comp * mult, coeff)
                _accumulate(table, (ik, jk[:pos] + jk[pos + 1 :]), value)
    return SuperForm(form.space, form.nvars, table, form.value_space)


def insert_eta(g: SuperInnerProduct, eta: SuperForm, form: SuperForm) -> SuperForm:
    """Composite insertion i_eta for a pure even-block form eta.

    For a monomial eta = b_1 ^ ... ^ b_k the covectors are inserted first
    to last, each through its metric dual vector.
    """
    result = SuperForm.zero(form.space, form.nvars, form.value_space)
    for (ik, jk), coeff in eta.coeffs.items():
        if jk:
            raise PairOrderMismatch("composite insertion expects a pure even-block form")
        piece = form
        for index in ik:
            piece = insert(flat(g, SuperForm.even_coframe(form.space, form.nvars, index)), piece)
        if isinstance(coeff, tuple):
            raise DimensionMismatch("composite insertion expects a scalar-valued eta")
        result = result + piece.scale(coeff)
    return result


# ---------------------------------------------------------------------------
# musical isomorphisms
# ---------------------------------------------------------------------------


def sharp(g: SuperInnerProduct, v: SuperVector) -> SuperForm:
    """The covector u -> <v, u> as a (1,0) + (0,1) form."""
    if v.space != g.space:
        raise DimensionMismatch("vector does not match the inner product space")
    nvars = v.nvars
    table: dict[FormIndex, RationalFunction] = {}
    for k in range(g.space.even_dim):
        acc = RationalFunction.zero(nvars)
        for i, vi in enumerate(v.even):
            if not vi.is_zero:
                acc = acc + vi * g.even_gram[i][k]
        if not acc.is_zero:
            table[((k,), ())] = acc
    for q in range(g.space.odd_dim):
        acc = RationalFunction.zero(nvars)
        for j, vj in enumerate(v.odd):
            if not vj.is_zero:
                acc = acc + vj * g.odd_gram[j][q]
        if not acc.is_zero:
            table[((), (q,))] = acc
    return SuperForm(g.space, nvars, table)


def flat(g: SuperInnerProduct, covector: SuperForm) -> SuperVector:
    """Inverse of sharp: the vector whose pairing reproduces the covector."""
    if covector.space != g.space:
        raise DimensionMismatch("covector does not match the inner product space")
    if any(s + l != 1 for s, l in covector.pair_orders()):
        raise PairOrderMismatch("flat expects an order-1 form")
    nvars = covector.nvars
    zero = RationalFunction.zero(nvars)
    even_comps = [covector.coeffs.get(((k,), ()), zero) for k in range(g.space.even_dim)]
    odd_comps = [covector.coeffs.get(((), (q,)), zero) for q in range(g.space.odd_dim)]
    even = (
        tuple(sum_entries(g.even_inverse[i], even_comps, nvars) for i in range(g.space.even_dim))
        if g.space.even_dim
        else ()
    )
    odd = (
        tuple(-sum_entries(g.odd_inverse[i], odd_comps, nvars) for i in range(g.space.odd_dim))
        if g.space.odd_dim
        else ()
    )
    return SuperVector(g.space, even, odd)


def sum_entries(row, comps, nvars) -> RationalFunction:
    acc = RationalFunction.zero(nvars)
    for r, c in zip(row, comps):
        if not (r.is_zero or c.is_zero):
            acc = acc + r * c
    return acc


# ---------------------------------------------------------------------------
# pairing of forms
# ---------------------------------------------------------------------------


def lambda_vee_pairing(
    g: SuperInnerProduct,
    a: SuperForm,
    b: SuperForm,
    value_gram: SuperInnerProduct | None = None,
) -> RationalFunction:
    """Metric pairing <a, b>: determinant on even blocks, permanent on odd.

    Monomials of different pair orders are orthogonal.  Vector-valued forms
    additionally contract their values through ``value_gram``.
    """
    if a.space != g.space or b.space != g.space:
        raise DimensionMismatch("forms do not match the inner product space")
    if (a.value_space is None) != (b.value_space is None):
        raise DimensionMismatch("cannot pair scalar and vector-valued forms")
    if a.value_space is not None and value_gram is None:
        raise ValueError("pairing vector-valued forms needs a value Gram")
    nvars = a.nvars
    ge = g.even_covector_gram
    go = g.odd_covector_gram
    total = RationalFunction.zero(nvars)
    for (ia, ja), ca in a.coeffs.items():
        for (ib, jb), cb in b.coeffs.items():
            if len(ia) != len(ib) or len(ja) != len(jb):
                continue
            det = _det([[ge[x][y] for y in ib] for x in ia], nvars)
            if det.is_zero:
                continue
            per = _perm([[go[x][y] for y in jb] for x in ja], nvars)
            if per.is_zero:
                continue
            if a.value_space is None:
                coefficient = ca * cb
            else:
                coefficient = pair(
                    value_gram,
                    SuperVector(
                        a.value_space,
                        ca[: a.value_space.even_dim],
                        ca[a.value_space.even_dim :],
                    ),
                    SuperVector(
                        b.value_space,
                        cb[: b.value_space.even_dim],
                        cb[b.value_space.even_dim :],
                    ),
                )
            total = total + det * per * coefficient
    return total


# ---------------------------------------------------------------------------
# simple tensors
# ---------------------------------------------------------------------------


class SimpleTensor:
    """A product (alternating part) (x) (symmetric part), kept unexpanded.

    ``value`` may hold a constant section of a value space, making the
    expansion vector-valued.
    """

    __slots__ = ("alternating", "symmetric", "value", "value_space")

    def __init__(self, alternating: SuperForm, symmetric: SuperForm, value=None, value_space=None):
        if any(l for _, l in alternating.pair_orders()):
            raise PairOrderMismatch("alternating part must have pair orders (s, 0)")
        if any(s for s, _ in symmetric.pair_orders()):
            raise PairOrderMismatch("symmetric part must have pair orders (0, l)")
        if (value is None) != (value_space is None):
            raise DimensionMismatch("value and value_space go together")
        object.__setattr__(self, "alternating", alternating)
        object.__setattr__(self, "symmetric", symmetric)
        object.__setattr__(self, "value", tuple(value) if value is not None else None)
        object.__setattr__(self, "value_space", value_space)

    def __setattr__(self, name, value):
        raise AttributeError("SimpleTensor is immutable")

    def expand(self) -> SuperForm:
        form = wedge(self.alternating, self.symmetric)
        if self.value is None:
            return form
        return SuperForm(
            form.space,
            form.nvars,
            {k: tuple(c * w for w in self.value) for k, c in form.coeffs.items()},
            self.value_space,
        )

    def evaluate_sorted(self, even_vectors, odd_vectors):
        """Direct product evaluation on (evens..., odds...) argument order."""
        a = evaluate_form(self.alternating, list(even_vectors))
        b = evaluate_form(self.symmetric, list(odd_vectors))
        return a * b
