"""Exact arithmetic over rationals and real algebraic numbers.

Every comparison is decided exactly.  Rationals use plain fraction
arithmetic.  An algebraic number carries a squarefree integer polynomial
together with an isolating interval holding exactly one of its real
roots; derived quantities are polynomial expressions in that root.
A sign query first rules zero in or out with a polynomial gcd and a
Sturm root count, then refines the isolating interval by bisection
until interval evaluation resolves the sign.  No floating point is
involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd, lcm as _int_lcm
from typing import Iterable, Sequence, Union

RatLike = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Safety cap on bisection steps inside a single sign query.  A correct
# query always terminates long before this; the cap turns a latent logic
# bug into a loud error instead of a hang.
_REFINE_CAP = 4096


class ValidationError(ValueError):
    """Raised for malformed exact-number specifications."""


class IncompatibleFieldsError(ValueError):
    """Raised when arithmetic would mix two unrelated algebraic generators."""


# ---------------------------------------------------------------------------
# Dense polynomial helpers over Fraction, coefficients lowest degree first.
# ---------------------------------------------------------------------------


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _padd(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pneg(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(-c for c in p)


def _psub(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return _padd(p, _pneg(q))


def _pmul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not p or not q:
        return ()
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pdivmod(
    p: Sequence[Fraction], q: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [_ZERO] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    for i in range(len(rem) - len(q), -1, -1):
        c = rem[i + len(q) - 1] / lead
        if c == 0:
            continue
        quo[i] = c
        for j, b in enumerate(q):
            rem[i + j] -= c * b
    return _trim(quo), _trim(rem)


def _pmod(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return _pdivmod(p, q)[1]


def _pmonic(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = _trim(p)
    if not p:
        return ()
    lead = p[-1]
    return tuple(c / lead for c in p)


def _pgcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a, b = _trim(p), _trim(q)
    while b:
        a, b = b, _pmod(a, b)
    return _pmonic(a)


def _pxgcd(
    p: Sequence[Fraction], q: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Extended Euclid: returns (g, s, t) monic with s*p + t*q = g."""
    a, b = _trim(p), _trim(q)
    sa, sb = (_ONE,), ()
    ta, tb = (), (_ONE,)
    while b:
        quo, rem = _pdivmod(a, b)
        a, b = b, rem
        sa, sb = sb, _psub(sa, _pmul(quo, sb))
        ta, tb = tb, _psub(ta, _pmul(quo, tb))
    if not a:
        return (), sa, ta
    lead = a[-1]
    inv = 1 / lead
    return (
        tuple(c * inv for c in a),
        tuple(c * inv for c in sa),
        tuple(c * inv for c in ta),
    )


def _pderiv(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return _trim([p[i] * i for i in range(1, len(p))])


def _peval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pinterval_eval(
    p: Sequence[Fraction], lo: Fraction, hi: Fraction
) -> tuple[Fraction, Fraction]:
    """Exact interval Horner evaluation of p over [lo, hi]."""
    alo, ahi = _ZERO, _ZERO
    for c in reversed(p):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


def _sturm_chain(p: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    chain = [_trim(p)]
    d = _pderiv(p)
    if d:
        chain.append(d)
        while True:
            rem = _pmod(chain[-2], chain[-1])
            if not rem:
                break
            chain.append(_pneg(rem))
    return chain


def _sign_changes(values: Iterable[Fraction]) -> int:
    count = 0
    prev = 0
    for v in values:
        s = (v > 0) - (v < 0)
        if s == 0:
            continue
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def _count_roots(
    chain: Sequence[Sequence[Fraction]], lo: Fraction, hi: Fraction
) -> int:
    """Distinct roots of chain[0] in the open interval (lo, hi).

    Requires chain[0] nonzero at both endpoints.
    """
    p = chain[0]
    if _peval(p, lo) == 0 or _peval(p, hi) == 0:
        raise ValueError("root count requires endpoints that are not roots")
    vlo = _sign_changes(_peval(q, lo) for q in chain)
    vhi = _sign_changes(_peval(q, hi) for q in chain)
    return vlo - vhi


# ---------------------------------------------------------------------------
# Integer polynomials.
# ---------------------------------------------------------------------------


class IntPoly:
    """Integer-coefficient polynomial, coefficients listed lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise ValidationError(f"integer coefficient expected, got {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __reduce__(self):
        return (IntPoly, (list(self.coeffs),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        if isinstance(x, ExactReal):
            acc: ExactReal = ExactReal(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, int):
            x = Fraction(x)
        if not isinstance(x, Fraction):
            raise TypeError(f"cannot evaluate at {x!r}")
        return _peval([Fraction(c) for c in self.coeffs], x)

    def derivative(self) -> "IntPoly":
        return IntPoly([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def _fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self.coeffs)

    def squarefree_part(self) -> "IntPoly":
        """The product of the distinct irreducible factors, primitive with
        a positive leading coefficient."""
        if self.is_zero:
            return self
        fr = self._fractions()
        g = _pgcd(fr, _pderiv(fr))
        quo, rem = _pdivmod(fr, g)
        assert not rem
        return _primitive_int_poly(quo)

    def __add__(self, other):
        other = _as_int_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_int_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_int_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_int_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                term = f"{mag}x" if i == 1 else f"{mag}x^{i}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


def _as_int_poly(v) -> IntPoly | None:
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly([v])
    return None


def _primitive_int_poly(coeffs: Sequence[Fraction]) -> IntPoly:
    """Scale rational coefficients to a primitive integer polynomial with a
    positive leading coefficient."""
    cs = _trim(coeffs)
    if not cs:
        return IntPoly([])
    denom = _int_lcm(*(c.denominator for c in cs))
    ints = [int(c * denom) for c in cs]
    g = _int_gcd(*ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(ints)


# ---------------------------------------------------------------------------
# Number fields: one real root of a squarefree integer polynomial.
# ---------------------------------------------------------------------------


class _Field:
    """A real algebraic generator: squarefree minimal polynomial plus a
    shrinking isolating interval.

    The interval only ever shrinks around the same root, so sharing one
    cache between all values of the field is sound.  If a bisection
    midpoint happens to hit the root exactly the interval collapses to a
    point and every sign query becomes a rational evaluation.
    """

    __slots__ = ("minpoly", "mp_fr", "chain", "lo", "hi", "orig_lo", "orig_hi")

    def __init__(self, minpoly: IntPoly, lo: Fraction, hi: Fraction):
        self.minpoly = minpoly
        self.mp_fr = minpoly._fractions()
        self.chain = _sturm_chain(self.mp_fr)
        self.lo = lo
        self.hi = hi
        self.orig_lo = lo
        self.orig_hi = hi

    def refine(self) -> None:
        if self.lo == self.hi:
            return
        mid = (self.lo + self.hi) / 2
        v = _peval(self.mp_fr, mid)
        if v == 0:
            self.lo = self.hi = mid
            return
        if (_peval(self.mp_fr, self.lo) > 0) != (v > 0):
            self.hi = mid
        else:
            self.lo = mid

    def same_root(self, other: "_Field") -> bool:
        if self is other:
            return True
        if self.minpoly != other.minpoly:
            return False
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo >= hi:
            # Disjoint (or touching) isolating intervals hold distinct roots
            # unless both have collapsed onto the same point.
            return self.lo == self.hi and other.lo == other.hi and self.lo == other.lo
        if _peval(self.mp_fr, lo) == 0 or _peval(self.mp_fr, hi) == 0:
            # A root sits on the overlap boundary; refine one side and retry.
            self.refine()
            other.refine()
            return self.same_root(other)
        return _count_roots(self.chain, lo, hi) == 1


def _validated_field(poly: IntPoly, lo: Fraction, hi: Fraction) -> tuple[str, object]:
    """Validate an algebraic spec.  Returns ("rational", value) when the
    squarefree part is linear, else ("field", _Field)."""
    if poly.is_zero or poly.degree < 1:
        raise ValidationError("algebraic spec needs a nonconstant polynomial")
    if lo >= hi:
        raise ValidationError("isolating interval must satisfy lo < hi")
    sf = poly.squarefree_part()
    fr = sf._fractions()
    if _peval(fr, lo) == 0 or _peval(fr, hi) == 0:
        raise ValidationError(
            "isolating interval endpoint is a root; shrink the interval"
        )
    chain = _sturm_chain(fr)
    count = _count_roots(chain, lo, hi)
    if count != 1:
        raise ValidationError(
            f"isolating interval contains {count} roots, expected exactly 1"
        )
    if sf.degree == 1:
        c0, c1 = sf.coeffs
        return "rational", Fraction(-c0, c1)
    return "field", _Field(sf, lo, hi)


# ---------------------------------------------------------------------------
# Exact real numbers.
# ---------------------------------------------------------------------------


class ExactReal:
    """An exact real number: a rational, or an element of Q(theta) for an
    algebraic generator theta.

    Construct rationals with ``ExactReal(3)``, ``ExactReal("2/3")`` or
    ``ExactReal(Fraction(1, 2))``, and generators with
    :meth:`ExactReal.algebraic`.  Arithmetic mixing a rational with an
    algebraic stays in the algebraic's field; mixing two unrelated
    generators raises :class:`IncompatibleFieldsError`.
    """

    __slots__ = ("_rat", "_field", "_coeffs")

    def __init__(self, value: RatLike | str = 0):
        if isinstance(value, ExactReal):
            object.__setattr__(self, "_rat", value._rat)
            object.__setattr__(self, "_field", value._field)
            object.__setattr__(self, "_coeffs", value._coeffs)
            return
        if isinstance(value, bool) or not isinstance(value, (int, Fraction, str)):
            raise TypeError(f"cannot build an ExactReal from {value!r}")
        try:
            rat = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"malformed rational {value!r}") from exc
        object.__setattr__(self, "_rat", rat)
        object.__setattr__(self, "_field", None)
        object.__setattr__(self, "_coeffs", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactReal is immutable")

    def __reduce__(self):
        if self._field is None:
            return (ExactReal, (self._rat,))
        f = self._field
        return (
            _rebuild_algebraic,
            (list(f.minpoly.coeffs), f.orig_lo, f.orig_hi, list(self._coeffs)),
        )

    @staticmethod
    def algebraic(
        poly: IntPoly | Sequence[int],
        interval: tuple[RatLike | str, RatLike | str],
    ) -> "ExactReal":
        """The unique root of ``poly`` inside ``interval``.

        The polynomial is replaced by its squarefree part; the interval
        must isolate exactly one real root.  A linear squarefree part
        yields a plain rational.
        """
        if not isinstance(poly, IntPoly):
            poly = IntPoly(poly)
        lo, hi = (Fraction(v) for v in interval)
        kind, payload = _validated_field(poly, lo, hi)
        if kind == "rational":
            return ExactReal(payload)
        return _alg(payload, (_ZERO, _ONE))

    # -- basic queries ------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self._field is None

    def as_fraction(self) -> Fraction:
        if self._field is not None:
            raise ValueError("not a rational number")
        return self._rat

    def sign(self) -> int:
        if self._field is None:
            r = self._rat
            return (r > 0) - (r < 0)
        return _elem_sign(self._field, self._coeffs)

    def __bool__(self) -> bool:
        return self.sign() != 0

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        if self._field is None:
            return ExactReal(-self._rat)
        return _alg(self._field, _pneg(self._coeffs))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        pair = _coerce(self, other)
        if pair is None:
            return NotImplemented
        if pair[0] == "rat":
            return ExactReal(pair[1] + pair[2])
        field, a, b = pair[1], pair[2], pair[3]
        return _alg(field, _padd(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        pair = _coerce(self, other)
        if pair is None:
            return NotImplemented
        if pair[0] == "rat":
            return ExactReal(pair[1] - pair[2])
        field, a, b = pair[1], pair[2], pair[3]
        return _alg(field, _psub(a, b))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        pair = _coerce(self, other)
        if pair is None:
            return NotImplemented
        if pair[0] == "rat":
            return ExactReal(pair[1] * pair[2])
        field, a, b = pair[1], pair[2], pair[3]
        return _alg(field, _pmod(_pmul(a, b), field.mp_fr))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = _coerce(self, other)
        if pair is None:
            return NotImplemented
        if pair[0] == "rat":
            if pair[2] == 0:
                raise ZeroDivisionError("division by zero")
            return ExactReal(pair[1] / pair[2])
        field, a, b = pair[1], pair[2], pair[3]
        return _alg(field, _pmod(_pmul(a, _field_inverse(field, b)), field.mp_fr))

    def __rtruediv__(self, other):
        return ExactReal(other) / self if isinstance(other, (int, Fraction)) else NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = ExactReal(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        c = _try_compare(self, other)
        return NotImplemented if c is None else c == 0

    def __ne__(self, other):
        c = _try_compare(self, other)
        return NotImplemented if c is None else c != 0

    def __lt__(self, other):
        c = _try_compare(self, other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = _try_compare(self, other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = _try_compare(self, other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = _try_compare(self, other)
        return NotImplemented if c is None else c >= 0

    __hash__ = None  # semantic equality across representations; not hashable

    # -- approximation and serialization -------------------------------------

    def approximate(self, eps: RatLike | str = Fraction(1, 10**12)) -> Fraction:
        """A rational within eps of the exact value.  Deterministic: the
        bisection always restarts from the construction-time interval."""
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self._field is None:
            return self._rat
        lo, hi = _value_interval(self._field, self._coeffs, eps)
        return (lo + hi) / 2

    def isolate(self) -> tuple[IntPoly, Fraction, Fraction]:
        """A canonical description: the squarefree primitive annihilating
        polynomial of least degree together with a rational interval
        isolating this value among its roots."""
        if self._field is None:
            r = self._rat
            return IntPoly([-r.numerator, r.denominator]), r, r
        ann = _annihilating_poly(self._field, self._coeffs)
        if ann.degree == 1:
            c0, c1 = ann.coeffs
            r = Fraction(-c0, c1)
            return ann, r, r
        ann_fr = ann._fractions()
        chain = _sturm_chain(ann_fr)
        eps = Fraction(1, 16)
        for _ in range(_REFINE_CAP):
            lo, hi = _value_interval(self._field, self._coeffs, eps)
            if (
                _peval(ann_fr, lo) != 0
                and _peval(ann_fr, hi) != 0
                and _count_roots(chain, lo, hi) == 1
            ):
                return ann, lo, hi
            eps /= 16
        raise RuntimeError("failed to isolate an algebraic value")

    def to_json(self):
        """A JSON-ready exact form: string "p/q" for rationals, else an
        object with the annihilating polynomial and an isolating interval."""
        if self._field is None:
            return str(self._rat)
        ann, lo, hi = self.isolate()
        if lo == hi:
            return str(lo)
        return {
            "poly": list(ann.coeffs),
            "interval": [str(lo), str(hi)],
        }

    def __repr__(self):
        if self._field is None:
            return f"ExactReal({str(self._rat)!r})"
        return f"<ExactReal {self!s}>"

    def __str__(self):
        if self._field is None:
            return str(self._rat)
        data = self.to_json()
        if isinstance(data, str):
            return data
        return f"root of {IntPoly(data['poly'])} in [{data['interval'][0]}, {data['interval'][1]}]"


def _rebuild_algebraic(mp_coeffs, lo, hi, elem_coeffs) -> ExactReal:
    """Pickle support: rebuild a field element.  The rebuilt generator
    lives in a fresh field object; same-root detection reunifies it with
    any surviving sibling during arithmetic."""
    generator = ExactReal.algebraic(IntPoly(mp_coeffs), (lo, hi))
    if generator._field is None:
        return ExactReal(_peval(tuple(elem_coeffs), generator._rat))
    return _alg(generator._field, tuple(elem_coeffs))


def _alg(field: _Field, coeffs: Sequence[Fraction]) -> ExactReal:
    cs = _trim(coeffs)
    if field.lo == field.hi:
        return ExactReal(_peval(cs, field.lo))
    if len(cs) <= 1:
        return ExactReal(cs[0] if cs else _ZERO)
    out = ExactReal.__new__(ExactReal)
    object.__setattr__(out, "_rat", None)
    object.__setattr__(out, "_field", field)
    object.__setattr__(out, "_coeffs", cs)
    return out


def _coerce(a: ExactReal, b):
    """Normalize an operand pair: ("rat", fa, fb) or ("alg", field, ca, cb)."""
    if isinstance(b, (int, Fraction)) and not isinstance(b, bool):
        b = ExactReal(b)
    elif not isinstance(b, ExactReal):
        return None
    if a._field is None and b._field is None:
        return ("rat", a._rat, b._rat)
    if a._field is not None and b._field is not None:
        if not a._field.same_root(b._field):
            raise IncompatibleFieldsError(
                "cannot mix two unrelated algebraic generators; "
                "express both values in one field"
            )
        return ("alg", a._field, a._coeffs, b._coeffs)
    if a._field is not None:
        return ("alg", a._field, a._coeffs, (b._rat,))
    return ("alg", b._field, (a._rat,), b._coeffs)


def _try_compare(a: ExactReal, b) -> int | None:
    try:
        pair = _coerce(a, b)
    except IncompatibleFieldsError:
        return _cross_compare(a, b)
    if pair is None:
        return None
    if pair[0] == "rat":
        fa, fb = pair[1], pair[2]
        return (fa > fb) - (fa < fb)
    field, ca, cb = pair[1], pair[2], pair[3]
    return _elem_sign(field, _psub(ca, cb))


def _cross_compare(a: ExactReal, b: ExactReal) -> int:
    """Compare values living in unrelated fields.

    Enclosures are shrunk until they separate; equality is certified by
    finding a root of gcd(ann_a, ann_b) inside both isolating intervals,
    which pins both values to the same algebraic number.
    """
    ann_a, alo, ahi = a.isolate()
    ann_b, blo, bhi = b.isolate()
    if alo == ahi:
        return compare(ExactReal(alo), b)
    if blo == bhi:
        return -compare(ExactReal(blo), a)
    g = _pgcd(ann_a._fractions(), ann_b._fractions())
    gchain = _sturm_chain(g) if len(g) > 1 else None
    eps = Fraction(1, 16)
    for _ in range(_REFINE_CAP):
        a1, a2 = _value_interval(a._field, a._coeffs, eps)
        b1, b2 = _value_interval(b._field, b._coeffs, eps)
        if a2 < b1:
            return -1
        if b2 < a1:
            return 1
        if gchain is not None and alo < a1 and a2 < ahi and blo < b1 and b2 < bhi:
            lo, hi = max(a1, b1), min(a2, b2)
            settled = True
            for endpoint in (lo, hi):
                if _peval(g, endpoint) == 0:
                    if a == ExactReal(endpoint) and b == ExactReal(endpoint):
                        return 0
                    settled = False  # a stray root sits on the boundary
            if settled and lo < hi and _count_roots(gchain, lo, hi) >= 1:
                # That root of both annihilators lies inside both isolating
                # intervals, so it equals a and b simultaneously.
                return 0
        eps /= 16
    raise RuntimeError("cross-field comparison failed to converge")


def compare(a, b) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if not isinstance(a, ExactReal):
        a = ExactReal(a)
    c = _try_compare(a, b)
    if c is None:
        raise TypeError(f"cannot compare ExactReal with {b!r}")
    return c


def _elem_sign(field: _Field, coeffs: Sequence[Fraction]) -> int:
    cs = _trim(coeffs)
    if not cs:
        return 0
    if field.lo == field.hi:
        v = _peval(cs, field.lo)
        return (v > 0) - (v < 0)
    if len(cs) == 1:
        v = cs[0]
        return (v > 0) - (v < 0)
    # Zero test: the value vanishes iff gcd(p, minpoly) has the generator
    # as a root, i.e. has exactly one root in the isolating interval.
    g = _pgcd(cs, field.mp_fr)
    if len(g) > 1:
        gchain = _sturm_chain(g)
        # Roots of g are roots of the minpoly, so the interval endpoints
        # (never roots of the minpoly) are safe evaluation points.
        if _count_roots(gchain, field.lo, field.hi) == 1:
            return 0
    for _ in range(_REFINE_CAP):
        vlo, vhi = _pinterval_eval(cs, field.lo, field.hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        field.refine()
        if field.lo == field.hi:
            v = _peval(cs, field.lo)
            return (v > 0) - (v < 0)
    raise RuntimeError("sign query failed to converge; internal invariant broken")


def _field_inverse(field: _Field, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    cs = _trim(coeffs)
    if _elem_sign(field, cs) == 0:
        raise ZeroDivisionError("division by zero")
    # With a merely squarefree modulus the element can share a factor with
    # it while still being nonzero at the generator.  Invert modulo the
    # complementary factor, which is coprime to the element.
    g = _pgcd(cs, field.mp_fr)
    modulus = field.mp_fr
    if len(g) > 1:
        modulus, rem = _pdivmod(field.mp_fr, g)
        assert not rem
    gg, s, _t = _pxgcd(cs, modulus)
    assert len(gg) == 1, "inverse modulus is not coprime to the element"
    inv_lead = 1 / gg[0]
    return _trim([c * inv_lead for c in s])


def _value_interval(
    field: _Field, coeffs: Sequence[Fraction], eps: Fraction
) -> tuple[Fraction, Fraction]:
    """A width-<eps rational enclosure of a field element, derived by
    deterministic bisection from the construction-time interval."""
    lo, hi = field.orig_lo, field.orig_hi
    fr = field.mp_fr
    slo = _peval(fr, lo) > 0
    for _ in range(_REFINE_CAP):
        vlo, vhi = _pinterval_eval(coeffs, lo, hi)
        if vhi - vlo < eps:
            return vlo, vhi
        mid = (lo + hi) / 2
        v = _peval(fr, mid)
        if v == 0:
            x = _peval(coeffs, mid)
            return x, x
        if (v > 0) == slo:
            lo = mid
        else:
            hi = mid
    raise RuntimeError("value enclosure failed to converge")


def _annihilating_poly(field: _Field, coeffs: Sequence[Fraction]) -> IntPoly:
    """The least-degree squarefree primitive integer polynomial vanishing
    at the given field element, found as a linear dependency among its
    powers reduced modulo the minimal polynomial."""
    d = len(field.mp_fr) - 1
    # rows[i] holds the coefficient vector of e^i; eliminate incrementally.
    basis: list[tuple[list[Fraction], list[Fraction]]] = []  # (vector, combo)
    power = [_ONE] + [_ZERO] * (d - 1)
    e = list(_trim(coeffs)) + [_ZERO] * (d - len(_trim(coeffs)))
    for i in range(d + 1):
        vec = list(power)
        combo = [_ZERO] * (d + 1)
        combo[i] = _ONE
        for bvec, bcombo in basis:
            pivot = next((k for k, c in enumerate(bvec) if c != 0))
            factor = vec[pivot] / bvec[pivot]
            if factor != 0:
                for k in range(d):
                    vec[k] -= factor * bvec[k]
                for k in range(d + 1):
                    combo[k] -= factor * bcombo[k]
        if all(c == 0 for c in vec):
            poly = _primitive_int_poly(combo)
            return poly.squarefree_part()
        basis.append((vec, combo))
        nxt = _pmod(_pmul(tuple(power), tuple(e)), field.mp_fr)
        power = list(nxt) + [_ZERO] * (d - len(nxt))
    raise RuntimeError("power basis produced no dependency; internal error")


# ---------------------------------------------------------------------------
# Parsing and formatting.
# ---------------------------------------------------------------------------


def sign_at(poly: IntPoly, x: ExactReal) -> int:
    """The exact sign of poly(x): -1, 0 or 1."""
    if not isinstance(poly, IntPoly):
        raise TypeError("sign_at expects an IntPoly")
    if not isinstance(x, ExactReal):
        x = ExactReal(x)
    if x._field is None:
        v = poly(x._rat)
        return (v > 0) - (v < 0)
    composed = _compose_mod(poly._fractions(), x._coeffs, x._field.mp_fr)
    return _elem_sign(x._field, composed)


def _compose_mod(
    p: Sequence[Fraction], inner: Sequence[Fraction], modulus: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """p(inner) reduced modulo modulus, by Horner over the quotient ring."""
    acc: tuple[Fraction, ...] = ()
    for c in reversed(_trim(p)):
        acc = _pmod(_padd(_pmul(acc, inner), (c,)), modulus)
    return acc


def parse_exact(data, field: ExactReal | None = None) -> ExactReal:
    """Parse an exact number from its JSON form.

    Accepts a rational string like "2/3" (decimal strings such as "0.6"
    also work), an object {"poly": [c0, c1, ...], "interval": [lo, hi]}
    describing the unique root of the polynomial in the interval, or an
    object {"coeffs": [c0, c1, ...]} giving a polynomial expression in a
    supplied generator ``field``.
    """
    if isinstance(data, ExactReal):
        return data
    if isinstance(data, (str, int)):
        return ExactReal(data)
    if isinstance(data, dict):
        if "coeffs" in data:
            if field is None:
                raise ValidationError(
                    '{"coeffs": ...} requires a field generator in context'
                )
            value = ExactReal(0)
            for i, c in enumerate(data["coeffs"]):
                value = value + ExactReal(_as_rat_like(c)) * field**i
            return value
        if "poly" in data and "interval" in data:
            poly = data["poly"]
            if not isinstance(poly, (list, tuple)):
                raise ValidationError('"poly" must be a coefficient list')
            interval = data["interval"]
            if not isinstance(interval, (list, tuple)) or len(interval) != 2:
                raise ValidationError('"interval" must be a [lo, hi] pair')
            coeffs = []
            for c in poly:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise ValidationError("polynomial coefficients must be integers")
                coeffs.append(c)
            return ExactReal.algebraic(
                IntPoly(coeffs), (_as_rat_like(interval[0]), _as_rat_like(interval[1]))
            )
        raise ValidationError(f"unrecognized exact-number object {data!r}")
    raise ValidationError(f"unrecognized exact-number form {data!r}")


def _as_rat_like(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str, Fraction)):
        raise ValidationError(f"rational expected, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"malformed rational {v!r}") from exc


def format_exact(x: ExactReal):
    """JSON-ready exact form of a number; see ExactReal.to_json."""
    return x.to_json()
