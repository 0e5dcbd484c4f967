"""Truncated Puiseux series with exact rational arithmetic.

A series is a finite sum of terms ``c * t^e`` with rational exponents ``e``
and an optional truncation order: terms of exponent >= order are unknown.
Exact polynomials have ``order is None``.  Truncation propagates through
arithmetic the usual way, i.e. a sum knows its terms up to the smaller of
the two orders, and a product up to ``min(ord_s + val_u, ord_u + val_s)``.

Coefficients are ``Fraction`` or :class:`QuadElement` (elements ``p + q*sqrt(r)``
of a real or imaginary quadratic extension).  The two mix freely as long as
only one square root is involved.

>>> s = parse_series("1*t^(-1) + 3 + -2*t^(1/2)")
>>> s.valuation()
Fraction(-1, 1)
>>> print(s * s)
1*t^(-2) + 6*t^(-1) + -4*t^(-1/2) + 9 + -12*t^(1/2) + 4*t
>>> print(parse_series("1 + 1*t + O(t^2)") * parse_series("1 + -1*t + O(t^2)"))
1 + O(t^2)
"""

import math
import re
from fractions import Fraction

from .errors import DivisionByZero, NonZeroValuation, ParseError, UnimplementedClosedForm

__all__ = [
    "QuadElement",
    "TruncatedPuiseux",
    "ground_sqrt",
    "ground_sign",
    "ground_is_real",
    "parse_series",
    "series",
    "t_power",
    "constant",
]


def _squarefree_decompose(n):
    # n = s^2 * r with r squarefree; n > 0
    s, r = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            r *= d
        d += 1
    r *= n
    return s, r


class QuadElement:
    """Element ``a + b*sqrt(r)`` with a, b rational and r a squarefree integer.

    r may be negative; ``is_real`` distinguishes the two cases.  r == 1 is
    canonicalised away (b folded into a), so plain rationals never carry a
    radical tag.  Elements with different radicals only combine when one of
    them is rational.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b=0, r=1):
        a = Fraction(a)
        b = Fraction(b)
        r = int(r)
        if r == 0:
            raise ValueError("radical must be nonzero")
        if r == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            r = 1
        self.a, self.b, self.r = a, b, r

    # -- coercion ------------------------------------------------------

    @staticmethod
    def _lift(x):
        if isinstance(x, QuadElement):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadElement(x)
        return None

    def _join(self, other):
        """Return (self, other) over a common radical."""
        if self.r == other.r:
            return self, other
        if self.b == 0:
            return QuadElement(self.a, 0, other.r), other
        if other.b == 0:
            return self, QuadElement(other.a, 0, self.r)
        raise UnimplementedClosedForm(
            "cannot combine sqrt(%d) with sqrt(%d)" % (self.r, other.r)
        )

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        x, y = self._join(other)
        return QuadElement(x.a + y.a, x.b + y.b, x.r if x.r != 1 else y.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.r)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        x, y = self._join(other)
        r = x.r if x.r != 1 else y.r
        return QuadElement(x.a * y.a + x.b * y.b * r, x.a * y.b + x.b * y.a, r)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.r
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("division by zero")
            raise ValueError("norm zero, radical was not squarefree")
        return QuadElement(self.a / n, -self.b / n, self.r)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadElement(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates ----------------------------------------------------

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.r == other.r

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.r))

    @property
    def is_real(self):
        return self.r > 0 or self.b == 0

    def sign(self):
        """Exact sign, defined only for real elements."""
        if not self.is_real:
            raise ValueError("sign of a non-real element")
        if self.b == 0:
            return 0 if self.a == 0 else (1 if self.a > 0 else -1)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # a and b*sqrt(r) compete; compare squares
        return sa if self.a * self.a > self.b * self.b * self.r else sb

    def conjugate(self):
        return QuadElement(self.a, -self.b, self.r)

    def as_fraction(self):
        if self.b != 0:
            raise ValueError("not rational: %s" % self)
        return self.a

    def __repr__(self):
        return "QuadElement(%r, %r, %r)" % (self.a, self.b, self.r)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        parts = []
        if self.a != 0:
            parts.append(str(self.a))
        root = "sqrt(%d)" % self.r
        if self.b == 1:
            parts.append(root)
        elif self.b == -1:
            parts.append("-" + root)
        else:
            parts.append("%s*%s" % (self.b, root))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def ground_sqrt(c):
    """Exact square root of a rational (or rational QuadElement).

    Returns a Fraction when the root is rational, otherwise a QuadElement
    whose radical records the squarefree part; negative inputs produce an
    imaginary element (negative radical).
    """
    if isinstance(c, QuadElement):
        c = c.as_fraction()
    c = Fraction(c)
    if c == 0:
        return Fraction(0)
    num, den = abs(c.numerator), c.denominator
    s, r = _squarefree_decompose(num * den)
    coeff = Fraction(s, den)
    if c < 0:
        r = -r
    if r == 1:
        return coeff
    return QuadElement(0, coeff, r)


def ground_sign(c):
    if isinstance(c, QuadElement):
        return c.sign()
    c = Fraction(c)
    return 0 if c == 0 else (1 if c > 0 else -1)


def ground_is_real(c):
    if isinstance(c, QuadElement):
        return c.is_real
    return True


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedPuiseux:
    """Finite sum of ``c * t^e`` terms plus an optional truncation order.

    Immutable.  ``terms`` is a tuple of (exponent, coefficient) sorted by
    exponent with no zero coefficients and no exponent >= order.
    """

    __slots__ = ("terms", "order")

    def __init__(self, terms, order=None):
        if order is not None:
            order = Fraction(order)
        clean = {}
        for e, c in terms:
            e = Fraction(e)
            if order is not None and e >= order:
                continue
            if not isinstance(c, QuadElement):
                c = Fraction(c)
            if e in clean:
                c = clean[e] + c
            if c:
                clean[e] = c
            elif e in clean:
                del clean[e]
        self.terms = tuple(sorted(clean.items(), key=lambda t: t[0]))
        self.order = order

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        """True when no terms are visible.  Only exact series are known to
        be zero; a truncated empty series merely has valuation >= order."""
        return not self.terms

    def is_exactly_zero(self):
        return not self.terms and self.order is None

    def valuation(self):
        """Exponent of the lowest term, or None when no term is visible."""
        if not self.terms:
            return None
        return self.terms[0][0]

    def leading_coefficient(self):
        if not self.terms:
            raise DivisionByZero("no visible terms")
        return self.terms[0][1]

    def residue(self):
        """Coefficient of t^0; raises NonZeroValuation unless val == 0."""
        v = self.valuation()
        if v is None:
            if self.order is not None and self.order <= 0:
                raise NonZeroValuation("series unknown at order 0")
            raise NonZeroValuation("series is zero")
        if v != 0:
            raise NonZeroValuation("valuation %s != 0" % v)
        return self.terms[0][1]

    def coefficient(self, e):
        e = Fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def known_to(self):
        return self.order

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncatedPuiseux):
            return other
        if isinstance(other, (int, Fraction, QuadElement)):
            return TruncatedPuiseux([(Fraction(0), other)])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TruncatedPuiseux(
            list(self.terms) + list(other.terms), _min_order(self.order, other.order)
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPuiseux([(e, -c) for e, c in self.terms], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = None
        if self.order is not None:
            v = other.valuation()
            order = self.order + v if v is not None else (
                self.order + other.order if other.order is not None else None)
            if v is None and other.order is None:
                order = None  # other is exactly zero
        if other.order is not None:
            v = self.valuation()
            o2 = other.order + v if v is not None else (
                other.order + self.order if self.order is not None else None)
            if v is None and self.order is None:
                o2 = None
            order = _min_order(order, o2)
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if order is not None and e >= order:
                    continue
                c = c1 * c2
                if e in out:
                    out[e] = out[e] + c
                else:
                    out[e] = c
        return TruncatedPuiseux(out.items(), order)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = TruncatedPuiseux([(Fraction(0), 1)])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self, extra=None):
        """Multiplicative inverse.

        The result is truncated like ``1/self`` should be: if self is exact
        the inverse is computed up to ``extra`` terms beyond the leading one
        (default: enough for typical use, 64 exponent steps of the visible
        spread, or exact for monomials).
        """
        v = self.valuation()
        if v is None:
            raise DivisionByZero("inverting a series with no visible terms")
        lead = self.terms[0][1]
        lead_inv = (1 / lead) if not isinstance(lead, QuadElement) else lead.inverse()
        rest = TruncatedPuiseux(self.terms[1:], self.order)
        if rest.is_exactly_zero():
            return TruncatedPuiseux([(-v, lead_inv)])
        # self = lead t^v (1 + w), w = rest/(lead t^v), val(w) > 0
        w = rest * TruncatedPuiseux([(-v, lead_inv)])
        wv = w.valuation()
        if wv is None:
            # w is invisible below its truncation, so only the bound survives
            return TruncatedPuiseux([(-v, lead_inv)], w.order - v)
        if w.order is not None:
            target = w.order
        else:
            spread = w.terms[-1][0] - 0
            target = extra if extra is not None else max(spread * 4, wv * 64)
        acc = TruncatedPuiseux([(Fraction(0), 1)], target)
        powr = TruncatedPuiseux([(Fraction(0), 1)], target)
        k = 1
        while k * wv < target:
            powr = powr * (-w)
            acc = acc + powr
            k += 1
        return acc * TruncatedPuiseux([(-v, lead_inv)])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- reshaping -----------------------------------------------------

    def shift(self, a):
        """Multiply by t^a."""
        a = Fraction(a)
        return TruncatedPuiseux(
            [(e + a, c) for e, c in self.terms],
            None if self.order is None else self.order + a,
        )

    def rescale(self, k):
        """Substitute t -> t^k (k > 0 rational): exponents scale by k."""
        k = Fraction(k)
        if k <= 0:
            raise ValueError("rescale factor must be positive")
        return TruncatedPuiseux(
            [(e * k, c) for e, c in self.terms],
            None if self.order is None else self.order * k,
        )

    def truncate(self, order):
        return TruncatedPuiseux(self.terms, _min_order(self.order, Fraction(order)))

    def map_coefficients(self, f):
        return TruncatedPuiseux([(e, f(c)) for e, c in self.terms], self.order)

    def exponent_denominator(self):
        d = 1
        for e, _ in self.terms:
            d = d * e.denominator // math.gcd(d, e.denominator)
        if self.order is not None:
            d = d * self.order.denominator // math.gcd(d, self.order.denominator)
        return d

    # -- comparison / output -------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms and self.order == other.order

    def __hash__(self):
        return hash((self.terms, self.order))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "parse_series(%r)" % str(self)

    def __str__(self):
        return format_series(self)


def constant(c):
    return TruncatedPuiseux([(Fraction(0), c)])


def t_power(e, c=1):
    return TruncatedPuiseux([(Fraction(e), c)])


def series(*terms, order=None):
    """series((e, c), (e, c), ..., order=None) convenience constructor."""
    return TruncatedPuiseux(terms, order)


def _format_exponent(e):
    if e.denominator == 1 and e >= 0:
        return "t" if e == 1 else "t^%d" % e.numerator
    return "t^(%s)" % e


def _format_coefficient(c):
    if isinstance(c, QuadElement) and c.b != 0:
        return "(%s)" % c
    return str(c)


def format_series(s):
    """Canonical literal: terms by increasing exponent, explicit ``*`` and
    coefficients, truncation as a final O(t^e)."""
    parts = []
    for e, c in s.terms:
        if e == 0:
            parts.append(_format_coefficient(c))
        else:
            parts.append("%s*%s" % (_format_coefficient(c), _format_exponent(e)))
    if s.order is not None:
        parts.append("O(%s)" % _format_exponent(s.order))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " + " + p
    return out


_TERM_RE = re.compile(
    r"""^\s*
    (?P<coef>[+-]?\s*\d+(?:\s*/\s*\d+)?|[+-])?     # optional rational coefficient
    \s*(?P<star>\*)?\s*
    (?P<t>t(?:\^(?P<exp>\(?\s*-?\d+(?:\s*/\s*\d+)?\s*\)?))?)?
    \s*$""",
    re.VERBOSE,
)

_ORDER_RE = re.compile(
    r"^\s*O\(\s*t(?:\^(?P<exp>\(?\s*-?\d+(?:\s*/\s*\d+)?\s*\)?))?\s*\)\s*$"
)


def _parse_exponent(text):
    if text is None:
        return Fraction(1)
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return Fraction(text.replace(" ", ""))


def _split_terms(text):
    """Split on top-level + and - (a minus sign stays with its term)."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            prev = text[start:i].strip()
            if prev and prev[-1] not in "*^/+-" and prev != "O":
                out.append(prev)
                start = i + 1 if ch == "+" else i
    last = text[start:].strip()
    if last:
        out.append(last)
    return out


def parse_series(text):
    """Parse a series literal, the inverse of format_series.

    Accepts minor variations: optional ``*``, bare ``t``, signs attached to
    coefficients, a trailing O(t^e) truncation, and the literal ``0``.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty series literal")
    if text == "0":
        return TruncatedPuiseux([])
    terms = []
    order = None
    for piece in _split_terms(text):
        m = _ORDER_RE.match(piece)
        if m:
            if order is not None:
                raise ParseError("two truncation markers in %r" % text)
            order = _parse_exponent(m.group("exp"))
            continue
        m = _TERM_RE.match(piece)
        if not m or (m.group("coef") is None and m.group("t") is None):
            raise ParseError("bad term %r" % piece)
        coef_text = m.group("coef")
        if coef_text is None:
            coef = Fraction(1)
        else:
            coef_text = coef_text.replace(" ", "")
            if coef_text in ("+", "-"):
                coef = Fraction(coef_text + "1")
            else:
                coef = Fraction(coef_text)
        if m.group("t") is None:
            e = Fraction(0)
        else:
            e = _parse_exponent(m.group("exp"))
        terms.append((e, coef))
    return TruncatedPuiseux(terms, order)
