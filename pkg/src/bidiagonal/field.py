"""Exact scalars: rationals (gmpy2 ``mpq``) and rational functions in q.

Two working fields are supported. Over the rationals an element is a plain
``gmpy2.mpq``. Over Q(q) an element is a :class:`RationalFunction`, a
numerator/denominator pair of ``flint.fmpq_poly`` kept in canonical form
(monic denominator, coprime to the numerator), so that ``==`` is a
syntactic comparison.

A :class:`FieldContext` names the working field and optionally carries a
concrete rational value for q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from flint import fmpq, fmpq_poly
from gmpy2 import mpq

from .errors import DivisionByZero, MissingQ, ParseError

__all__ = [
    "RATIONALS",
    "RATIONAL_FUNCTIONS",
    "FieldContext",
    "RationalFunction",
    "Q",
    "Qq",
    "field_arithmetic",
    "poly_gcd",
    "q_integer",
]

RATIONALS = "Q"
RATIONAL_FUNCTIONS = "Qq"

_ZERO_P = fmpq_poly([])
_ONE_P = fmpq_poly([1])
_X_P = fmpq_poly([0, 1])


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, int):
        return fmpq(x)
    x = mpq(x)
    return fmpq(int(x.numerator), int(x.denominator))


def _to_mpq(x: fmpq):
    return mpq(int(x.p), int(x.q))


def _primitive(p: fmpq_poly) -> fmpq_poly:
    """The primitive integer polynomial with the same roots as ``p``."""
    z = p.numer()
    c = z.content()
    return fmpq_poly(z) if c == 1 else fmpq_poly(z) / c


def poly_gcd(a: fmpq_poly, b: fmpq_poly) -> fmpq_poly:
    """Monic gcd of two rational polynomials.

    Euclidean remainders are computed exactly over Q and each one is
    rescaled to a primitive integer polynomial, which keeps coefficients
    from growing. There is no modular shortcut. The gcd of two zero
    polynomials is zero.
    """
    if not a or not b:
        g = a or b
        return g / g[g.degree()] if g else g
    x, y = _primitive(a), _primitive(b)
    if x.degree() < y.degree():
        x, y = y, x
    while y:
        r = x % y
        x, y = y, (_primitive(r) if r else r)
    return x / x[x.degree()]


def _valuation(p: fmpq_poly) -> int:
    for k, c in enumerate(p.coeffs()):
        if c:
            return k
    return -1


def _is_monomial(p: fmpq_poly) -> bool:
    # monic x^k
    d = p.degree()
    return d > 0 and p[d] == 1 and _valuation(p) == d


def _cancel(num: fmpq_poly, den: fmpq_poly) -> fmpq_poly:
    """Common factor of num and den (den monic, non-constant)."""
    if _is_monomial(den):
        v = _valuation(num)
        k = min(v, den.degree())
        return _X_P ** k if k > 0 else _ONE_P
    return poly_gcd(den, num)


class RationalFunction:
    """An element of Q(q) stored as num/den with den monic and gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, fmpq_poly) else fmpq_poly([_to_fmpq(num)])
        if den is None:
            self.num, self.den = num, _ONE_P
            return
        den = den if isinstance(den, fmpq_poly) else fmpq_poly([_to_fmpq(den)])
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def generator(cls) -> "RationalFunction":
        return cls._raw(_X_P, _ONE_P)

    @classmethod
    def monomial(cls, coeff, k: int) -> "RationalFunction":
        """coeff * q^k for any integer k."""
        c = _to_fmpq(coeff)
        if not c:
            return cls._raw(_ZERO_P, _ONE_P)
        if k >= 0:
            return cls._raw(c * _X_P ** k, _ONE_P)
        return cls._raw(fmpq_poly([c]), _X_P ** (-k))

    # -- inspection ---------------------------------------------------------

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self):
        """The rational value of a constant element (``None`` otherwise)."""
        if not self.is_constant():
            return None
        return _to_mpq(self.num[0]) if self.num else mpq(0)

    def as_monomial(self):
        """Return (c, k) if self == c*q^k with rational c != 0, else None."""
        if not self.num:
            return None
        v = _valuation(self.num)
        if v != self.num.degree():
            return None
        if self.den.degree() == 0:
            return _to_mpq(self.num[v]), v
        if _is_monomial(self.den) and v == 0:
            return _to_mpq(self.num[0]), -self.den.degree()
        return None

    def __call__(self, value):
        """Evaluate at a rational value of q."""
        value = _to_fmpq(value)
        d = self.den(value)
        if not d:
            raise DivisionByZero("evaluation at a pole")
        return _to_mpq(self.num(value) / d)

    # -- arithmetic ---------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d1.degree() == 0:
            if d2.degree() == 0:
                return RationalFunction._raw(n1 + n2, _ONE_P)
            return RationalFunction._raw(n1 * d2 + n2, d2)
        if d2.degree() == 0:
            return RationalFunction._raw(n1 + n2 * d1, d1)
        if d1 == d2:
            n = n1 + n2
            if not n:
                return _ZERO_RF
            g = _cancel(n, d1)
            if g.degree() > 0:
                return RationalFunction._raw(n // g, d1 // g)
            return RationalFunction._raw(n, d1)
        g = _cancel(d2, d1) if _is_monomial(d1) else poly_gcd(d1, d2)
        if g.degree() == 0:
            return RationalFunction._raw(n1 * d2 + n2 * d1, d1 * d2)
        d1g = d1 // g
        n = n1 * (d2 // g) + n2 * d1g
        if not n:
            return _ZERO_RF
        den = d1g * d2
        g2 = poly_gcd(g, n)
        if g2.degree() > 0:
            return RationalFunction._raw(n // g2, den // g2)
        return RationalFunction._raw(n, den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__add__(-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not n1 or not n2:
            return _ZERO_RF
        if d1.degree() == 0 and d2.degree() == 0:
            return RationalFunction._raw(n1 * n2, _ONE_P)
        if d2.degree() > 0:
            g = _cancel(n1, d2)
            if g.degree() > 0:
                n1, d2 = n1 // g, d2 // g
        if d1.degree() > 0:
            g = _cancel(n2, d1)
            if g.degree() > 0:
                n2, d1 = n2 // g, d1 // g
        return RationalFunction._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        lead = self.num[self.num.degree()]
        if lead == 1:
            return RationalFunction._raw(self.den, self.num)
        return RationalFunction._raw(self.den / lead, self.num / lead)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.__mul__(o.inverse())

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__mul__(self.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        # num/den stay coprime under powers
        return RationalFunction._raw(base.num ** abs(k), base.den ** abs(k))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((str(self.num), str(self.den)))

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_rational_function(self)

    def __repr__(self):
        return f"RationalFunction({self})"


def _normalize(num: fmpq_poly, den: fmpq_poly):
    if not num:
        return _ZERO_P, _ONE_P
    if den.degree() > 0:
        g = _cancel(num, den)
        if g.degree() > 0:
            num, den = num // g, den // g
    lead = den[den.degree()]
    if lead != 1:
        num, den = num / lead, den / lead
    return num, den


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, fmpq)) or type(x) is type(mpq(0)):
        return RationalFunction._raw(fmpq_poly([_to_fmpq(x)]), _ONE_P)
    if isinstance(x, Fraction):
        return RationalFunction._raw(fmpq_poly([fmpq(x.numerator, x.denominator)]), _ONE_P)
    return None


_ZERO_RF = RationalFunction._raw(_ZERO_P, _ONE_P)


# -- text grammar -----------------------------------------------------------

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")
_TERM_RE = re.compile(r"(?P<c>\d+(?:/\d+)?)?(?:(?(c)\*?)(?P<q>q)(?:\^(?P<k>\d+))?)?")


def _parse_rational(text: str):
    text = text.strip()
    if not _RATIONAL_RE.fullmatch(text):
        raise ParseError(f"not a rational number: {text!r}")
    if "/" in text:
        n, d = text.split("/")
        if int(d) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return mpq(int(n), int(d))
    return mpq(int(text))


def _parse_poly(text: str) -> fmpq_poly:
    body = text.replace(" ", "")
    if not body:
        raise ParseError("empty polynomial")
    coeffs: dict[int, fmpq] = {}
    pieces = re.findall(r"[+-]?[^+-]+", body)
    if "".join(pieces) != body:
        raise ParseError(f"malformed polynomial {text!r}")
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        term = piece.lstrip("+-")
        m = _TERM_RE.fullmatch(term)
        if not term or not m or (m.group("c") is None and m.group("q") is None):
            raise ParseError(f"malformed term {piece!r} in {text!r}")
        c = _to_fmpq(_parse_rational(m.group("c"))) if m.group("c") else fmpq(1)
        if m.group("q") is None:
            k = 0
        else:
            k = int(m.group("k")) if m.group("k") else 1
        coeffs[k] = coeffs.get(k, fmpq(0)) + sign * c
    top = max(coeffs)
    return fmpq_poly([coeffs.get(k, fmpq(0)) for k in range(top + 1)])


def parse_rational_function(text: str) -> RationalFunction:
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
    if m and m.group(1).count("(") == 0 and m.group(2).count("(") == 0:
        num, den = _parse_poly(m.group(1)), _parse_poly(m.group(2))
        if not den:
            raise ParseError(f"zero denominator in {text!r}")
        return RationalFunction(num, den)
    m = re.fullmatch(r"\((.*)\)", s)
    if m and "(" not in m.group(1):
        s = m.group(1)
    if "(" in s or ")" in s:
        raise ParseError(f"malformed rational function {text!r}")
    # a bare "a/b" is a rational coefficient, which _parse_poly handles
    return RationalFunction(_parse_poly(s))


def _format_poly(p: fmpq_poly) -> str:
    if not p:
        return "0"
    out = []
    for k in range(p.degree(), -1, -1):
        c = p[k]
        if not c:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_rational_function(x: RationalFunction) -> str:
    if x.den.degree() == 0:
        return _format_poly(x.num)
    return f"({_format_poly(x.num)})/({_format_poly(x.den)})"


# -- square roots -----------------------------------------------------------

def _rational_sqrt(x):
    x = mpq(x)
    if x < 0:
        return None
    n, d = int(x.numerator), int(x.denominator)
    if not (gmpy2.is_square(n) and gmpy2.is_square(d)):
        return None
    return mpq(int(gmpy2.isqrt(n)), int(gmpy2.isqrt(d)))


def _monic_poly_sqrt(p: fmpq_poly):
    deg = p.degree()
    if deg % 2:
        return None
    m = deg // 2
    rev = [p[deg - k] for k in range(deg + 1)]  # rev[0] == 1
    s = [fmpq(1)]
    for k in range(1, m + 1):
        acc = rev[k] - sum((s[j] * s[k - j] for j in range(1, k)), fmpq(0))
        s.append(acc / 2)
    root = fmpq_poly([s[m - k] for k in range(m + 1)])
    return root if root * root == p else None


def _rf_sqrt(x: RationalFunction):
    if not x:
        return x
    lead = x.num[x.num.degree()]
    c = _rational_sqrt(_to_mpq(lead))
    if c is None:
        return None
    sn = _monic_poly_sqrt(x.num / lead)
    sd = _monic_poly_sqrt(x.den)
    if sn is None or sd is None:
        return None
    return RationalFunction._raw(sn * _to_fmpq(c), sd)


# -- contexts ---------------------------------------------------------------

_MPQ = type(mpq(0))


@dataclass(frozen=True)
class FieldContext:
    """The working field: ``"Q"`` (optionally with a numeric q) or ``"Qq"``."""

    kind: str = RATIONALS
    numeric_q: object = None

    def __post_init__(self):
        if self.kind not in (RATIONALS, RATIONAL_FUNCTIONS):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.numeric_q is not None:
            if self.kind != RATIONALS:
                raise ValueError("numeric_q only applies to the rationals")
            v = self.numeric_q
            v = _parse_rational(v) if isinstance(v, str) else mpq(v)
            if v in (0, 1, -1):
                raise ValueError("numeric q must not be 0, 1 or -1")
            object.__setattr__(self, "numeric_q", v)

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONALS

    @property
    def zero(self):
        return mpq(0) if self.kind == RATIONALS else _ZERO_RF

    @property
    def one(self):
        return mpq(1) if self.kind == RATIONALS else RationalFunction._raw(_ONE_P, _ONE_P)

    @property
    def has_q(self) -> bool:
        return self.kind == RATIONAL_FUNCTIONS or self.numeric_q is not None

    @property
    def q(self):
        if self.kind == RATIONAL_FUNCTIONS:
            return RationalFunction.generator()
        if self.numeric_q is None:
            raise MissingQ("the rationals need a numeric q for this operation")
        return self.numeric_q

    def __call__(self, x):
        """Convert ``x`` (int, str, mpq, Fraction, RationalFunction) into the field."""
        if self.kind == RATIONALS:
            if type(x) is _MPQ:
                return x
            if isinstance(x, str):
                return self.parse(x)
            if isinstance(x, RationalFunction):
                v = x.constant_value()
                if v is None:
                    raise ParseError(f"{x} is not a rational number")
                return v
            if isinstance(x, fmpq):
                return _to_mpq(x)
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return mpq(x)
            raise TypeError(f"cannot convert {x!r} to a rational")
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        r = _coerce(x)
        if r is None:
            raise TypeError(f"cannot convert {x!r} to a rational function")
        return r

    def parse(self, text: str):
        if self.kind == RATIONALS:
            return _parse_rational(text)
        return parse_rational_function(text)

    def format(self, x) -> str:
        if self.kind == RATIONALS:
            return str(mpq(x))
        return format_rational_function(self(x))

    def sqrt(self, x):
        """A square root of ``x`` in the field, or ``None``.

        The returned root has a positive (leading) coefficient, which fixes
        the sign deterministically.
        """
        if self.kind == RATIONALS:
            return _rational_sqrt(x)
        return _rf_sqrt(self(x))

    def is_root_of_unity_free(self, x) -> bool:
        """True if x is nonzero and not a root of unity in this field."""
        if not x:
            return False
        if self.kind == RATIONALS:
            return x not in (1, -1)
        c = x.constant_value()
        return c is None or c not in (1, -1)

    def __str__(self):
        if self.numeric_q is not None:
            return f"Q[q={self.numeric_q}]"
        return self.kind


Q = FieldContext(RATIONALS)
Qq = FieldContext(RATIONAL_FUNCTIONS)


def field_arithmetic(a, b, op: str):
    """Apply ``op`` in {add, sub, mul, div, neg, inv, eq} to field elements."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


def q_integer(n: int, ctx: FieldContext):
    """The q-integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ctx.zero
    if ctx.kind == RATIONAL_FUNCTIONS:
        num = fmpq_poly([1 if k % 2 == 0 else 0 for k in range(2 * n - 1)])
        return RationalFunction._raw(num, _X_P ** (n - 1))
    q = ctx.q
    return sum((q ** (n - 1 - 2 * j) for j in range(n)), mpq(0))
