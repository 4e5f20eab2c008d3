"""Univariate polynomials in an indeterminate (written ``x``) over a working field."""

from __future__ import annotations

from .field import FieldContext

__all__ = ["Poly"]


class Poly:
    """Dense polynomial with coefficients lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and ``degree`` -1.
    """

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs, ctx: FieldContext):
        cs = [ctx(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.ctx = ctx

    @classmethod
    def _raw(cls, coeffs, ctx):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.ctx = ctx
        return obj

    @classmethod
    def x(cls, ctx):
        return cls._raw([ctx.zero, ctx.one], ctx)

    @classmethod
    def constant(cls, c, ctx):
        return cls._raw([ctx(c)], ctx)

    @classmethod
    def from_roots(cls, roots, ctx):
        p = cls.constant(1, ctx)
        for r in roots:
            p = p * cls._raw([-ctx(r), ctx.one], ctx)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.constant(other, self.ctx)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.ctx.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = o.coeffs + (z,) * (n - len(o.coeffs))
        return Poly._raw([u + v for u, v in zip(a, b)], self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.ctx)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly._raw([], self.ctx)
        out = [self.ctx.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly._raw(out, self.ctx)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        inv_lead = 1 / o.leading
        quot = [self.ctx.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    if b:
                        rem[k + j] -= c * b
        return Poly._raw(quot, self.ctx), Poly._raw(rem[:dq], self.ctx)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = 1 / self.leading
        return Poly._raw([c * inv for c in self.coeffs], self.ctx)

    def derivative(self) -> "Poly":
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:], self.ctx)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "Poly") -> "Poly":
        if not self or not other:
            return Poly._raw([], self.ctx)
        return ((self * other) // self.gcd(other)).monic()

    def __call__(self, value):
        """Evaluate at a field element or, via Horner's rule, at a square Matrix."""
        from .linalg import Matrix

        if isinstance(value, Matrix):
            n = value.nrows
            acc = Matrix.zeros(n, n, self.ctx)
            ident = Matrix.identity(n, self.ctx)
            for c in reversed(self.coeffs):
                acc = acc @ value + ident * c
            return acc
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def to_strings(self) -> list[str]:
        return [self.ctx.format(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            s = self.ctx.format(c)
            if self.ctx.kind != "Q" and k > 0 and any(ch in s for ch in "+/ ") and s not in ("1",):
                s = f"({s})"
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k and s == "1":
                term = mono
            elif k and s == "-1":
                term = "-" + mono
            else:
                term = s + ("*" + mono if mono else "")
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"
