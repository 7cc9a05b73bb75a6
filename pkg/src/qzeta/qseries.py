"""Truncated power series in q over the rationals.

A QSeries of order Q is a value known modulo q^Q, held as a dense
coefficient list of length Q.  Binary operations truncate to the smaller
operand order, so a result never claims more precision than its inputs
support.  This is the scalar type of the exact backend: identity checks
against it are tolerance-free.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial

from .errors import SingularSeriesError


class QSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        if order < 1:
            raise ValueError("series order must be >= 1")
        cs = [Fraction(c) for c in coeffs[:order]]
        cs.extend([Fraction(0)] * (order - len(cs)))
        self.order = order
        self.coeffs = cs

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def const(cls, c, order: int) -> "QSeries":
        return cls([Fraction(c)], order)

    @classmethod
    def q(cls, order: int) -> "QSeries":
        return cls([0, 1], order)

    @classmethod
    def from_poly(cls, poly, order: int) -> "QSeries":
        cs = [Fraction(0)] * order
        for e, c in poly.items():
            if e < order:
                cs[e] = c
        return cls(cs, order)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or None for zero mod q^Q."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend precision by truncation")
        return QSeries(self.coeffs[:order], order)

    def equals_mod(self, other: "QSeries", order=None) -> bool:
        k = min(self.order, other.order)
        if order is not None:
            k = min(k, order)
        return self.coeffs[:k] == other.coeffs[:k]

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return QSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = QSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def invert(self) -> "QSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise SingularSeriesError("constant term is zero; series not invertible")
        n = self.order
        out = [Fraction(0)] * n
        out[0] = 1 / a0
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, k + 1):
                ai = self.coeffs[i]
                if ai:
                    acc += ai * out[k - i]
            out[k] = -acc / a0
        return QSeries(out, n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def compose(self, inner) -> "QSeries":
        """Substitute a polynomial (or series) with zero constant term for q."""
        n = self.order
        if isinstance(inner, QSeries):
            p = inner.truncate(min(n, inner.order))
            n = p.order
        else:
            p = QSeries.from_poly(inner, n)
        if p.coeffs[0] != 0:
            raise ValueError("composition needs zero constant term")
        out = QSeries.const(self.coeffs[n - 1], n)
        for k in range(n - 2, -1, -1):
            out = out * p + QSeries.const(self.coeffs[k], n)
        return out

    def log(self) -> "QSeries":
        if self.coeffs[0] != 1:
            raise SingularSeriesError("log needs constant term 1")
        u = self - 1
        out = QSeries.zero(self.order)
        term = QSeries.one(self.order)
        for k in range(1, self.order):
            term = term * u
            if term.is_zero():
                break
            out = out + term * Fraction((-1) ** (k + 1), k)
        return out

    def exp(self) -> "QSeries":
        if self.coeffs[0] != 0:
            raise SingularSeriesError("exp needs zero constant term")
        out = QSeries.one(self.order)
        term = QSeries.one(self.order)
        for k in range(1, self.order):
            term = term * self
            if term.is_zero():
                break
            out = out + term * Fraction(1, factorial(k))
        return out

    # -- numeric substitution -------------------------------------------

    def eval_at(self, x):
        """Horner evaluation of the truncated polynomial at a numeric q."""
        out = 0 * x
        for c in reversed(self.coeffs):
            out = out * x + (Fraction(c) if isinstance(x, Fraction) else float(c) if isinstance(x, float) else c)
        return out

    # -- equality / text ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def __str__(self):
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        if not parts:
            return f"0 + O(q^{self.order})"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text + f" + O(q^{self.order})"

    def __repr__(self):
        return f"QSeries({str(self)})"

    _ORDER = re.compile(r"\+\s*O\(q\^(\d+)\)\s*$")

    @classmethod
    def parse(cls, text: str) -> "QSeries":
        """Parse the output of str(): terms followed by '+ O(q^Q)'."""
        m = cls._ORDER.search(text)
        if not m:
            raise ValueError("missing O(q^Q) order marker")
        order = int(m.group(1))
        body = text[: m.start()].strip()
        from .qpoly import QPoly

        if body == "0" or not body:
            return cls.zero(order)
        poly = QPoly.parse(body)
        if poly.degree >= order:
            raise ValueError("coefficients beyond the stated order")
        return cls.from_poly(poly, order)
