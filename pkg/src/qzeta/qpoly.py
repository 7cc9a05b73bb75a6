"""Sparse polynomials in q with rational coefficients.

These are the coefficient objects attached to compositions in symbolic
zeta-combinations: small, exact, and cheap.  Zero coefficients are never
stored, so the zero polynomial has an empty table.
"""

from __future__ import annotations

import re
from fractions import Fraction


class QPoly:
    """Polynomial in q over the rationals, stored as {exponent: coefficient}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        table = {}
        if coeffs:
            for e, c in dict(coeffs).items():
                c = Fraction(c)
                if c:
                    if e < 0:
                        raise ValueError("negative exponent in QPoly")
                    table[int(e)] = c
        self._c = table

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def one(cls) -> "QPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def q(cls) -> "QPoly":
        return cls({1: 1})

    @classmethod
    def one_minus_q(cls, power: int = 1) -> "QPoly":
        return cls({0: 1, 1: -1}) ** power

    @classmethod
    def q_minus_one(cls, power: int = 1) -> "QPoly":
        return cls({0: -1, 1: 1}) ** power

    # -- basic queries -------------------------------------------------

    def items(self):
        return self._c.items()

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        table = dict(self._c)
        for e, c in other._c.items():
            table[e] = table.get(e, Fraction(0)) + c
        return QPoly(table)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        table = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                table[e] = table.get(e, Fraction(0)) + c1 * c2
        return QPoly(table)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of QPoly")
        out = QPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    # -- evaluation ----------------------------------------------------

    def eval(self, x):
        """Evaluate at a scalar (Fraction, float, complex, ...)."""
        out = None
        for e, c in sorted(self._c.items()):
            term = c if e == 0 else c * x ** e
            out = term if out is None else out + term
        if out is None:
            return 0 * x if not isinstance(x, (int, float, complex, Fraction)) else type(x)(0)
        return out

    # -- text ------------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            c = self._c[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"QPoly({str(self)})"

    _TERM = re.compile(r"^(?:(?P<coef>-?\d+(?:/\d+)?)\*?)?(?:q(?:\^(?P<exp>\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        """Parse the output of str(): signed sum of c*q^e terms."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        if s == "0":
            return cls.zero()
        s = s.replace("-", "+-")
        table = {}
        for chunk in s.split("+"):
            if not chunk:
                continue
            neg = chunk.startswith("-")
            if neg:
                chunk = chunk[1:]
            m = cls._TERM.match(chunk)
            if not m or (m.group("coef") is None and "q" not in chunk):
                raise ValueError(f"cannot parse polynomial term {chunk!r}")
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            if "q" in chunk:
                exp = int(m.group("exp")) if m.group("exp") else 1
            else:
                exp = 0
            if neg:
                coef = -coef
            table[exp] = table.get(exp, Fraction(0)) + coef
        return cls(table)
