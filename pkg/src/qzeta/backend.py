"""Evaluation backends and the basic q-calculus functions.

Three backends share one configuration object:

* ``exact``   -- scalars are QSeries: q is a formal variable modulo q^Q,
                 so residuals are either identically zero or not.
* ``float``   -- scalars are FloatVal: double precision plus a truncation
                 error bound (rigorous where a clean bound exists, else a
                 doubling estimate flagged as heuristic).
* ``complex`` -- ComplexVal, same bookkeeping with complex values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, UnsupportedRequestError
from .qseries import QSeries

EXACT = "exact"
FLOAT = "float"
COMPLEX = "complex"


@dataclass(frozen=True)
class BackendConfig:
    mode: str = EXACT
    q: object = None          # Fraction or float in (0,1); unused in exact mode
    order: int = 25           # Q: series precision of the exact backend
    trunc: int = 200          # N: index cap for numeric summation
    tol: float = 1e-10

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT, COMPLEX):
            raise ValueError(f"unknown backend mode {self.mode!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.trunc < 1:
            raise ValueError("trunc must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.mode in (FLOAT, COMPLEX):
            if self.q is None:
                raise ValueError("numeric backends need q")
            if not 0 < float(self.q) < 1:
                raise ValueError("q must lie in (0,1)")

    # -- conveniences ------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    @property
    def qf(self) -> float:
        return float(self.q)

    def fingerprint(self) -> tuple:
        return (self.mode, None if self.q is None else str(self.q),
                self.order, self.trunc, self.tol)

    def with_q(self, q) -> "BackendConfig":
        return BackendConfig(self.mode, q, self.order, self.trunc, self.tol)

    def zero(self):
        if self.is_exact:
            return QSeries.zero(self.order)
        if self.mode == FLOAT:
            return FloatVal(0.0)
        return ComplexVal(0j)

    def one(self):
        if self.is_exact:
            return QSeries.one(self.order)
        if self.mode == FLOAT:
            return FloatVal(1.0)
        return ComplexVal(1 + 0j)

    def from_fraction(self, c):
        if self.is_exact:
            return QSeries.const(c, self.order)
        if self.mode == FLOAT:
            return FloatVal(float(c))
        return ComplexVal(complex(c))

    def q_scalar(self):
        """q itself as a backend scalar."""
        if self.is_exact:
            return QSeries.q(self.order)
        if self.mode == FLOAT:
            return FloatVal(self.qf)
        return ComplexVal(complex(self.qf))


def _coerce_bound(x):
    if isinstance(x, (FloatVal, ComplexVal)):
        return x.value, x.tail_bound, x.rigorous
    return x, 0.0, True


class FloatVal:
    """A double with a bound on the truncation error it may carry."""

    __slots__ = ("value", "tail_bound", "rigorous")

    def __init__(self, value: float, tail_bound: float = 0.0, rigorous: bool = True):
        if tail_bound < 0:
            raise ValueError("tail_bound must be >= 0")
        self.value = float(value)
        self.tail_bound = float(tail_bound)
        self.rigorous = rigorous

    def __add__(self, other):
        v, b, r = _coerce_bound(other)
        return FloatVal(self.value + v, self.tail_bound + b, self.rigorous and r)

    __radd__ = __add__

    def __neg__(self):
        return FloatVal(-self.value, self.tail_bound, self.rigorous)

    def __sub__(self, other):
        return self + (-other if isinstance(other, (FloatVal, ComplexVal)) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v, b, r = _coerce_bound(other)
        bound = abs(self.value) * b + abs(v) * self.tail_bound + self.tail_bound * b
        return FloatVal(self.value * v, bound, self.rigorous and r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, b, r = _coerce_bound(other)
        if abs(v) <= b:
            raise ZeroDivisionError("division by an interval containing zero")
        val = self.value / v
        bound = (self.tail_bound + abs(val) * b) / (abs(v) - b)
        return FloatVal(val, bound, self.rigorous and r)

    def __rtruediv__(self, other):
        v, b, r = _coerce_bound(other)
        return FloatVal(v, b, r) / self

    def __abs__(self):
        return abs(self.value)

    def overlaps(self, other) -> bool:
        """Interval equality test: |a-b| within the combined bounds."""
        v, b, _ = _coerce_bound(other)
        return abs(self.value - v) <= self.tail_bound + b

    def is_zero_within(self, tol: float) -> bool:
        return abs(self.value) <= tol + self.tail_bound

    def __repr__(self):
        flag = "" if self.rigorous else ", heuristic"
        return f"FloatVal({self.value!r} ± {self.tail_bound:.3g}{flag})"


class ComplexVal:
    """Complex counterpart of FloatVal; the bound caps |error|."""

    __slots__ = ("value", "tail_bound", "rigorous")

    def __init__(self, value: complex, tail_bound: float = 0.0, rigorous: bool = True):
        if tail_bound < 0:
            raise ValueError("tail_bound must be >= 0")
        self.value = complex(value)
        self.tail_bound = float(tail_bound)
        self.rigorous = rigorous

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    def __add__(self, other):
        v, b, r = _coerce_bound(other)
        return ComplexVal(self.value + v, self.tail_bound + b, self.rigorous and r)

    __radd__ = __add__

    def __neg__(self):
        return ComplexVal(-self.value, self.tail_bound, self.rigorous)

    def __sub__(self, other):
        return self + (-other if isinstance(other, (FloatVal, ComplexVal)) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v, b, r = _coerce_bound(other)
        bound = abs(self.value) * b + abs(v) * self.tail_bound + self.tail_bound * b
        return ComplexVal(self.value * v, bound, self.rigorous and r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, b, r = _coerce_bound(other)
        if abs(v) <= b:
            raise ZeroDivisionError("division by an interval containing zero")
        val = self.value / v
        bound = (self.tail_bound + abs(val) * b) / (abs(v) - b)
        return ComplexVal(val, bound, self.rigorous and r)

    def __rtruediv__(self, other):
        v, b, r = _coerce_bound(other)
        return ComplexVal(v, b, r) / self

    def __abs__(self):
        return abs(self.value)

    def overlaps(self, other) -> bool:
        v, b, _ = _coerce_bound(other)
        return abs(self.value - v) <= self.tail_bound + b

    def is_zero_within(self, tol: float) -> bool:
        return abs(self.value) <= tol + self.tail_bound

    def __repr__(self):
        flag = "" if self.rigorous else ", heuristic"
        return f"ComplexVal({self.value!r} ± {self.tail_bound:.3g}{flag})"


# ---------------------------------------------------------------------------
# q-calculus basics
# ---------------------------------------------------------------------------


def qint(n: int, cfg: BackendConfig):
    """[n]_q = 1 + q + ... + q^(n-1) = (1-q^n)/(1-q); [0]_q = 0."""
    if n < 0:
        raise DomainError("qint needs n >= 0")
    if cfg.is_exact:
        return QSeries([1] * min(n, cfg.order), cfg.order)
    q = cfg.qf
    val = (1.0 - q ** n) / (1.0 - q)
    if cfg.mode == FLOAT:
        return FloatVal(val)
    return ComplexVal(complex(val))


def qint_num(n: int, q) -> float:
    """Plain numeric [n]_q for internal loops."""
    return (1.0 - q ** n) / (1.0 - q)


def qpow_asym(x, y, n, cfg: BackendConfig):
    """Asymmetric q-power: the product of (x + y*q^k) for k = 0..n-1.

    Pass ``n=None`` (or math.inf) for the limiting infinite product, which
    is only available in the numeric backends; the product is cut off once
    the current factor is within cfg.tol/10 of 1 and the remainder is
    bounded geometrically.
    """
    infinite = n is None or n == math.inf
    if cfg.is_exact:
        if infinite:
            raise UnsupportedRequestError(
                "infinite asymmetric q-power has no polynomial limit in the exact backend")
        out = cfg.one()
        qpow = cfg.one()
        qs = cfg.q_scalar()
        xs = x if isinstance(x, QSeries) else cfg.from_fraction(x)
        ys = y if isinstance(y, QSeries) else cfg.from_fraction(y)
        for _ in range(n):
            out = out * (xs + ys * qpow)
            qpow = qpow * qs
        return out

    q = cfg.qf
    xv, xb, xr = _coerce_bound(x)
    yv, yb, yr = _coerce_bound(y)
    make = FloatVal if cfg.mode == FLOAT else ComplexVal
    if not infinite:
        out = make(1.0)
        for k in range(n):
            out = out * make(xv + yv * q ** k, xb + abs(yb) * q ** k, xr and yr)
        return out
    # Infinite product: factors converge to x; meaningful when x == 1.
    if abs(xv - 1.0) > 1e-15:
        raise UnsupportedRequestError("infinite asymmetric q-power needs x = 1")
    out = make(1.0)
    k = 0
    cutoff = cfg.tol / 10.0
    while abs(yv) * q ** k >= cutoff and k < 10 * cfg.trunc:
        out = out * make(1.0 + yv * q ** k)
        k += 1
    # remaining log-product is bounded by sum |y| q^j over j >= k
    tail = abs(yv) * q ** k / (1.0 - q)
    bound = abs(out.value) * (math.exp(2 * tail) - 1.0) if tail < 1 else abs(out.value)
    return make(out.value, out.tail_bound + bound, out.rigorous and tail < 0.5)


def qgamma(x: float, cfg: BackendConfig) -> FloatVal:
    """q-gamma at real x > 0: (1-q)^(1-x) * prod (1-q^(k+1))/(1-q^(x+k))."""
    if cfg.is_exact:
        raise UnsupportedRequestError("q-gamma is a numeric-backend function")
    if x <= 0:
        raise DomainError("qgamma needs x > 0")
    q = cfg.qf
    out = (1.0 - q) ** (1.0 - x)
    k = 0
    cutoff = cfg.tol / 10.0
    while True:
        num = 1.0 - q ** (k + 1)
        den = 1.0 - q ** (x + k)
        out *= num / den
        k += 1
        if abs(num / den - 1.0) < cutoff and k > 4:
            break
        if k > 100 * cfg.trunc:
            break
    # log of the remaining product is bounded by a geometric sum
    tail = (1.0 + abs(1.0 - q ** x)) * q ** (k + 1) / (1.0 - q)
    bound = abs(out) * (math.exp(2 * tail) - 1.0) if tail < 1 else abs(out)
    val = FloatVal(out, bound, tail < 0.5)
    if cfg.mode == COMPLEX:
        return ComplexVal(complex(val.value), val.tail_bound, val.rigorous)
    return val


def euler_gamma_q(cfg: BackendConfig) -> FloatVal:
    """q-deformed Euler constant: log(1-q) - log(q)/(1-q) * sum q^n/[n]_q."""
    if cfg.is_exact:
        raise UnsupportedRequestError("euler_gamma_q is a numeric-backend function")
    q = cfg.qf
    acc = 0.0
    n = 1
    while True:
        term = q ** n / qint_num(n, q)
        acc += term
        n += 1
        if q ** n <= cfg.tol * (1.0 - q) / 10.0 or n > 100 * cfg.trunc:
            break
    tail = q ** n / (1.0 - q)        # q^k/[k]_q <= q^k since [k]_q >= 1
    scale = abs(math.log(q)) / (1.0 - q)
    val = math.log(1.0 - q) - math.log(q) / (1.0 - q) * acc
    return FloatVal(val, scale * tail, True)
