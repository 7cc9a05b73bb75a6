"""Evaluation of nested q-zeta sums in every backend.

The exact backend works modulo q^Q: an index tuple (k1 > ... > km) only
touches coefficients from q^(sum (s_j - 1) k_j) upward, so a finite prefix
sum captures the series exactly.  The recurrence runs innermost-out over
prefix sums, and each level's factor

    q^((s-1)k) / [k]^s  =  (1-q)^s * q^((s-1)k) / (1-q^k)^s

is integral up to the global (1-q)^weight, so the hot loop is pure integer
arithmetic on dense coefficient lists.

The numeric backends run the same recurrence in floating point with an
index cap and a tail bound (rigorous for the outermost geometric factor).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .backend import COMPLEX, EXACT, FLOAT, BackendConfig, ComplexVal, FloatVal
from .errors import DivergenceError
from .qpoly import QPoly
from .qseries import QSeries
from .stuffle import ZetaCombo, ZetaExpr
from .words import Composition


@dataclass(frozen=True)
class EvalParams:
    backend: BackendConfig
    index_cap: int = None

    def __post_init__(self):
        if self.index_cap is not None and self.index_cap < 1:
            raise ValueError("index_cap must be >= 1")

    @property
    def cap(self) -> int:
        return self.index_cap if self.index_cap is not None else self.backend.trunc


def exact_params(order: int = 25) -> EvalParams:
    return EvalParams(BackendConfig(EXACT, order=order))


def float_params(q, trunc: int = 200, tol: float = 1e-10) -> EvalParams:
    return EvalParams(BackendConfig(FLOAT, q=q, trunc=trunc, tol=tol))


def complex_params(q, trunc: int = 200, tol: float = 1e-10) -> EvalParams:
    return EvalParams(BackendConfig(COMPLEX, q=q, trunc=trunc, tol=tol))


# ---------------------------------------------------------------------------
# Exact kernel
# ---------------------------------------------------------------------------

_EXACT_CACHE: dict = {}


def _mul_sparse_dense(pairs, dense, Q):
    """(sum c q^e over pairs) * dense, truncated to Q, integer coefficients."""
    out = [0] * Q
    for e, c in pairs:
        limit = Q - e
        for t in range(min(len(dense), limit)):
            v = dense[t]
            if v:
                out[e + t] += c * v
    return out


def _scaled_zeta_ints(parts: tuple, Q: int) -> list:
    """Integer coefficients of z[parts] / (1-q)^weight modulo q^Q."""
    key = (parts, Q)
    hit = _EXACT_CACHE.get(key)
    if hit is not None:
        return hit
    m = len(parts)
    if m == 0:
        out = [1] + [0] * (Q - 1)
        _EXACT_CACHE[key] = out
        return out
    # outermost index beyond K contributes only at order >= Q
    K = (Q - 1) // max(1, parts[0] - 1)
    prefix = None  # prefix sums of the level below, indexed 0..K
    for j in range(m - 1, -1, -1):
        s = parts[j]
        acc = [0] * Q
        new_prefix = [None] * (K + 1)
        new_prefix[0] = acc[:]
        for k in range(1, K + 1):
            base = (s - 1) * k
            factor = []
            e, i = base, 0
            while e < Q:
                factor.append((e, comb(i + s - 1, s - 1)))
                i += 1
                e += k
            if factor:
                if prefix is None:
                    F = [0] * Q
                    for e, c in factor:
                        F[e] += c
                else:
                    F = _mul_sparse_dense(factor, prefix[k - 1], Q)
                acc = [a + b for a, b in zip(acc, F)]
            new_prefix[k] = acc[:]
        prefix = new_prefix
    out = prefix[K]
    _EXACT_CACHE[key] = out
    return out


def zeta_series(s, order: int) -> QSeries:
    """Exact value of z[s] modulo q^order."""
    s = s if isinstance(s, Composition) else Composition(s)
    if len(s) and not s.is_admissible():
        raise DivergenceError(f"z[{s}] diverges: leading part must be >= 2")
    ints = _scaled_zeta_ints(s.parts, order)
    series = QSeries(ints, order)
    onemq = QSeries([1, -1], order) ** s.weight
    return series * onemq


# ---------------------------------------------------------------------------
# Numeric kernel
# ---------------------------------------------------------------------------

_NUM_CACHE: dict = {}


def _numeric_zeta(parts: tuple, q, N: int):
    """(value, tail_bound) for z[parts] truncated at outer index N."""
    key = (parts, q, N)
    hit = _NUM_CACHE.get(key)
    if hit is not None:
        return hit
    m = len(parts)
    if m == 0:
        return 1.0, 0.0
    one = 1.0 if not isinstance(q, complex) else 1.0 + 0j
    prefix = None
    for j in range(m - 1, -1, -1):
        s = parts[j]
        acc = 0.0 * one
        new_prefix = [0.0 * one] * (N + 1)
        for k in range(1, N + 1):
            qk = q ** k
            w = qk ** (s - 1) * ((1 - q) / (1 - qk)) ** s
            F = w if prefix is None else w * prefix[k - 1]
            acc = acc + F
            new_prefix[k] = acc
        prefix = new_prefix
    value = prefix[N]
    # tail: every inner factor is <= 1, at most C(k-1, m-1) chains below k
    x = abs(q) ** (parts[0] - 1)
    tail = 0.0
    powx = x ** (N + 1)
    for k in range(N + 1, N + 400):
        tail += powx * k ** (m - 1)
        powx *= x
    grow = ((N + 402) / (N + 401)) ** (m - 1) * x
    if grow < 1:
        tail += powx * (N + 401) ** (m - 1) / (1 - grow)
    result = (value, tail)
    _NUM_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# Public evaluators
# ---------------------------------------------------------------------------


def eval_zeta(s, p: EvalParams):
    """The multiple q-zeta value z[s]; the empty list evaluates to 1."""
    s = s if isinstance(s, Composition) else Composition(s)
    if len(s) and not s.is_admissible():
        raise DivergenceError(f"z[{s}] diverges: leading part must be >= 2")
    cfg = p.backend
    if cfg.is_exact:
        return zeta_series(s, cfg.order)
    if cfg.mode == FLOAT:
        value, tail = _numeric_zeta(s.parts, cfg.qf, p.cap)
        return FloatVal(value, tail, True)
    value, tail = _numeric_zeta(s.parts, complex(cfg.qf), p.cap)
    return ComplexVal(value, tail, True)


def _poly_scalar(poly: QPoly, cfg: BackendConfig):
    if cfg.is_exact:
        return QSeries.from_poly(poly, cfg.order)
    if cfg.mode == FLOAT:
        return FloatVal(float(poly.eval(Fraction(cfg.q)) if isinstance(cfg.q, Fraction)
                               else poly.eval(cfg.qf)))
    return ComplexVal(complex(poly.eval(complex(cfg.qf))))


def eval_zeta_combo(c, p: EvalParams):
    """Value of a ZetaCombo or ZetaExpr under the configured backend."""
    cfg = p.backend
    total = cfg.zero()
    if isinstance(c, ZetaCombo):
        for comp, coeff in c.items():
            total = total + _poly_scalar(coeff, cfg) * eval_zeta(comp, p)
        return total
    if isinstance(c, ZetaExpr):
        for key, coeff in c.items():
            term = _poly_scalar(coeff, cfg)
            for comp in key:
                term = term * eval_zeta(comp, p)
            total = total + term
        return total
    raise TypeError(f"cannot evaluate {type(c).__name__}")


def weak_compositions(total: int, n: int):
    """All length-n tuples of non-negative integers summing to ``total``."""
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, n - 1):
            yield (first,) + rest


def eval_Z(s, m: int, p: EvalParams):
    """Z[s; m]: the sum of z[s + c] over weak compositions c of m."""
    s = s if isinstance(s, Composition) else Composition(s)
    if not len(s):
        raise DivergenceError("Z needs a nonempty argument list")
    s.require_admissible("Z argument")
    if m < 0:
        raise ValueError("Z needs m >= 0")
    total = p.backend.zero()
    for c in weak_compositions(m, s.depth):
        shifted = Composition(tuple(a + b for a, b in zip(s.parts, c)))
        total = total + eval_zeta(shifted, p)
    return total


def clear_caches():
    _EXACT_CACHE.clear()
    _NUM_CACHE.clear()
