"""Depth-one reductions through the basic hypergeometric circle.

Everything here feeds the double generating function for the values at
one large exponent followed by ones: the telescoped single-argument
series, the summation formula for the 2-phi-1 function, the log-gamma
expansion, and the bivariate exponential whose coefficients reproduce
those zeta values.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, log

from .backend import (COMPLEX, FLOAT, BackendConfig, ComplexVal, FloatVal,
                      euler_gamma_q, qgamma, qint_num)
from .errors import DivergenceError, UnsupportedRequestError
from .qseries import QSeries
from .zeta import EvalParams, eval_zeta

# ---------------------------------------------------------------------------
# Single-argument telescoping
# ---------------------------------------------------------------------------


def _tilde_direct(k: int, p: EvalParams):
    cfg = p.backend
    if cfg.is_exact:
        Q = cfg.order
        total = QSeries.zero(Q)
        n = 1
        while k * n < Q:
            num = QSeries([0] * (k * n) + [1], Q)
            den = (QSeries.one(Q) - QSeries([0] * min(n, Q) + [1], Q)) ** k
            total = total + num * den.invert() * QSeries([1, -1], Q) ** k
            n += 1
        return total
    q = cfg.qf
    total = 0.0
    n = 1
    while True:
        total += q ** (k * n) / qint_num(n, q) ** k
        n += 1
        if q ** (k * n) < cfg.tol * 1e-3 or n > 100 * p.cap:
            break
    tail = q ** (k * n) / (1 - q ** k)   # [n]_q >= 1
    return FloatVal(total, tail, True)


def eval_zeta_tilde(k: int, p: EvalParams):
    """sum over n of q^(kn)/[n]^k, checked against its telescoped form.

    For k >= 2 the telescoped form writes the value as (q-1)^(k-1) times
    the k=1 series plus a (q-1)-binomial combination of plain zeta values;
    both routes are computed and must agree.
    """
    if k < 1:
        raise DivergenceError("the telescoped series needs k >= 1")
    direct = _tilde_direct(k, p)
    if k == 1:
        return direct
    cfg = p.backend
    base = _tilde_direct(1, p)
    if cfg.is_exact:
        qm1 = QSeries([-1, 1], cfg.order)
        alt = base * qm1 ** (k - 1)
        for j in range(2, k + 1):
            alt = alt + qm1 ** (k - j) * eval_zeta((j,), p)
        if not (direct - alt).is_zero():
            raise AssertionError("telescoped series disagrees with direct sum")
        return direct
    qm1 = cfg.qf - 1.0
    alt = base.value * qm1 ** (k - 1)
    for j in range(2, k + 1):
        alt += qm1 ** (k - j) * eval_zeta((j,), p).value
    if abs(alt - direct.value) > 1e3 * (cfg.tol + direct.tail_bound + 1e-15):
        raise AssertionError("telescoped series disagrees with direct sum")
    return direct


# ---------------------------------------------------------------------------
# Basic hypergeometric function and Heine evaluation
# ---------------------------------------------------------------------------


def eval_2phi1(a, b, c, z, p: EvalParams):
    """The 2-phi-1 series at parameters q^a, q^b, q^c and argument z, |z|<1."""
    cfg = p.backend
    if cfg.is_exact:
        raise UnsupportedRequestError("2-phi-1 is a numeric-backend evaluator")
    if abs(z) >= 1:
        raise DivergenceError("2-phi-1 needs |z| < 1")
    q = cfg.qf
    term = 1.0 if cfg.mode == FLOAT else 1.0 + 0j
    zz = z if cfg.mode == FLOAT else complex(z)
    total = term
    n = 0
    while True:
        ratio = ((1 - q ** (a + n)) * (1 - q ** (b + n))
                 / ((1 - q ** (c + n)) * (1 - q ** (1 + n)))) * zz
        term = term * ratio
        total += term
        n += 1
        if abs(term) < cfg.tol * 1e-4 and n > 8:
            break
        if n > 100 * p.cap:
            break
    rho = abs(zz) * ((1 + q ** (a + n)) * (1 + q ** (b + n))
                     / ((1 - q ** (c + n)) * (1 - q ** (1 + n))))
    bound = abs(term) * rho / (1 - rho) if rho < 1 else abs(term) * 10
    if cfg.mode == FLOAT:
        return FloatVal(total, bound, rho < 1)
    return ComplexVal(total, bound, rho < 1)


def heine_rhs(a, b, c, p: EvalParams) -> FloatVal:
    """Gamma-quotient side of the Heine summation at argument q^(c-a-b)."""
    num = qgamma(c, p.backend) * qgamma(c - a - b, p.backend)
    den = qgamma(c - a, p.backend) * qgamma(c - b, p.backend)
    return num / den


# ---------------------------------------------------------------------------
# c-coefficients and the log-gamma expansion
# ---------------------------------------------------------------------------

_C_CACHE: dict = {}


def gen_func_coeff(k: int, p: EvalParams):
    """c_k = (1/k) sum_(j=2..k) (q-1)^(k-j) zeta[j]; zero below k = 2."""
    cfg = p.backend
    key = (k, cfg.fingerprint())
    hit = _C_CACHE.get(key)
    if hit is not None:
        return hit
    if k < 2:
        out = cfg.zero()
    elif cfg.is_exact:
        qm1 = QSeries([-1, 1], cfg.order)
        out = QSeries.zero(cfg.order)
        for j in range(2, k + 1):
            out = out + qm1 ** (k - j) * eval_zeta((j,), p)
        out = out * Fraction(1, k)
    else:
        qm1 = cfg.qf - 1.0
        acc = cfg.zero()
        for j in range(2, k + 1):
            acc = acc + eval_zeta((j,), p) * (qm1 ** (k - j))
        out = acc * (1.0 / k)
    _C_CACHE[key] = out
    return out


def log_qgamma_series(x: float, K: int, p: EvalParams):
    """Series for log Gamma_q(1+x): -gamma_q x + sum (-[x]_q)^k c_k, k >= 2.

    The alternating bracket power is forced by the derivation (and by the
    generating-function substitution [x]_q -> -u); statements of this
    expansion sometimes drop the sign.  Returns a FloatVal whose bound
    includes a geometric estimate of the dropped tail in |[x]_q|.
    """
    cfg = p.backend
    if cfg.is_exact:
        raise UnsupportedRequestError("log-gamma expansion is numeric")
    if not -1 < x < 1:
        raise DivergenceError("expansion valid for -1 < x < 1")
    if K < 2:
        raise ValueError("K must be >= 2")
    q = cfg.qf
    bx = (1 - q ** x) / (1 - q)
    gamma = euler_gamma_q(cfg)
    total = -x * gamma.value
    cmax = 0.0
    for k in range(2, K + 1):
        ck = gen_func_coeff(k, p)
        cmax = max(cmax, abs(ck.value))
        total += (-bx) ** k * ck.value
    r = abs(bx)
    tail = cmax * r ** (K + 1) / (1 - r) if r < 1 else float("inf")
    return FloatVal(total, abs(x) * gamma.tail_bound + tail, r < 1)


# ---------------------------------------------------------------------------
# The double generating function
# ---------------------------------------------------------------------------


class _BiPoly:
    """Bivariate polynomial in (u, v) with backend scalars, total degree cap."""

    __slots__ = ("terms", "cap", "cfg")

    def __init__(self, cfg: BackendConfig, cap: int, terms=None):
        self.cfg = cfg
        self.cap = cap
        self.terms = dict(terms or {})

    def copy(self):
        return _BiPoly(self.cfg, self.cap, self.terms)

    def add_term(self, i: int, j: int, scalar):
        if i + j > self.cap:
            return
        key = (i, j)
        cur = self.terms.get(key)
        self.terms[key] = scalar if cur is None else cur + scalar

    def __add__(self, other):
        out = self.copy()
        for (i, j), s in other.terms.items():
            out.add_term(i, j, s)
        return out

    def __mul__(self, other):
        out = _BiPoly(self.cfg, self.cap)
        for (i1, j1), s1 in self.terms.items():
            for (i2, j2), s2 in other.terms.items():
                if i1 + i2 + j1 + j2 <= self.cap:
                    out.add_term(i1 + i2, j1 + j2, s1 * s2)
        return out

    def scale(self, c):
        out = _BiPoly(self.cfg, self.cap)
        for key, s in self.terms.items():
            out.terms[key] = s * c
        return out

    def pow(self, n: int):
        out = _BiPoly(self.cfg, self.cap, {(0, 0): self.cfg.one()})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exp(self):
        """exp of a polynomial with no constant term."""
        if (0, 0) in self.terms:
            raise ValueError("exp needs zero constant term")
        out = _BiPoly(self.cfg, self.cap, {(0, 0): self.cfg.one()})
        power = _BiPoly(self.cfg, self.cap, {(0, 0): self.cfg.one()})
        for k in range(1, self.cap + 1):
            power = power * self
            if not power.terms:
                break
            out = out + power.scale(Fraction(1, factorial(k))
                                    if self.cfg.is_exact
                                    else 1.0 / factorial(k))
        return out

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), self.cfg.zero())


_DRIN_CACHE: dict = {}


def _drin_genfunc(cap: int, p: EvalParams) -> _BiPoly:
    cfg = p.backend
    key = (cap, cfg.fingerprint())
    hit = _DRIN_CACHE.get(key)
    if hit is not None:
        return hit
    one = cfg.one()
    onemq = (cfg.from_fraction(1) - cfg.q_scalar())
    mix = _BiPoly(cfg, cap, {(1, 0): one, (0, 1): one, (1, 1): onemq})
    arg = _BiPoly(cfg, cap)
    for k in range(2, cap + 1):
        ck = gen_func_coeff(k, p)
        piece = _BiPoly(cfg, cap)
        piece.add_term(k, 0, one)
        piece.add_term(0, k, one)
        piece = piece + mix.pow(k).scale(cfg.from_fraction(-1))
        arg = arg + piece.scale(ck)
    out = arg.exp()
    _DRIN_CACHE[key] = out
    return out


def drin_rhs_coeff(m: int, n: int, p: EvalParams, cap: int = None):
    """Coefficient of u^(m+1) v^(n+1) in 1 - exp(...): the generating-function
    side of the identity for values  (m+2, 1,...,1)  with n ones."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be >= 0")
    degree = m + n + 2
    if cap is None:
        cap = degree
    if degree > max(cap, 8 + 2):
        raise ValueError("degree above the generating-function cap")
    gf = _drin_genfunc(max(cap, degree), p)
    coeff = gf.coeff(m + 1, n + 1)
    # 1 - exp(...): the constant drops out of every positive-degree slot
    return p.backend.zero() - coeff


def euler_convolution_residual(m: int, p: EvalParams, statement_form: bool = False):
    """Residual of the convolution identity for values (m+2, 1).

    The default uses the sound leading term (m+2)*zeta[m+3]; passing
    statement_form=True swaps in (m+2)*zeta[m+2], which fails at m=0 and
    documents a typo in the usual statement of the identity.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    cfg = p.backend
    lead = eval_zeta((m + 2,) if statement_form else (m + 3,), p)
    mid = eval_zeta((m + 2,), p)
    onemq = cfg.from_fraction(1) - cfg.q_scalar()
    res = (cfg.from_fraction(2) * eval_zeta((m + 2, 1), p)
           - cfg.from_fraction(m + 2) * lead
           - onemq * cfg.from_fraction(m) * mid)
    for k in range(2, m + 2):
        res = res + eval_zeta((m + 3 - k,), p) * eval_zeta((k,), p)
    return res


def clear_caches():
    _C_CACHE.clear()
    _DRIN_CACHE.clear()
