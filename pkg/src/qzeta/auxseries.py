"""Auxiliary nested series: the cyclic-sum helpers T and S, and the
pole-parameterized family behind the duality difference equation.

T and S augment an argument list with one extra index coupled to the
outermost one through q^d/[d]; they telescope the cyclic sum formula.
The f-family replaces each plain inner index j by 1/([m_j] - theta q^(m_j))
and carries a per-block offset vector d that shifts the block's leading
index, the shape produced by the difference equation's index shifts.
"""

from __future__ import annotations

from .backend import COMPLEX, FLOAT, BackendConfig, ComplexVal, FloatVal
from .errors import DivergenceError, PoleError, UnsupportedRequestError
from .qseries import QSeries
from .words import Word
from .zeta import EvalParams

_DOUBLING_SLACK = 4.0


def _wrap(cfg: BackendConfig, v_lo, v_hi):
    """Package a doubling-checked value; the bound is flagged heuristic."""
    bound = _DOUBLING_SLACK * abs(v_hi - v_lo) + 1e-15
    if cfg.mode == FLOAT:
        return FloatVal(v_hi.real if isinstance(v_hi, complex) else v_hi, bound, False)
    return ComplexVal(complex(v_hi), bound, False)


# ---------------------------------------------------------------------------
# T and S, numerically
# ---------------------------------------------------------------------------


def _t_sum(ss, q, N):
    n = len(ss)
    total = 0.0
    for k1 in range(1, N + 1):
        w1 = q ** ((ss[0] - 1) * k1) * ((1 - q) / (1 - q ** k1)) ** ss[0]
        # extra index t: 0 <= t < k_n, weight q^(k1-t)/[k1-t]
        prefix = [0.0] * k1
        acc = 0.0
        for t in range(k1):
            d = k1 - t
            acc += q ** d * (1 - q) / (1 - q ** d)
            prefix[t] = acc
        for j in range(n - 1, 0, -1):
            s = ss[j]
            acc = 0.0
            new_prefix = [0.0] * k1
            for k in range(1, k1):
                if prefix[k - 1]:
                    w = q ** ((s - 1) * k) * ((1 - q) / (1 - q ** k)) ** s
                    acc += w * prefix[k - 1]
                new_prefix[k] = acc
            prefix = new_prefix
        total += w1 * prefix[k1 - 1]
    return total


def _s_sum(ss, q, N):
    n = len(ss) - 1
    s_last = ss[-1]
    total = 0.0
    for k1 in range(2, N + 1):
        w1 = q ** k1 * q ** ((ss[0] - 1) * k1) * ((1 - q) / (1 - q ** k1)) ** ss[0]
        prefix = [0.0] * k1
        acc = 0.0
        for t in range(1, k1):
            d = k1 - t
            w_last = q ** ((s_last - 1) * t) * ((1 - q) / (1 - q ** t)) ** s_last
            acc += w_last * (1 - q) / (1 - q ** d)
            prefix[t] = acc
        for j in range(n - 1, 0, -1):
            s = ss[j]
            acc = 0.0
            new_prefix = [0.0] * k1
            for k in range(1, k1):
                if prefix[k - 1]:
                    w = q ** ((s - 1) * k) * ((1 - q) / (1 - q ** k)) ** s
                    acc += w * prefix[k - 1]
                new_prefix[k] = acc
            prefix = new_prefix
        total += w1 * prefix[k1 - 1]
    return total


# ---------------------------------------------------------------------------
# T and S, exactly
# ---------------------------------------------------------------------------


class _GeomCache:
    """q^((s-1)k)/[k]^s as exact series, cached per (s, k)."""

    def __init__(self, order: int):
        self.order = order
        self.table = {}

    def __call__(self, s: int, k: int) -> QSeries:
        key = (s, k)
        hit = self.table.get(key)
        if hit is None:
            Q = self.order
            num = QSeries.zero(Q)
            base = (s - 1) * k
            if base < Q:
                num.coeffs[base] = 1
            den = (QSeries.one(Q) - QSeries([0] * min(k, Q) + [1], Q)) ** s
            hit = num * den.invert() * QSeries([1, -1], Q) ** s
            self.table[key] = hit
        return hit


def _middle_chain(ss_mid, geom, bottom: int, K: int, Q: int):
    """Prefix sums over chains k_first > ... > k_last > bottom.

    Returns chain[k] = sum over chains whose top index is <= k, or None
    when there are no middle levels.
    """
    chain = None
    for s in reversed(ss_mid):
        acc = QSeries.zero(Q)
        new_chain = [QSeries.zero(Q)] * (bottom + 1)
        for k in range(bottom + 1, K + 1):
            inner = QSeries.one(Q) if chain is None else chain[k - 1]
            if not inner.is_zero():
                acc = acc + geom(s, k) * inner
            new_chain.append(acc)
        chain = new_chain
    return chain


def _exact_t(ss, Q: int) -> QSeries:
    n = len(ss)
    K = 2 * Q + n + 2
    geom = _GeomCache(Q)
    total = QSeries.zero(Q)
    for bottom in range(0, K):
        chain = _middle_chain(ss[1:], geom, bottom, K, Q)
        for k1 in range(bottom + n, K + 1):
            d = k1 - bottom
            if d + (ss[0] - 1) * k1 >= Q:
                break
            inner = QSeries.one(Q) if chain is None else chain[k1 - 1]
            if inner.is_zero():
                continue
            pair = geom(1, d) * QSeries([0] * d + [1], Q)    # q^d/[d]
            total = total + geom(ss[0], k1) * pair * inner
    return total


def _exact_s(ss, Q: int) -> QSeries:
    n = len(ss) - 1
    s_last = ss[-1]
    K = 2 * Q + n + 3
    geom = _GeomCache(Q)
    total = QSeries.zero(Q)
    for bottom in range(1, K):
        chain = _middle_chain(ss[1:n], geom, bottom, K, Q)
        for k1 in range(bottom + n, K + 1):
            d = k1 - bottom
            if s_last == 0:
                # q^(k1)/[d] joins q^(-bottom) from the zero exponent: q^d/[d]
                floor = d + (ss[0] - 1) * k1
            else:
                floor = k1 + (ss[0] - 1) * k1 + (s_last - 1) * bottom
            if floor >= Q:
                break
            inner = QSeries.one(Q) if chain is None else chain[k1 - 1]
            if inner.is_zero():
                continue
            if s_last == 0:
                extra = geom(1, d) * QSeries([0] * d + [1], Q)
            else:
                if k1 >= Q:
                    continue
                extra = (geom(1, d) * QSeries([0] * k1 + [1], Q)
                         * geom(s_last, bottom))
            total = total + geom(ss[0], k1) * extra * inner
    return total


def eval_T(s, p: EvalParams):
    """T[s_1..s_n]: one extra index below the chain, tied to the top."""
    ss = [int(v) for v in s]
    if not ss or any(v < 1 for v in ss):
        raise DivergenceError("T needs positive integer arguments")
    if not any(v > 1 for v in ss):
        raise DivergenceError("T diverges unless some argument exceeds 1")
    cfg = p.backend
    if cfg.is_exact:
        return _exact_t(ss, cfg.order)
    q = cfg.qf
    N = p.cap
    return _wrap(cfg, _t_sum(ss, q, N), _t_sum(ss, q, 2 * N))


def eval_S(s, p: EvalParams):
    """S[s_1..s_(n+1)]: like T but the extra index carries its own exponent."""
    ss = [int(v) for v in s]
    if len(ss) < 2:
        raise DivergenceError("S needs at least two arguments")
    if any(v < 1 for v in ss[:-1]) or ss[-1] < 0:
        raise DivergenceError("S needs positive arguments and a final one >= 0")
    if not any(v > 1 for v in ss[:-1]) and ss[-1] == 0:
        raise DivergenceError("S diverges: no argument exceeds 1 and the last is 0")
    cfg = p.backend
    if cfg.is_exact:
        return _exact_s(ss, cfg.order)
    q = cfg.qf
    N = p.cap
    return _wrap(cfg, _s_sum(ss, q, N), _s_sum(ss, q, 2 * N))


# ---------------------------------------------------------------------------
# The f-family
# ---------------------------------------------------------------------------


class FWordSpec:
    """Blocks (a_i, b_i) with a per-block offset vector d in {0,1}^s.

    Exponents may drop to zero inside difference-equation bookkeeping; the
    last block must keep b_s >= 1, and d_s = 0 whenever b_s = 1 so no
    shifted index reaches zero.
    """

    __slots__ = ("blocks", "d")

    def __init__(self, blocks, d=None):
        blocks = tuple((int(a), int(b)) for a, b in blocks)
        if not blocks:
            raise ValueError("need at least one block")
        if any(a < 0 or b < 0 for a, b in blocks):
            raise ValueError("block exponents must be >= 0")
        if blocks[-1][1] < 1:
            raise ValueError("the last block must end with at least one y")
        if d is None:
            d = (0,) * len(blocks)
        d = tuple(int(v) for v in d)
        if len(d) != len(blocks) or any(v not in (0, 1) for v in d):
            raise ValueError("offsets must form a 0/1 vector, one per block")
        if blocks[-1][1] == 1 and d[-1] == 1 and blocks[-1][0] > 0:
            raise ValueError("offset on a singleton final block divides by zero")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *a):
        raise AttributeError("FWordSpec is immutable")

    @classmethod
    def from_word(cls, w: Word, d=None) -> "FWordSpec":
        if isinstance(w, str):
            w = Word(w)
        return cls(w.blocks(), d)

    @property
    def total_degree(self) -> int:
        return sum(a + b for a, b in self.blocks)

    def __repr__(self):
        return f"FWordSpec({list(self.blocks)!r}, d={list(self.d)!r})"


def _fold_slots(spec: FWordSpec):
    """Slot list, outermost first: each entry is the x-powers (a, d) bound
    to that index.  Blocks with no y of their own attach to the next lead."""
    slots = []
    carry = []
    for (a, b), dv in zip(spec.blocks, spec.d):
        if b == 0:
            if a > 0:
                carry.append((a, dv))
            continue
        powers = carry + ([(a, dv)] if a > 0 else [])
        carry = []
        slots.append(powers)
        slots.extend([[]] * (b - 1))
    if carry:
        raise PoleError("trailing x-powers have no index to attach to")
    return slots


def _f_sum(spec: FWordSpec, theta, q, N):
    slots = _fold_slots(spec)
    zero = 0.0 * theta + 0.0
    prefix = None
    for powers in reversed(slots):
        acc = zero
        new_prefix = [zero] * (N + 1)
        for k in range(1, N + 1):
            inner = 1.0 if prefix is None else prefix[k - 1]
            if inner == 0.0:
                new_prefix[k] = acc
                continue
            den = (1 - q ** k) / (1 - q) - theta * q ** k
            if abs(den) < 1e-13:
                raise PoleError(f"denominator vanishes at index {k}")
            w = 1.0 / den
            for a, dv in powers:
                kk = k - dv
                if kk <= 0:
                    raise PoleError("offset shifts an index to zero")
                w *= q ** (a * kk) * ((1 - q) / (1 - q ** kk)) ** a
            acc = acc + w * inner
            new_prefix[k] = acc
        prefix = new_prefix
    return prefix[N]


def eval_f(spec: FWordSpec, theta, p: EvalParams):
    """The theta-deformed nested series attached to a block word."""
    cfg = p.backend
    if cfg.is_exact:
        raise UnsupportedRequestError("the f-family is evaluated numerically")
    if spec.total_degree < 2:
        raise DivergenceError("need total degree >= 2 for convergence")
    q = cfg.qf
    th = complex(theta) if cfg.mode == COMPLEX else float(theta)
    if abs(th) >= 1.0 / q:
        raise PoleError(f"theta={theta} is not below the pole scale 1/q")
    N = p.cap
    return _wrap(cfg, _f_sum(spec, th, q, N), _f_sum(spec, th, q, 2 * N))


def f_theta_series(w, M: int, p: EvalParams):
    """Coefficients of theta^0..theta^M of the deformed zeta of a word.

    Expands the substitution automorphism symbolically and evaluates each
    coefficient through the word-to-arguments map; entry m equals
    Z[args(w); m].
    """
    from .derivations import sigma_theta
    from .words import composition_of_word
    from .zeta import eval_zeta

    if isinstance(w, str):
        w = Word(w)
    series = sigma_theta(w, M)
    out = []
    for coeff in series.coeffs:
        total = p.backend.zero()
        for word, c in coeff.items():
            total = total + p.backend.from_fraction(c) * eval_zeta(
                composition_of_word(word), p)
        out.append(total)
    return out
