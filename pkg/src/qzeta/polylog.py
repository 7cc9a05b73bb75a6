"""Multiple q-polylogarithms in both parameterizations.

The lambda form indexes by gap variables with denominator parameters b_k;
substituting the partial sums turns it into the Li form over strictly
decreasing indices with numerator parameters x_k, related by
y_k = 1/(x_1*...*x_k).  Convergence requires the outermost numerator to be
strictly inside the unit disk and no inner ratio to leave it, which is the
conservative domain enforced here.
"""

from __future__ import annotations

from .backend import COMPLEX, FLOAT, BackendConfig, ComplexVal, FloatVal
from .errors import DivergenceError, UnsupportedRequestError
from .zeta import EvalParams


def _require_numeric(cfg: BackendConfig, name: str):
    if cfg.is_exact:
        raise UnsupportedRequestError(f"{name} is a numeric-backend evaluator")


def _ratio_weights(b):
    """Per-level numerator ratios x_k: x_1 = 1/b_1, x_k = b_(k-1)/b_k."""
    xs = []
    prev = 1
    for bk in b:
        if bk == 0:
            raise DivergenceError("zero denominator parameter")
        xs.append(prev / bk)
        prev = bk
    return xs


def _check_x_domain(xs):
    if not xs:
        return
    if abs(xs[0]) >= 1:
        raise DivergenceError(
            f"outermost ratio {abs(xs[0]):.4g} >= 1: series diverges")
    for x in xs[1:]:
        if abs(x) > 1 + 1e-12:
            raise DivergenceError(
                f"inner ratio {abs(x):.4g} > 1: series diverges")


def _nested_sum(ss, xs, q, N):
    """sum over n1 > ... > nm > 0 of prod x_k^(n_k) / [n_k]^(s_k)."""
    m = len(ss)
    if m == 0:
        return 1.0
    prefix = None
    for j in range(m - 1, -1, -1):
        s = ss[j]
        x = xs[j]
        acc = 0.0 * x
        new_prefix = [0.0 * x] * (N + 1)
        xp = 1
        for k in range(1, N + 1):
            xp = xp * x
            w = xp * ((1 - q) / (1 - q ** k)) ** s
            F = w if prefix is None else w * prefix[k - 1]
            acc = acc + F
            new_prefix[k] = acc
        prefix = new_prefix
    return prefix[N]


def _tail_bound(x0, m, N):
    """sum over k > N of |x0|^k k^(m-1); inner factors are all <= 1."""
    x = abs(x0)
    tail = 0.0
    powx = x ** (N + 1)
    for k in range(N + 1, N + 400):
        tail += powx * k ** (m - 1)
        powx *= x
    grow = ((N + 402) / (N + 401)) ** (m - 1) * x
    if grow < 1:
        tail += powx * (N + 401) ** (m - 1) / (1 - grow)
    return tail


def _wrap(cfg: BackendConfig, value, bound, rigorous=True):
    if cfg.mode == FLOAT:
        if isinstance(value, complex):
            value = value.real
        return FloatVal(value, bound, rigorous)
    return ComplexVal(complex(value), bound, rigorous)


def eval_lambda(s, b, p: EvalParams):
    """The gap-indexed multiple q-polylogarithm with denominators b_k."""
    cfg = p.backend
    _require_numeric(cfg, "eval_lambda")
    ss = [int(v) for v in s]
    if any(v < 1 for v in ss):
        raise DivergenceError("exponents must be positive integers")
    if len(ss) != len(list(b)):
        raise ValueError("argument lists must have equal length")
    bs = [complex(v) if cfg.mode == COMPLEX else v for v in b]
    xs = _ratio_weights(bs)
    _check_x_domain(xs)
    q = cfg.qf
    N = p.cap
    v1 = _nested_sum(ss, xs, q, N)
    v2 = _nested_sum(ss, xs, q, 2 * N)
    bound = abs(v2 - v1) + _tail_bound(xs[0], len(ss), 2 * N) if ss else 0.0
    return _wrap(cfg, v2, bound)


def eval_Li(s, x, p: EvalParams):
    """The strictly-decreasing-index form with numerators x_k."""
    cfg = p.backend
    _require_numeric(cfg, "eval_Li")
    ss = [int(v) for v in s]
    if any(v < 1 for v in ss):
        raise DivergenceError("exponents must be positive integers")
    xs = [complex(v) if cfg.mode == COMPLEX else v for v in x]
    if len(ss) != len(xs):
        raise ValueError("argument lists must have equal length")
    _check_x_domain(xs)
    q = cfg.qf
    N = p.cap
    v1 = _nested_sum(ss, xs, q, N)
    v2 = _nested_sum(ss, xs, q, 2 * N)
    bound = abs(v2 - v1) + _tail_bound(xs[0], len(ss), 2 * N) if ss else 0.0
    return _wrap(cfg, v2, bound)


def lambda_denominators(x):
    """Translate Li numerators into lambda denominators: y_k = prod 1/x_j."""
    ys = []
    acc = 1
    for xk in x:
        acc = acc * xk
        ys.append(1 / acc)
    return ys


def roots_of_unity(n: int):
    import cmath

    return [cmath.exp(2j * cmath.pi * k / n) for k in range(n)]
