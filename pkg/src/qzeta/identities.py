"""Registry of verifiable identities.

Every entry computes a residual (left side minus right side) for one named
identity at given parameters.  In the exact backend a check passes only if
the residual is the identically-zero series; numeric backends pass when the
residual magnitude stays within tolerance plus the value's error bound.
Checks marked soft are q->1 trend observations and never fail a suite.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fnmatch import fnmatch

from .auxseries import FWordSpec, eval_S, eval_T, eval_f, f_theta_series
from .backend import (COMPLEX, EXACT, FLOAT, BackendConfig, ComplexVal,
                      FloatVal, qgamma, qint_num)
from .derivations import check_exp_partial, derivation_D, derivation_partial
from .errors import ParameterError, RegistryError
from .genfunc import (drin_rhs_coeff, euler_convolution_residual,
                      log_qgamma_series)
from .jackson import multiple_jackson_zeta
from .polylog import eval_lambda, roots_of_unity
from .qseries import QSeries
from .stuffle import (ZetaCombo, parity_reduce, partition_identity_sides,
                      period1_reduce, nproduct_expand, qstuffle_product)
from .words import (BlockForm, Composition, Word, WordPoly,
                    admissible_compositions, composition_of_word,
                    compositions_of_weight, dual_composition, tau,
                    word_of_composition)
from .zeta import EvalParams, eval_Z, eval_zeta, eval_zeta_combo

DEFAULT_EXACT = BackendConfig(EXACT, order=20)
DEFAULT_FLOAT = BackendConfig(FLOAT, q=0.5, trunc=64, tol=1e-8)
DEFAULT_COMPLEX = BackendConfig(COMPLEX, q=0.5, trunc=64, tol=1e-8)

THETA_SAMPLES = (-0.7, -0.3, 0.2, 0.5)


@dataclass
class CheckReport:
    id: str
    params: dict
    backend: tuple
    residual: str
    residual_norm: float
    verdict: bool
    ms: float
    hard: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "backend": list(self.backend),
            "residual": self.residual,
            "residual_norm": self.residual_norm,
            "verdict": "pass" if self.verdict else "fail",
            "ms": round(self.ms, 3),
            "hard": self.hard,
            "note": self.note,
        }


def _plain(v):
    if isinstance(v, Composition):
        return list(v.parts)
    if isinstance(v, Word):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    return v


@dataclass
class IdentityCheck:
    id: str
    theorem_ref: str
    params_doc: dict
    modes: tuple
    fn: object
    sweep: object
    hard: bool = True
    expect_nonzero: bool = False


_REGISTRY: dict = {}


def _register(entry: IdentityCheck):
    _REGISTRY[entry.id] = entry


def list_identities() -> list:
    """Catalog of registered checks: id, reference, parameter schema."""
    return [
        {"id": e.id, "theorem_ref": e.theorem_ref, "params": dict(e.params_doc),
         "modes": list(e.modes), "hard": e.hard}
        for e in _REGISTRY.values()
    ]


def _residual_zero(res, cfg: BackendConfig) -> tuple:
    """(is_zero, norm) for one residual scalar."""
    if isinstance(res, QSeries):
        nonzero = [abs(c) for c in res.coeffs if c]
        return (not nonzero, float(max(nonzero)) if nonzero else 0.0)
    if isinstance(res, (FloatVal, ComplexVal)):
        return (res.is_zero_within(cfg.tol), abs(res))
    value = abs(res)
    return (value <= cfg.tol, float(value))


def verify(check_id: str, params: dict, backend: BackendConfig) -> CheckReport:
    """Run one identity check and report residual, verdict and timing."""
    entry = _REGISTRY.get(check_id)
    if entry is None:
        raise RegistryError(check_id)
    note = ""
    cfg = backend
    if cfg.mode not in entry.modes:
        cfg = {EXACT: DEFAULT_EXACT, FLOAT: DEFAULT_FLOAT,
               COMPLEX: DEFAULT_COMPLEX}[entry.modes[0]]
        if cfg.mode == FLOAT and backend.mode == COMPLEX:
            cfg = DEFAULT_FLOAT
        note = f"ran on fallback backend {cfg.mode!r}"
    started = time.perf_counter()
    out = entry.fn(dict(params), EvalParams(cfg))
    elapsed = (time.perf_counter() - started) * 1000.0
    override = None
    if isinstance(out, tuple):
        residuals, override, extra = out
        note = (note + "; " + extra).strip("; ") if extra else note
    else:
        residuals = out
    flags, norms = [], [0.0]
    for res in residuals:
        ok, norm = _residual_zero(res, cfg)
        flags.append(ok)
        norms.append(norm)
    verdict = all(flags)
    if entry.expect_nonzero:
        verdict = not verdict
    if override is not None:
        verdict = override
    text = "0" if all(flags) else f"max|residual| = {max(norms):.3g}"
    if residuals and isinstance(residuals[0], QSeries) and not all(flags):
        text = str(residuals[0])
    return CheckReport(check_id, params, cfg.fingerprint(), text, max(norms),
                       verdict, elapsed, entry.hard, note)


def run_suite(pattern: str, backend: BackendConfig, sweep=None) -> list:
    """Run every matching check over its parameter sweep, in registry order."""
    if not pattern:
        return []
    reports = []
    for check_id, entry in _REGISTRY.items():
        if not fnmatch(check_id, pattern) and pattern != "all":
            continue
        param_sets = sweep if sweep is not None else entry.sweep()
        for params in param_sets:
            reports.append(verify(check_id, params, backend))
    return reports


def suite_summary(reports) -> dict:
    hard_fail = sum(1 for r in reports if not r.verdict and r.hard)
    soft_fail = sum(1 for r in reports if not r.verdict and not r.hard)
    return {
        "total": len(reports),
        "passed": sum(1 for r in reports if r.verdict),
        "hard_failures": hard_fail,
        "soft_failures": soft_fail,
        "ms": round(sum(r.ms for r in reports), 1),
    }


def reports_to_json(reports) -> str:
    return json.dumps({"reports": [r.to_dict() for r in reports],
                       "summary": suite_summary(reports)}, indent=2)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["id", "params", "verdict", "residual_norm", "ms"])
    for r in reports:
        writer.writerow([r.id, json.dumps({k: _plain(v) for k, v in r.params.items()}),
                         "pass" if r.verdict else "fail",
                         f"{r.residual_norm:.6g}", f"{r.ms:.3f}"])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _comp(v) -> Composition:
    if isinstance(v, Composition):
        return v
    return Composition(tuple(v))


def _zeta_hat(p: WordPoly, ep: EvalParams):
    """Evaluate a word polynomial through the word-to-arguments map."""
    total = ep.backend.zero()
    for w, c in p.items():
        total = total + ep.backend.from_fraction(c) * eval_zeta(
            composition_of_word(w), ep)
    return total


def _diff(a, b):
    return a - b


# ---------------------------------------------------------------------------
# Check implementations
# ---------------------------------------------------------------------------


def _chk_qstuffle(params, ep):
    s, t = _comp(params["s"]), _comp(params["t"])
    combo = qstuffle_product(s, t)
    return [_diff(eval_zeta_combo(combo, ep),
                  eval_zeta(s, ep) * eval_zeta(t, ep))]


def _chk_period1(params, ep):
    s, n = int(params["s"]), int(params["n"])
    expr = period1_reduce(s, n)
    return [_diff(eval_zeta_combo(expr, ep), eval_zeta((s,) * n, ep))]


def _chk_nproduct(params, ep):
    ss = [int(v) for v in params["ss"]]
    combo = nproduct_expand(ss)
    prod = ep.backend.one()
    for s in ss:
        prod = prod * eval_zeta((s,), ep)
    return [_diff(eval_zeta_combo(combo, ep), prod)]


def _chk_partition(params, ep):
    ss = [int(v) for v in params["ss"]]
    lhs, rhs = partition_identity_sides(ss)
    return [_diff(eval_zeta_combo(lhs, ep), eval_zeta_combo(rhs, ep))]


def _chk_parity(params, ep):
    s = _comp(params["s"])
    expr = parity_reduce(s)
    lhs = eval_zeta(s, ep)
    signed = eval_zeta(s.reverse(), ep)
    lhs = lhs + signed if s.depth % 2 == 0 else lhs - signed
    return [_diff(lhs, eval_zeta_combo(expr, ep))]


def _chk_gen_duality(params, ep):
    blocks = BlockForm(params["blocks"])
    m = int(params["m"])
    p, pd = blocks.to_composition(), blocks.dual().to_composition()
    return [_diff(eval_Z(p, m, ep), eval_Z(pd, m, ep))]


def _chk_duality(params, ep):
    s = _comp(params["s"])
    return [_diff(eval_zeta(s, ep), eval_zeta(dual_composition(s), ep))]


def _chk_sum_formula(params, ep):
    k, n = int(params["k"]), int(params["n"])
    if not 0 < n <= k:
        raise ParameterError("sum formula needs 0 < n <= k")
    total = ep.backend.zero()
    for c in compositions_of_weight(k, admissible_only=False):
        if c.depth != n:
            continue
        total = total + eval_zeta((c[0] + 1,) + tuple(c.parts[1:]), ep)
    return [_diff(total, eval_zeta((k + 1,), ep))]


def _chk_f_equals_g(params, ep):
    w = Word(params["w"]) if not isinstance(params["w"], Word) else params["w"]
    M = int(params.get("M", 3))
    a = f_theta_series(w, M, ep)
    b = f_theta_series(tau(w), M, ep)
    return [_diff(x, y) for x, y in zip(a, b)]


def _iverson_weight(delta, eps, base, onemq):
    dots = sum(d * e for d, e in zip(delta, eps))
    bars = sum((1 - d) * (1 - e) for d, e in zip(delta, eps))
    return (base ** bars) * (onemq ** dots), bars, dots


def _chk_qdiff(params, ep):
    blocks = [(int(a), int(b)) for a, b in params["blocks"]]
    theta = float(params["theta"])
    s = len(blocks)
    if sum(a + b for a, b in blocks) <= 2:
        raise ParameterError("difference equation needs total degree > 2")
    if any(a < 1 or b < 1 for a, b in blocks):
        raise ParameterError("difference equation needs positive block exponents")
    q = ep.backend.qf
    thp = q * theta - 1.0
    onemq = 1.0 - q

    lhs = ep.backend.zero()
    for dbits in range(2 ** s):
        delta = [(dbits >> i) & 1 for i in range(s)]
        if delta[0] >= blocks[0][0]:
            continue
        for ebits in range(2 ** s):
            eps = [(ebits >> i) & 1 for i in range(s)]
            if eps[s - 1] >= blocks[s - 1][1]:
                continue
            weight, bars, dots = _iverson_weight(delta, eps, -theta, onemq)
            spec = FWordSpec([(a - d, b - e) for (a, b), d, e
                              in zip(blocks, delta, eps)])
            lhs = lhs + eval_f(spec, theta, ep) * weight

    rhs = ep.backend.zero()
    for dbits in range(2 ** s):
        delta = [(dbits >> i) & 1 for i in range(s)] + [0]
        if delta[0] >= blocks[0][0]:
            continue
        for ebits in range(2 ** s):
            eps = [0] + [(ebits >> i) & 1 for i in range(s)]
            if eps[s] >= blocks[s - 1][1]:
                continue
            dots = sum(d * e for d, e in zip(delta, eps))
            bars = sum((1 - d) * (1 - e) for d, e in zip(delta, eps))
            weight = (-thp) ** (bars - 1) * onemq ** dots
            spec = FWordSpec([(blocks[i][0] - delta[i], blocks[i][1] - eps[i + 1])
                              for i in range(s)])
            rhs = rhs + eval_f(spec, thp, ep) * weight
    return [_diff(lhs, rhs)]


def _lemma_blocks(params):
    return [(int(a), int(b)) for a, b in params["blocks"]]


def _chk_lemma_14ia(params, ep):
    blocks = _lemma_blocks(params)
    theta = float(params["theta"])
    s = len(blocks)
    a1, b1 = blocks[0]
    if a1 <= 1 or (s == 1 and b1 <= 1):
        raise ParameterError("needs a1 > 1 and (s > 1 or b1 > 1)")
    q = ep.backend.qf
    thp = q * theta - 1.0
    lhs = ep.backend.zero()
    for d in (0, 1):
        for e in (0, 1):
            w = (-theta) ** ((1 - d) * (1 - e)) * (1.0 - q) ** (d * e)
            spec = FWordSpec([(a1 - d, b1 - e)] + blocks[1:])
            lhs = lhs + eval_f(spec, theta, ep) * w
    rhs = ep.backend.zero()
    for d in (0, 1):
        spec = FWordSpec([(a1 - d, b1)] + blocks[1:], d=[1] + [0] * (s - 1))
        rhs = rhs + eval_f(spec, theta, ep) * (-thp) ** (1 - d)
    return [_diff(lhs, rhs)]


def _chk_lemma_14ib(params, ep):
    blocks = _lemma_blocks(params)
    theta = float(params["theta"])
    s = len(blocks)
    a1, b1 = blocks[0]
    if a1 != 1 or (s == 1 and b1 <= 1):
        raise ParameterError("needs a1 = 1 and (s > 1 or b1 > 1)")
    q = ep.backend.qf
    thp = q * theta - 1.0
    lhs = ep.backend.zero()
    for e in (0, 1):
        spec = FWordSpec([(1, b1 - e)] + blocks[1:])
        lhs = lhs + eval_f(spec, theta, ep) * (-theta) ** (1 - e)
    spec = FWordSpec([(1, b1)] + blocks[1:], d=[1] + [0] * (s - 1))
    rhs = eval_f(spec, theta, ep) * (-thp)
    return [_diff(lhs, rhs)]


def _chk_lemma_14ii(params, ep):
    blocks = _lemma_blocks(params)
    theta = float(params["theta"])
    j = int(params["j"])
    s = len(blocks)
    if not (1 < j < s or (j == s and blocks[s - 1][1] > 1)):
        raise ParameterError("needs 1 < j < s, or j = s with b_s > 1")
    q = ep.backend.qf
    thp = q * theta - 1.0
    aj, bj = blocks[j - 1]
    lhs = ep.backend.zero()
    for d in (0, 1):
        for e in (0, 1):
            w = (-theta) ** ((1 - d) * (1 - e)) * (1.0 - q) ** (d * e)
            mod = list(blocks)
            mod[j - 1] = (aj - d, bj - e)
            spec = FWordSpec(mod, d=[1] * (j - 1) + [0] * (s - j + 1))
            lhs = lhs + eval_f(spec, theta, ep) * w
    rhs = ep.backend.zero()
    for d in (0, 1):
        for e in (0, 1):
            w = (-thp) ** ((1 - d) * (1 - e)) * (1.0 - q) ** (d * e)
            mod = list(blocks)
            prev_a, prev_b = blocks[j - 2]
            mod[j - 2] = (prev_a, prev_b - e)
            mod[j - 1] = (aj - d, bj)
            spec = FWordSpec(mod, d=[1] * j + [0] * (s - j))
            rhs = rhs + eval_f(spec, theta, ep) * w
    return [_diff(lhs, rhs)]


def _chk_lemma_14iiia(params, ep):
    blocks = _lemma_blocks(params)
    theta = float(params["theta"])
    s = len(blocks)
    if blocks[-1][1] <= 1:
        raise ParameterError("needs b_s > 1")
    q = ep.backend.qf
    thp = q * theta - 1.0
    lhs = eval_f(FWordSpec(blocks, d=[1] * s), theta, ep)
    rhs = ep.backend.zero()
    for e in (0, 1):
        mod = list(blocks)
        mod[-1] = (blocks[-1][0], blocks[-1][1] - e)
        rhs = rhs + eval_f(FWordSpec(mod), thp, ep) * (-thp) ** (-e)
    return [_diff(lhs, rhs)]


def _chk_lemma_14iiib(params, ep):
    blocks = _lemma_blocks(params)
    theta = float(params["theta"])
    s = len(blocks)
    if s <= 1 or blocks[-1][1] != 1:
        raise ParameterError("needs s > 1 and b_s = 1")
    q = ep.backend.qf
    thp = q * theta - 1.0
    a_s = blocks[-1][0]
    lhs = ep.backend.zero()
    for d in (0, 1):
        mod = list(blocks)
        mod[-1] = (a_s - d, 1)
        spec = FWordSpec(mod, d=[1] * (s - 1) + [0])
        lhs = lhs + eval_f(spec, theta, ep) * (-theta) ** (1 - d)
    rhs = ep.backend.zero()
    for d in (0, 1):
        for e in (0, 1):
            w = (-thp) ** ((1 - d) * (1 - e)) * (1.0 - q) ** (d * e)
            mod = list(blocks)
            pa, pb = blocks[-2]
            mod[-2] = (pa, pb - e)
            mod[-1] = (a_s - d, 1)
            rhs = rhs + eval_f(FWordSpec(mod), thp, ep) * w
    return [_diff(lhs, rhs)]


def _chk_lemma_14iiic(params, ep):
    a = int(params["a"])
    theta = float(params["theta"])
    if a <= 1:
        raise ParameterError("needs a > 1")
    q = ep.backend.qf
    thp = q * theta - 1.0
    lhs = ep.backend.zero()
    rhs = ep.backend.zero()
    for d in (0, 1):
        lhs = lhs + eval_f(FWordSpec([(a - d, 1)]), theta, ep) * (-theta) ** (1 - d)
        rhs = rhs + eval_f(FWordSpec([(a - d, 1)]), thp, ep) * (-thp) ** (1 - d)
    return [_diff(lhs, rhs)]


def _chk_lemma_14iiid(params, ep):
    theta = float(params["theta"])
    q = ep.backend.qf
    thp = q * theta - 1.0
    spec = FWordSpec([(1, 1)])
    lhs = eval_f(spec, theta, ep) * theta + (1.0 - q)
    rhs = eval_f(spec, thp, ep) * thp - 1.0 / thp
    return [_diff(lhs, rhs)]


def _chk_derivation(params, ep):
    n = int(params["n"])
    w = Word(params["w"]) if not isinstance(params["w"], Word) else params["w"]
    image = derivation_partial(n, WordPoly(w))
    return [_zeta_hat(image, ep)]


def _chk_hoffman_derivation(params, ep):
    s = _comp(params["s"])
    w = word_of_composition(s)
    word_route = _diff(_zeta_hat(derivation_D(1, WordPoly(w)), ep),
                       _zeta_hat(derivation_D(1, WordPoly(w), conjugated=True), ep))
    lhs = ep.backend.zero()
    for k in range(s.depth):
        parts = list(s.parts)
        parts[k] += 1
        lhs = lhs + eval_zeta(parts, ep)
    rhs = ep.backend.zero()
    for k in range(s.depth):
        for j in range(s[k] - 1):
            parts = list(s.parts[:k]) + [s[k] - j, j + 1] + list(s.parts[k + 1:])
            rhs = rhs + eval_zeta(parts, ep)
    return [word_route, _diff(lhs, rhs)]


def _rotations(parts):
    n = len(parts)
    return [tuple(parts[j:]) + tuple(parts[:j]) for j in range(n)]


def _chk_cyclic(params, ep):
    ss = tuple(int(v) for v in params["ss"])
    if not any(v > 1 for v in ss):
        raise ParameterError("cyclic sum needs some argument > 1")
    lhs = ep.backend.zero()
    rhs = ep.backend.zero()
    for rot in _rotations(ss):
        lhs = lhs + eval_zeta((rot[0] + 1,) + rot[1:], ep)
        for k in range(rot[0] - 1):
            rhs = rhs + eval_zeta((rot[0] - k,) + rot[1:] + (k + 1,), ep)
    return [_diff(lhs, rhs)]


def _cyclic_star_sum(parts, ep):
    total = ep.backend.zero()
    for rot in set(_rotations(parts)):
        total = total + eval_zeta((rot[0] + 1,) + rot[1:], ep)
    return total


def _chk_cyclic_dual(params, ep):
    s = _comp(params["s"])
    sd = dual_composition(s)
    return [_diff(_cyclic_star_sum(s.parts, ep), _cyclic_star_sum(sd.parts, ep))]


def _chk_t_difference(params, ep):
    ss = tuple(int(v) for v in params["ss"])
    if not any(v > 1 for v in ss):
        raise ParameterError("needs some argument > 1")
    rot = ss[1:] + ss[:1]
    lhs = _diff(eval_T(ss, ep), eval_T(rot, ep))
    rhs = eval_zeta((ss[0] + 1,) + ss[1:], ep)
    for k in range(ss[0] - 1):
        rhs = rhs - eval_zeta((ss[0] - k,) + ss[1:] + (k + 1,), ep)
    return [_diff(lhs, rhs)]


def _chk_bridge_s0(params, ep):
    ss = tuple(int(v) for v in params["ss"])
    lhs = eval_S(ss + (0,), ep)
    rhs = _diff(eval_T(ss, ep), eval_zeta((ss[0] + 1,) + ss[1:], ep))
    return [_diff(lhs, rhs)]


def _chk_bridge_step(params, ep):
    ss = tuple(int(v) for v in params["ss"])
    if len(ss) < 2 or ss[0] < 2:
        raise ParameterError("needs s1 >= 2 and at least two arguments")
    lhs = eval_S(ss, ep)
    shifted = (ss[0] - 1,) + ss[1:-1] + (ss[-1] + 1,)
    rhs = _diff(eval_S(shifted, ep),
                eval_zeta(ss[:-1] + (ss[-1] + 1,), ep))
    return [_diff(lhs, rhs)]


def _chk_bridge_s1(params, ep):
    ss = tuple(int(v) for v in params["ss"])
    if ss[-1] < 1:
        raise ParameterError("needs a positive final argument")
    lhs = eval_S((1,) + ss[:-1] + (ss[-1] - 1,), ep)
    rhs = eval_T(ss, ep)
    return [_diff(lhs, rhs)]


def _chk_multisection(params, ep):
    ss = [int(v) for v in params["s"]]
    bs = [complex(v) for v in params["b"]]
    n = int(params["n"])
    cfg = ep.backend
    q = cfg.qf
    m = len(ss)
    lhs_cfg = BackendConfig(COMPLEX, q=q ** n, trunc=cfg.trunc, tol=cfg.tol)
    lhs = eval_lambda(ss, [b ** n for b in bs], EvalParams(lhs_cfg))
    lhs = lhs * (n ** m)
    total = cfg.zero()
    roots = roots_of_unity(n)

    def rec(k, eps_prefix):
        nonlocal total
        if k == m:
            total = total + eval_lambda(
                ss, [e * b for e, b in zip(eps_prefix, bs)], ep)
            return
        for e in roots:
            rec(k + 1, eps_prefix + [e])

    rec(0, [])
    rhs = total * (qint_num(n, q) ** sum(ss))
    return [_diff(lhs, rhs)]


def _chk_jackson_rep(params, ep):
    s = _comp(params["s"])
    J = int(params.get("J", 40))
    q = ep.backend.qf
    v1 = multiple_jackson_zeta(s.parts, J, q)
    v2 = multiple_jackson_zeta(s.parts, J + 8, q)
    approx = FloatVal(v2, 4 * abs(v2 - v1) + 1e-15, False)
    return [_diff(approx, eval_zeta(s, ep))]


def _chk_drin(params, ep):
    m, n = int(params["m"]), int(params["n"])
    return [_diff(drin_rhs_coeff(m, n, ep),
                  eval_zeta((m + 2,) + (1,) * n, ep))]


def _chk_drin_markett(params, ep):
    m = int(params["m"])
    return [_diff(drin_rhs_coeff(m, 2, ep),
                  eval_zeta((m + 2, 1, 1), ep))]


def _chk_euler(params, ep):
    return [euler_convolution_residual(int(params["m"]), ep)]


def _chk_euler_statement(params, ep):
    res = euler_convolution_residual(int(params["m"]), ep, statement_form=True)
    return [res]


def _chk_heine(params, ep):
    x, y = float(params["x"]), float(params["y"])
    if not (abs(x) < 1 and abs(y) < 1):
        raise ParameterError("needs |x| < 1 and |y| < 1")
    cfg = ep.backend
    q = cfg.qf
    bx = (1 - q ** x) / (1 - q)
    by = (1 - q ** y) / (1 - q)
    r = max(abs(bx), abs(by))
    M = 10
    while r ** (M + 1) > cfg.tol * 1e-3 and M < 200:
        M += 5
    lhs = 0.0
    for m in range(M + 1):
        for n in range(M + 1):
            z = eval_zeta((m + 2,) + (1,) * n, ep).value
            lhs += (-1) ** (m + n) * bx ** (m + 1) * by ** (n + 1) * z
    tail = 2.0 * r ** (M + 2) / (1 - r) ** 2
    gam = qgamma(1 + x, cfg) * qgamma(1 + y, cfg) / qgamma(1 + x + y, cfg)
    rhs = 1.0 - gam.value
    return [FloatVal(lhs - rhs, tail + gam.tail_bound, gam.rigorous)]


def _chk_log_qgamma(params, ep):
    x = float(params["x"])
    K = int(params.get("K", 40))
    series = log_qgamma_series(x, K, ep)
    direct = math.log(qgamma(1 + x, ep.backend).value)
    return [series - direct]


def _chk_exp_partial(params, ep):
    M = int(params["M"])
    equal, _report = check_exp_partial(M)
    return ([ep.backend.zero()] if equal else [ep.backend.one()],
            equal, "")


def _chk_q_to_1_trend(params, ep):
    which = params["which"]
    out = []
    for q in (0.9, 0.99):
        cfg = BackendConfig(FLOAT, q=q, trunc=600, tol=1e-9)
        p = EvalParams(cfg)
        if which == "newton":
            res = (2 * eval_zeta((2, 2), p).value
                   - (eval_zeta((2,), p).value ** 2 - eval_zeta((4,), p).value))
        elif which == "hoffman_partition":
            res = (eval_zeta((2, 3), p).value + eval_zeta((3, 2), p).value
                   - (eval_zeta((2,), p).value * eval_zeta((3,), p).value
                      - eval_zeta((5,), p).value))
        else:
            raise ParameterError(f"unknown trend target {which!r}")
        out.append(abs(res))
    shrinks = out[1] < out[0] * 0.5
    note = f"|res| at q=0.9: {out[0]:.3g}, at q=0.99: {out[1]:.3g}"
    return ([FloatVal(0.0 if shrinks else out[1])], shrinks, note)


# ---------------------------------------------------------------------------
# Default sweeps
# ---------------------------------------------------------------------------


def _sweep_qstuffle():
    comps = admissible_compositions(4)
    out = []
    for s in comps:
        for t in comps:
            if s.weight + t.weight <= 6 and s.parts <= t.parts:
                out.append({"s": s, "t": t})
    return out


def _sweep_duality():
    return [{"s": s} for s in admissible_compositions(6)]


def _sweep_gen_duality():
    out = []
    for s in admissible_compositions(5):
        blocks = BlockForm.from_composition(s).blocks
        for m in range(3):
            out.append({"blocks": blocks, "m": m})
    return out


def _sweep_blocks_qdiff(max_total=5):
    shapes = []
    for s in (1, 2):
        def rec(prefix, remaining_blocks):
            if remaining_blocks == 0:
                total = sum(a + b for a, b in prefix)
                if 2 < total <= max_total:
                    shapes.append(tuple(prefix))
                return
            for a in range(1, max_total):
                for b in range(1, max_total):
                    rec(prefix + [(a, b)], remaining_blocks - 1)
        rec([], s)
    out = []
    for blocks in shapes:
        for theta in (-0.3, 0.5):
            out.append({"blocks": blocks, "theta": theta})
    return out


def _sweep_cyclic():
    out = []
    for w in range(2, 5):
        for c in compositions_of_weight(w, admissible_only=False):
            if any(v > 1 for v in c):
                out.append({"ss": c.parts})
    return out


def _sweep_multisection():
    cases = []
    for n in (2, 3):
        cases.append({"s": (2,), "b": (2,), "n": n})
        cases.append({"s": (3,), "b": (2,), "n": n})
        cases.append({"s": (2, 1), "b": (2, 2), "n": n})
        cases.append({"s": (1, 2), "b": (2, 2), "n": n})
    return cases


def _sweep_words(max_degree=5, M=3):
    out = []
    for s in admissible_compositions(max_degree):
        out.append({"w": word_of_composition(s), "M": M})
    return out


def _sweep_derivation(max_n=2, max_degree=5):
    out = []
    for n in range(1, max_n + 1):
        for s in admissible_compositions(max_degree):
            out.append({"n": n, "w": word_of_composition(s)})
    return out


def _build_registry():
    reg = [
        IdentityCheck(
            "qstuffle", "q-stuffle multiplication rule",
            {"s": "admissible argument list", "t": "admissible argument list"},
            (EXACT, FLOAT), _chk_qstuffle, _sweep_qstuffle),
        IdentityCheck(
            "period1", "complete reduction of period-1 sums",
            {"s": "repeated exponent >= 2", "n": "number of repetitions >= 1"},
            (EXACT, FLOAT), _chk_period1,
            lambda: [{"s": s, "n": n} for s in (2, 3) for n in (1, 2, 3)]),
        IdentityCheck(
            "nproduct", "product expansion over ordered set partitions",
            {"ss": "list of exponents, each >= 2"},
            (EXACT, FLOAT), _chk_nproduct,
            lambda: [{"ss": v} for v in ([2], [2, 3], [2, 2, 2], [3, 4])]),
        IdentityCheck(
            "partition", "symmetric-sum partition identity",
            {"ss": "list of exponents, each >= 2, length <= 6"},
            (EXACT, FLOAT), _chk_partition,
            lambda: [{"ss": v} for v in ([2], [2, 3], [2, 2, 2], [2, 3, 4])]),
        IdentityCheck(
            "parity", "parity reduction to lower depth",
            {"s": "argument list with both end parts >= 2"},
            (EXACT, FLOAT), _chk_parity,
            lambda: [{"s": v} for v in ((2, 2), (3, 2), (2, 1, 2), (2, 2, 2))]),
        IdentityCheck(
            "gen_duality", "generalized duality of shifted sums",
            {"blocks": "block form (a_j, b_j)", "m": "total shift >= 0"},
            (EXACT, FLOAT), _chk_gen_duality, _sweep_gen_duality),
        IdentityCheck(
            "duality", "duality of argument lists",
            {"s": "admissible argument list"},
            (EXACT, FLOAT), _chk_duality, _sweep_duality),
        IdentityCheck(
            "sum_formula", "fixed-weight sum formula",
            {"k": "total weight", "n": "depth, 0 < n <= k"},
            (EXACT, FLOAT), _chk_sum_formula,
            lambda: [{"k": k, "n": n} for k in range(1, 5)
                     for n in range(1, k + 1)]),
        IdentityCheck(
            "f_equals_g", "duality invariance of the deformed zeta map",
            {"w": "admissible word", "M": "theta order"},
            (EXACT, FLOAT), _chk_f_equals_g, _sweep_words),
        IdentityCheck(
            "qdiff", "difference equation for the deformed generating function",
            {"blocks": "positive blocks (a_i, b_i), total degree in (2, 5]",
             "theta": "real parameter below the pole scale"},
            (FLOAT,), _chk_qdiff, _sweep_blocks_qdiff),
        IdentityCheck(
            "qdiff_14ia", "index-shift lemma, leading block with a1 > 1",
            {"blocks": "blocks with a1 > 1", "theta": "real parameter"},
            (FLOAT,), _chk_lemma_14ia,
            lambda: [{"blocks": b, "theta": t}
                     for b in (((2, 2),), ((3, 1), (1, 1)), ((2, 1), (1, 2)))
                     for t in (-0.3, 0.5)]),
        IdentityCheck(
            "qdiff_14ib", "index-shift lemma, leading block with a1 = 1",
            {"blocks": "blocks with a1 = 1", "theta": "real parameter"},
            (FLOAT,), _chk_lemma_14ib,
            lambda: [{"blocks": b, "theta": t}
                     for b in (((1, 2),), ((1, 1), (1, 1)), ((1, 1), (2, 1)))
                     for t in (-0.3, 0.5)]),
        IdentityCheck(
            "qdiff_14ii", "index-shift lemma, interior block",
            {"blocks": "positive blocks", "j": "block index",
             "theta": "real parameter"},
            (FLOAT,), _chk_lemma_14ii,
            lambda: [{"blocks": b, "j": j, "theta": t}
                     for b, j in ((((1, 1), (1, 2)), 2), (((1, 1), (1, 1), (1, 1)), 2),
                                  (((2, 1), (2, 2)), 2))
                     for t in (-0.3, 0.5)]),
        IdentityCheck(
            "qdiff_14iiia", "offset-clearing lemma with b_s > 1",
            {"blocks": "blocks with b_s > 1", "theta": "real parameter"},
            (FLOAT,), _chk_lemma_14iiia,
            lambda: [{"blocks": b, "theta": t}
                     for b in (((1, 2),), ((2, 2),), ((1, 1), (1, 2)))
                     for t in (-0.3, 0.5)]),
        IdentityCheck(
            "qdiff_14iiib", "offset-clearing lemma with b_s = 1, s > 1",
            {"blocks": "blocks ending in (a_s, 1)", "theta": "real parameter"},
            (FLOAT,), _chk_lemma_14iiib,
            lambda: [{"blocks": b, "theta": t}
                     for b in (((1, 1), (1, 1)), ((1, 2), (2, 1)), ((2, 1), (1, 1)))
                     for t in (-0.3, 0.5)]),
        IdentityCheck(
            "qdiff_14iiic", "single-block difference relation, a > 1",
            {"a": "leading exponent > 1", "theta": "real parameter"},
            (FLOAT,), _chk_lemma_14iiic,
            lambda: [{"a": a, "theta": t} for a in (2, 3) for t in (-0.3, 0.5)]),
        IdentityCheck(
            "qdiff_14iiid", "depth-one closed difference relation",
            {"theta": "real parameter"},
            (FLOAT,), _chk_lemma_14iiid,
            lambda: [{"theta": t} for t in THETA_SAMPLES]),
        IdentityCheck(
            "derivation", "vanishing of antisymmetric derivation images",
            {"n": "derivation index >= 1", "w": "admissible word"},
            (EXACT, FLOAT), _chk_derivation, _sweep_derivation),
        IdentityCheck(
            "hoffman_derivation", "first derivation relation, both routes",
            {"s": "admissible argument list"},
            (EXACT, FLOAT), _chk_hoffman_derivation,
            lambda: [{"s": s} for s in admissible_compositions(5)]),
        IdentityCheck(
            "cyclic", "cyclic sum formula",
            {"ss": "positive arguments, some > 1"},
            (EXACT, FLOAT), _chk_cyclic, _sweep_cyclic),
        IdentityCheck(
            "cyclic_dual", "cyclic sums over dual argument lists",
            {"s": "admissible argument list"},
            (EXACT, FLOAT), _chk_cyclic_dual,
            lambda: [{"s": s} for s in admissible_compositions(4)]),
        IdentityCheck(
            "t_difference", "rotation difference of the T-series",
            {"ss": "positive arguments, some > 1"},
            (FLOAT,), _chk_t_difference, _sweep_cyclic),
        IdentityCheck(
            "st_bridge_s0", "S at final index zero against T",
            {"ss": "positive arguments, some > 1"},
            (FLOAT,), _chk_bridge_s0, _sweep_cyclic),
        IdentityCheck(
            "st_bridge_step", "descent step of the S-series",
            {"ss": "arguments with s1 >= 2; the last entry is the extra index"},
            (FLOAT,), _chk_bridge_step,
            lambda: [{"ss": v} for v in ((2, 1), (2, 2), (3, 1), (2, 1, 1))]),
        IdentityCheck(
            "st_bridge_s1", "leading-one S-series equals rotated T",
            {"ss": "arguments fed to T; the last must be >= 1"},
            (FLOAT,), _chk_bridge_s1,
            lambda: [{"ss": v} for v in ((2,), (2, 1), (1, 2), (2, 2))]),
        IdentityCheck(
            "multisection", "root-of-unity multisection of the polylogarithm",
            {"s": "positive exponents", "b": "denominators in the domain",
             "n": "section count"},
            (COMPLEX,), _chk_multisection, _sweep_multisection),
        IdentityCheck(
            "jackson_rep", "iterated q-integral representation",
            {"s": "admissible argument list", "J": "lattice depth"},
            (FLOAT,), _chk_jackson_rep,
            lambda: [{"s": s} for s in admissible_compositions(4)
                     if s.depth <= 2]),
        IdentityCheck(
            "drin", "double generating function for (m+2, 1...1)",
            {"m": "leading shift >= 0", "n": "number of ones >= 0"},
            (EXACT, FLOAT), _chk_drin,
            lambda: [{"m": m, "n": n} for m in range(3) for n in range(3)
                     if m + n <= 4]),
        IdentityCheck(
            "drin_markett", "triple-one column of the generating function",
            {"m": "leading shift >= 0"},
            (EXACT, FLOAT), _chk_drin_markett,
            lambda: [{"m": m} for m in range(3)]),
        IdentityCheck(
            "euler", "convolution identity for (m+2, 1), derived form",
            {"m": "shift >= 0"},
            (EXACT, FLOAT), _chk_euler,
            lambda: [{"m": m} for m in range(5)]),
        IdentityCheck(
            "euler_statement_form", "typo witness: misprinted leading term",
            {"m": "shift >= 0 (nonzero residual expected at m = 0)"},
            (EXACT, FLOAT), _chk_euler_statement,
            lambda: [{"m": 0}], expect_nonzero=True),
        IdentityCheck(
            "heine_2phi1", "bivariate sum against the gamma quotient",
            {"x": "real in (-1,1)", "y": "real in (-1,1)"},
            (FLOAT,), _chk_heine,
            lambda: [{"x": 0.3, "y": 0.4}, {"x": 0.25, "y": 0.5}]),
        IdentityCheck(
            "log_qgamma", "log-gamma series against direct evaluation",
            {"x": "real in (-1,1)", "K": "series cutoff"},
            (FLOAT,), _chk_log_qgamma,
            lambda: [{"x": v} for v in (-0.3, 0.3, 0.4)]),
        IdentityCheck(
            "exp_partial", "exponential identity of derivation families",
            {"M": "parameter order <= 6"},
            (EXACT, FLOAT), _chk_exp_partial,
            lambda: [{"M": m} for m in range(5)]),
        IdentityCheck(
            "q_to_1_trend", "classical limits approached as q -> 1",
            {"which": "newton | hoffman_partition"},
            (FLOAT,), _chk_q_to_1_trend,
            lambda: [{"which": "newton"}, {"which": "hoffman_partition"}],
            hard=False),
    ]
    for entry in reg:
        _register(entry)


_build_registry()
