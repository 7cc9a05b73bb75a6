import math
import random
from fractions import Fraction

import pytest

from qzeta.backend import (BackendConfig, FloatVal, euler_gamma_q, qgamma,
                           qint, qpow_asym)
from qzeta.errors import DomainError, UnsupportedRequestError
from qzeta.qseries import QSeries

FLOAT_HALF = BackendConfig("float", q=0.5, trunc=200, tol=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        BackendConfig("float")                      # missing q
    with pytest.raises(ValueError):
        BackendConfig("float", q=1.5)
    with pytest.raises(ValueError):
        BackendConfig("exact", order=0)
    with pytest.raises(ValueError):
        BackendConfig("wat")


def test_qint_zero_and_small():
    assert qint(0, FLOAT_HALF).value == 0.0
    assert qint(3, FLOAT_HALF).value == 7 / 4
    exact = qint(2, BackendConfig("exact", order=4))
    assert exact == QSeries([1, 1, 0, 0], 4)


def test_qpow_finite():
    v = qpow_asym(1.0, -0.5, 2, FLOAT_HALF)   # (1 - 1/2)(1 - 1/4)
    assert abs(v.value - 3 / 8) < 1e-15
    assert qpow_asym(1.0, 0.0, 5, FLOAT_HALF).value == 1.0


def test_qpow_infinite_against_brute_force():
    # independent oracle: multiply factors until within 1e-15 of 1
    q = 0.5
    prod, k = 1.0, 0
    while abs(q ** k) > 1e-15:
        prod *= 1 - q * q ** k
        k += 1
    v = qpow_asym(1.0, -q, None, FLOAT_HALF)
    assert abs(v.value - prod) <= v.tail_bound + 1e-12
    assert abs(v.value - 0.2887880951) < 1e-9


def test_qpow_infinite_exact_unsupported():
    with pytest.raises(UnsupportedRequestError):
        qpow_asym(1, -1, None, BackendConfig("exact", order=5))


def test_qpow_exact_finite():
    cfg = BackendConfig("exact", order=4)
    v = qpow_asym(QSeries.one(4), -QSeries.q(4), 2, cfg)
    # (1 - q)(1 - q^2) = 1 - q - q^2 + q^3
    assert v == QSeries([1, -1, -1, 1], 4)


def test_qgamma_values():
    assert abs(qgamma(1.0, FLOAT_HALF).value - 1.0) < 1e-12
    assert abs(qgamma(2.0, FLOAT_HALF).value - 1.0) < 1e-10
    g3 = qgamma(3.0, FLOAT_HALF)
    assert abs(g3.value - 1.5) < 1e-9
    with pytest.raises(DomainError):
        qgamma(0.0, FLOAT_HALF)


def test_qgamma_direct_product_cross_check():
    # brute-force the defining product at x = 3, q = 1/2
    q = 0.5
    num = den = 1.0
    for k in range(200):
        num *= 1 - q ** (k + 1)
        den *= 1 - q ** (3 + k)
    direct = num / den * (1 - q) ** (1 - 3)
    assert abs(qgamma(3.0, FLOAT_HALF).value - direct) < 1e-12


def test_qgamma_functional_equation():
    rng = random.Random(5)
    for q in (0.3, 0.5, 0.9):
        cfg = BackendConfig("float", q=q, trunc=200, tol=1e-12)
        for _ in range(8):
            x = rng.uniform(0.1, 5.0)
            lhs = qgamma(x + 1, cfg)
            bracket = (1 - q ** x) / (1 - q)
            rhs = qgamma(x, cfg) * bracket
            assert abs(lhs.value - rhs.value) <= (
                lhs.tail_bound + rhs.tail_bound + 1e-9)


def test_euler_gamma_q_brute_force():
    q = 0.5
    acc = sum(q ** n / ((1 - q ** n) / (1 - q)) for n in range(1, 201))
    expected = math.log(1 - q) - math.log(q) / (1 - q) * acc
    got = euler_gamma_q(FLOAT_HALF)
    assert abs(got.value - expected) < 1e-12 + got.tail_bound


def test_euler_gamma_q_trend_to_classical():
    values = []
    for q in (0.9, 0.99, 0.999):
        cfg = BackendConfig("float", q=q, trunc=400, tol=1e-12)
        values.append(euler_gamma_q(cfg).value)
    gaps = [abs(v - 0.5772156649) for v in values]
    assert gaps[0] > gaps[1] > gaps[2]


def test_euler_gamma_q_deterministic():
    a = euler_gamma_q(FLOAT_HALF)
    b = euler_gamma_q(FLOAT_HALF)
    assert a.value == b.value and a.tail_bound == b.tail_bound


def test_floatval_interval_arithmetic():
    a = FloatVal(1.0, 0.1)
    b = FloatVal(2.0, 0.2)
    assert (a + b).tail_bound == pytest.approx(0.3)
    assert (a * b).tail_bound == pytest.approx(1.0 * 0.2 + 2.0 * 0.1 + 0.02)
    assert a.overlaps(FloatVal(1.05))
    assert not a.overlaps(FloatVal(1.2))
    assert (a - a).is_zero_within(0.0)
    with pytest.raises(ValueError):
        FloatVal(1.0, -0.5)
