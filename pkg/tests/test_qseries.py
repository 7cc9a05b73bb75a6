import random
from fractions import Fraction

import pytest

from qzeta.errors import SingularSeriesError
from qzeta.qpoly import QPoly
from qzeta.qseries import QSeries


def rand_series(rng, order, unit=False, zero_const=False):
    coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 4))
              for _ in range(order)]
    if unit:
        coeffs[0] = Fraction(1)
    if zero_const:
        coeffs[0] = Fraction(0)
    return QSeries(coeffs, order)


def test_geometric_inverse():
    g = (QSeries.one(3) - QSeries.q(3)).invert()
    assert g.coeffs == [1, 1, 1]


def test_exp_of_zero_is_one():
    assert QSeries.zero(5).exp() == QSeries.one(5)


def test_mercator_log():
    s = (QSeries.one(4) - QSeries.q(4)).invert().log()
    assert s.coeffs == [0, 1, Fraction(1, 2), Fraction(1, 3)]


def test_invert_requires_unit():
    with pytest.raises(SingularSeriesError):
        QSeries.q(4).invert()


def test_exp_requires_zero_constant():
    with pytest.raises(SingularSeriesError):
        QSeries.one(4).exp()


def test_ring_axioms_randomized():
    rng = random.Random(7)
    for _ in range(40):
        a = rand_series(rng, 9)
        b = rand_series(rng, 9)
        c = rand_series(rng, 9)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a


def test_exp_log_roundtrip_randomized():
    rng = random.Random(11)
    for _ in range(20):
        s = rand_series(rng, 8, unit=True)
        assert s.log().exp() == s
    for _ in range(20):
        u = rand_series(rng, 8, zero_const=True)
        assert u.exp().log() == u


def test_min_order_discipline():
    a = QSeries.one(10)
    b = QSeries.one(6)
    assert (a * b).order == 6
    assert (a + b).order == 6


def test_compose_with_polynomial():
    # substitute 2q into 1/(1-q): expect 1 + 2q + 4q^2 + ...
    g = (QSeries.one(5) - QSeries.q(5)).invert()
    comp = g.compose(QPoly({1: 2}))
    assert comp.coeffs == [1, 2, 4, 8, 16]
    with pytest.raises(ValueError):
        g.compose(QPoly({0: 1}))


def test_parse_roundtrip():
    rng = random.Random(3)
    for _ in range(25):
        s = rand_series(rng, 7)
        assert QSeries.parse(str(s)) == s
    assert QSeries.parse("0 + O(q^4)") == QSeries.zero(4)


def test_eval_at():
    s = QSeries([1, 2, 3], 3)
    assert s.eval_at(Fraction(1, 2)) == Fraction(1) + 1 + Fraction(3, 4)
    assert abs(s.eval_at(0.5) - 2.75) < 1e-15


def test_qpoly_basics():
    p = QPoly.one_minus_q(2)
    assert p == QPoly({0: 1, 1: -2, 2: 1})
    assert p.eval(1) == 0
    assert p.eval(Fraction(1, 2)) == Fraction(1, 4)
    assert QPoly.parse(str(p)) == p
    assert str(QPoly.zero()) == "0"
    assert QPoly.parse("1 - q") == QPoly({0: 1, 1: -1})
