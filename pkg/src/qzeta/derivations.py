"""Derivations of the word algebra and truncated one-parameter families.

D_n kills x and sends y to x^n y.  The antisymmetric family sends x to
x(x+y)^(n-1)y; antisymmetry (conjugation by duality negates the map) then
forces y to -x(x+y)^(n-1)y, a sign convention validated empirically by the
vanishing of zeta-evaluations of derivation images (see tests).

ParamWordSeries holds a word-polynomial-valued polynomial in one formal
parameter, truncated at a fixed order; it serves both the theta-expansion
of the substitution automorphism and the t-expansions of the exponential
identities.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .words import EMPTY_WORD, Word, WordPoly

DEFAULT_DEGREE_CAP = 6


def _leibniz(images: dict, w: Word) -> WordPoly:
    """Extend generator images to a derivation on a single word."""
    out = WordPoly.zero()
    letters = w.letters
    for i, ch in enumerate(letters):
        img = images[ch]
        if img.is_zero():
            continue
        left = WordPoly(Word(letters[:i]))
        right = WordPoly(Word(letters[i + 1:]))
        out = out + left * img * right
    return out


def derivation_D(n: int, p: WordPoly, conjugated: bool = False) -> WordPoly:
    """Leibniz extension of x -> 0, y -> x^n y; conjugated = tau . D . tau."""
    if n < 1:
        raise ValueError("derivation index must be >= 1")
    if isinstance(p, (Word, str)):
        p = WordPoly(p)
    if conjugated:
        return derivation_D(n, p.tau()).tau()
    images = {"x": WordPoly.zero(), "y": WordPoly(Word("x" * n + "y"))}
    return p.map_words(lambda w: _leibniz(images, w))


def _partial_image(n: int) -> WordPoly:
    return WordPoly("x") * (WordPoly("x") + WordPoly("y")) ** (n - 1) * WordPoly("y")


def derivation_partial(n: int, p: WordPoly, sign_on_y: int = -1) -> WordPoly:
    """The antisymmetric family: x -> x(x+y)^(n-1)y and y -> the negative.

    ``sign_on_y`` exists so the tests can demonstrate that the opposite
    convention breaks the vanishing property.
    """
    if n < 1:
        raise ValueError("derivation index must be >= 1")
    if isinstance(p, (Word, str)):
        p = WordPoly(p)
    img = _partial_image(n)
    images = {"x": img, "y": img * sign_on_y}
    return p.map_words(lambda w: _leibniz(images, w))


class ParamWordSeries:
    """Word-polynomial coefficients of 1, t, ..., t^M for a formal t."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise ValueError("parameter order must be >= 0")
        cs = [c if isinstance(c, WordPoly) else WordPoly(c) for c in coeffs[: order + 1]]
        cs.extend([WordPoly.zero()] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = cs

    @classmethod
    def zero(cls, order: int) -> "ParamWordSeries":
        return cls([], order)

    @classmethod
    def of(cls, p, order: int) -> "ParamWordSeries":
        return cls([p if isinstance(p, WordPoly) else WordPoly(p)], order)

    def __add__(self, other):
        n = min(self.order, other.order)
        return ParamWordSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other):
        n = min(self.order, other.order)
        return ParamWordSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self):
        return ParamWordSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamWordSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [WordPoly.zero() for _ in range(n + 1)]
        for i in range(n + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return ParamWordSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k: int) -> "ParamWordSeries":
        """Multiply by t^k."""
        return ParamWordSeries([WordPoly.zero()] * k + self.coeffs, self.order)

    def map_coeffs(self, fn) -> "ParamWordSeries":
        return ParamWordSeries([fn(c) for c in self.coeffs], self.order)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, ParamWordSeries)
                and self.order == other.order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __repr__(self):
        bits = [f"t^{i}:({c})" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "ParamWordSeries(" + (" + ".join(bits) if bits else "0") + ")"


def sigma_theta(p, M: int) -> ParamWordSeries:
    """Substitution x -> x, y -> (1 + x t + x^2 t^2 + ...) y, truncated at t^M.

    The order-0 coefficient is p itself; the map is multiplicative modulo
    t^(M+1).
    """
    if isinstance(p, (Word, str)):
        p = WordPoly(p)
    x_img = ParamWordSeries.of(WordPoly("x"), M)
    y_img = ParamWordSeries(
        [WordPoly(Word("x" * j + "y")) for j in range(M + 1)], M)
    images = {"x": x_img, "y": y_img}

    out = ParamWordSeries.zero(M)
    for w, c in p.items():
        acc = ParamWordSeries.of(WordPoly.one(), M)
        for ch in w.letters:
            acc = acc * images[ch]
        out = out + acc * c
    return out


# ---------------------------------------------------------------------------
# Exponentials of derivation series
# ---------------------------------------------------------------------------


def _deriv_series(images_for, p: WordPoly, M: int) -> ParamWordSeries:
    """sum over n of t^n/n times the n-th derivation applied to p."""
    out = ParamWordSeries.zero(M)
    for n in range(1, M + 1):
        img = images_for(n)
        dn = p.map_words(lambda w, img=img: _leibniz(img, w))
        out = out + ParamWordSeries.of(dn * Fraction(1, n), M).shift(n)
    return out


def _lift(op, series: ParamWordSeries) -> ParamWordSeries:
    """Apply a WordPoly -> ParamWordSeries map to each coefficient (Cauchy)."""
    M = series.order
    out = ParamWordSeries.zero(M)
    for m, c in enumerate(series.coeffs):
        if c.is_zero():
            continue
        out = out + op(c).shift(m)
    return out


def _exp_operator(op, p: WordPoly, M: int) -> ParamWordSeries:
    """exp of a derivation series (op raises the t-valuation by >= 1)."""
    total = ParamWordSeries.of(p, M)
    power = ParamWordSeries.of(p, M)
    for k in range(1, M + 1):
        power = _lift(lambda c: op(c), power)
        if power.is_zero():
            break
        total = total + power * Fraction(1, factorial(k))
    return total


def _tau_series(s: ParamWordSeries) -> ParamWordSeries:
    return s.map_coeffs(lambda c: c.tau())


def exp_D(p, M: int, sign: int = 1) -> ParamWordSeries:
    """sigma = exp(sum t^n D_n / n) applied to p (sign=-1 for the inverse)."""
    if isinstance(p, (Word, str)):
        p = WordPoly(p)

    def op(c: WordPoly) -> ParamWordSeries:
        def images(n):
            return {"x": WordPoly.zero(),
                    "y": WordPoly(Word("x" * n + "y")) * sign}
        return _deriv_series(images, c, M)

    return _exp_operator(op, p, M)


def exp_partial(p, M: int) -> ParamWordSeries:
    """exp(sum t^n partial_n / n) applied to p."""
    if isinstance(p, (Word, str)):
        p = WordPoly(p)

    def op(c: WordPoly) -> ParamWordSeries:
        def images(n):
            img = _partial_image(n)
            return {"x": img, "y": -img}
        return _deriv_series(images, c, M)

    return _exp_operator(op, p, M)


def sigma_bar_sigma_inv(p, M: int) -> ParamWordSeries:
    """(tau . sigma . tau) . sigma^(-1) applied to p."""
    if isinstance(p, (Word, str)):
        p = WordPoly(p)
    inner = exp_D(p, M, sign=-1)
    # sigma-bar applied to a t-series: conjugate by tau around exp_D
    conj = _tau_series(inner)
    pushed = _lift(lambda c: exp_D(c, M), conj)
    return _tau_series(pushed)


def check_exp_partial(M: int, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Compare exp(partial) with sigma-bar sigma^(-1) on both generators.

    Returns (equal, report) where report maps generator name to the
    difference series (zero when the identity holds mod t^(M+1)).
    """
    if M > degree_cap:
        raise ValueError(f"symbolic degree cap is {degree_cap}")
    report = {}
    equal = True
    for name in ("x", "y"):
        lhs = exp_partial(name, M)
        rhs = sigma_bar_sigma_inv(name, M)
        diff = lhs - rhs
        report[name] = diff
        equal = equal and diff.is_zero()
    return equal, report
