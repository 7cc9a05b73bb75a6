"""Jackson q-integration on (0, a) and over the nested simplex.

The q-integral replaces the Riemann integral by the lattice sum
(1-q) a sum_j q^j f(a q^j); iterating it over a descending simplex with
dlog forms and one pole form per group reproduces the gap-indexed
q-polylogarithm up to a sign per depth.  All lattice points are powers of
q times the top limit, so the nested evaluation runs on exponents, which
keeps rational inputs exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergenceError


@dataclass(frozen=True)
class OmegaForm:
    """d_q t/t (kind='zero') or d_q t/(t-b) (kind='pole', b != 0)."""

    kind: str
    b: object = None

    def __post_init__(self):
        if self.kind not in ("zero", "pole"):
            raise ValueError("form kind must be 'zero' or 'pole'")
        if self.kind == "pole" and (self.b is None or self.b == 0):
            raise ValueError("pole form needs a nonzero b")


def omega0() -> OmegaForm:
    return OmegaForm("zero")


def omega(b) -> OmegaForm:
    return OmegaForm("pole", b)


def jackson_integral(f, a, J: int, q):
    """Truncated Jackson sum (1-q) a sum_(j<J) q^j f(a q^j).

    Exact when a, q and f keep Fraction inputs rational; the caller
    controls J and accounts for the geometric remainder.
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    total = None
    qp = 1 * q ** 0
    for _ in range(J):
        term = qp * f(a * qp)
        total = term if total is None else total + term
        qp = qp * q
    return (1 - q) * a * total


def forms_for_lambda(s, y) -> list:
    """(s_k - 1) dlog forms then one pole form at y_k, for each k."""
    out = []
    for sk, yk in zip(s, y):
        if sk < 1:
            raise ValueError("exponents must be positive")
        out.extend([omega0()] * (sk - 1))
        out.append(omega(yk))
    return out


def zeta_pole_points(s, q) -> list:
    """y_k = prod_(j<=k) q^(1-s_j): the pole points that reproduce z[s]."""
    ys = []
    acc = 1 * q ** 0
    for sk in s:
        acc = acc * q ** (1 - sk)
        ys.append(acc)
    return ys


def multiple_jackson(forms, J: int, q):
    """Iterated Jackson integral over 1 > t_1 > ... > t_L > 0.

    Every variable lives on the lattice q^e, so the recursion is a table
    over exponents: V_i(e) integrates level i upward from limit q^e.
    """
    L = len(forms)
    if L == 0:
        return 1 * q ** 0
    if J < 1:
        raise ValueError("J must be >= 1")
    for form in forms:
        if form.kind == "pole" and abs(form.b) <= 1:
            raise DivergenceError(
                "pole point inside the closed unit interval hits the lattice")
    emax = L * J + 1
    qpow = [1 * q ** 0]
    for _ in range(emax + 2):
        qpow.append(qpow[-1] * q)

    below = [1] * (emax + 2)   # V_(L+1) = 1
    for i in range(L - 1, -1, -1):
        form = forms[i]
        cur = [0] * (emax + 2)
        top_emax = i * J  # deepest exponent reachable for this level's limit
        for e in range(top_emax, -1, -1):
            acc = 0
            for j in range(J):
                ee = e + j
                t = qpow[ee]
                if form.kind == "zero":
                    g = qpow[0] / t if not isinstance(q, Fraction) else Fraction(1) / t
                else:
                    g = 1 / (t - form.b)
                acc = acc + qpow[j] * g * below[ee]
            cur[e] = (1 - q) * qpow[e] * acc
        below = cur
    return below[0]


def multiple_jackson_lambda(s, y, J: int, q):
    """Jackson-integral route to the gap-indexed polylogarithm: the iterated
    integral equals (-1)^depth times lambda at (s; y)."""
    return multiple_jackson(forms_for_lambda(s, y), J, q)


def multiple_jackson_zeta(s, J: int, q):
    """Jackson-integral route to z[s]: signed simplex integral with the
    canonical pole points."""
    ss = list(s)
    forms = forms_for_lambda(ss, zeta_pole_points(ss, q))
    value = multiple_jackson(forms, J, q)
    return value if len(ss) % 2 == 0 else -value
