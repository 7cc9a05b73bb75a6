"""Independent brute-force reference implementations used as test oracles.

Everything here is deliberately naive and shares no code with the package
evaluators: direct enumeration of index tuples, textbook polynomial
arithmetic on plain Fraction lists, and the recursive first-entry form of
the classical stuffle product.
"""

from fractions import Fraction
from itertools import combinations


# -- plain dense polynomial arithmetic mod q^Q ------------------------------


def poly_mul(a, b, Q):
    out = [Fraction(0)] * Q
    for i, x in enumerate(a[:Q]):
        if x:
            for j, y in enumerate(b[: Q - i]):
                if y:
                    out[i + j] += x * y
    return out


def poly_inv(a, Q):
    assert a[0] != 0
    out = [Fraction(0)] * Q
    out[0] = 1 / a[0]
    for k in range(1, Q):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if i < len(a) and a[i]:
                acc += a[i] * out[k - i]
        out[k] = -acc / a[0]
    return out


def qint_poly(k, Q):
    """[k]_q = 1 + q + ... + q^(k-1), truncated."""
    return [Fraction(1)] * min(k, Q) + [Fraction(0)] * max(0, Q - k)


def term_series(parts, ks, Q):
    """prod_j q^((s_j - 1) k_j) / [k_j]^(s_j) as a coefficient list."""
    out = [Fraction(0)] * Q
    shift = sum((s - 1) * k for s, k in zip(parts, ks))
    if shift >= Q:
        return out
    out[shift] = Fraction(1)
    for s, k in zip(parts, ks):
        inv = poly_inv(qint_poly(k, Q), Q)
        for _ in range(s):
            out = poly_mul(out, inv, Q)
    return out


def brute_zeta_series(parts, Q):
    """Direct tuple enumeration of the exact nested series mod q^Q."""
    parts = tuple(parts)
    if not parts:
        out = [Fraction(0)] * Q
        out[0] = Fraction(1)
        return out
    total = [Fraction(0)] * Q
    k1_max = (Q - 1) // (parts[0] - 1)

    def rec(j, prev, ks, used):
        nonlocal total
        if j == len(parts):
            contrib = term_series(parts, ks, Q)
            total = [x + y for x, y in zip(total, contrib)]
            return
        s = parts[j]
        hi = prev - 1 if prev is not None else k1_max
        for k in range(hi, len(parts) - j - 1, -1):
            budget = used + (s - 1) * k
            if budget >= Q:
                continue
            rec(j + 1, k, ks + [k], budget)

    rec(0, None, [], 0)
    return total


def brute_zeta_float(parts, q, N):
    """Nested float loops, no clever summation order."""
    parts = tuple(parts)
    if not parts:
        return 1.0

    def qint(k):
        return (1 - q ** k) / (1 - q)

    def rec(j, prev):
        if j == len(parts):
            return 1.0
        s = parts[j]
        total = 0.0
        for k in range(1, prev):
            total += q ** ((s - 1) * k) / qint(k) ** s * rec(j + 1, k)
        return total

    return rec(0, N + 1)


# -- stuffle combinatorics ---------------------------------------------------


def brute_stuffle_pairs(m, n):
    """All (A, B) image pairs of increasing injections covering {1..r}."""
    out = []
    universe = list(range(1, m + n + 1))
    for A in combinations(universe, m):
        for B in combinations(universe, n):
            union = sorted(set(A) | set(B))
            if union == list(range(1, len(union) + 1)):
                out.append((A, B))
    return out


def stuffle_count_recurrence(m, n):
    table = {}
    for i in range(m + 1):
        for j in range(n + 1):
            if i == 0 or j == 0:
                table[i, j] = 1
            else:
                table[i, j] = (table[i - 1, j] + table[i, j - 1]
                               + table[i - 1, j - 1])
    return table[m, n]


def classical_stuffle(s, t):
    """Recursive first-entry stuffle of two argument lists (q = 1 limit)."""
    s, t = tuple(s), tuple(t)
    if not s:
        return {t: 1}
    if not t:
        return {s: 1}
    out = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c

    for key, c in classical_stuffle(s[1:], t).items():
        add((s[0],) + key, c)
    for key, c in classical_stuffle(s, t[1:]).items():
        add((t[0],) + key, c)
    for key, c in classical_stuffle(s[1:], t[1:]).items():
        add((s[0] + t[0],) + key, c)
    return out


def bell_number(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def ordered_bell_number(n):
    from math import comb

    memo = {0: 1}

    def a(k):
        if k not in memo:
            memo[k] = sum(comb(k, j) * a(k - j) for j in range(1, k + 1))
        return memo[k]

    return a(n)
