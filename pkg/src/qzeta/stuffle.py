"""The q-deformed stuffle product and the combinatorics built on it.

A stuffle interleaves two argument lists, allowing positions to collide;
every collision may additionally shed a (1-q)-weighted term in which the
collided exponent drops by one.  Symbolic results are held either as a
ZetaCombo (linear combination of argument lists with polynomial-in-q
coefficients) or as a ZetaExpr (combination of *products* of argument
lists, the natural shape of depth-reduction results).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

from .errors import AdmissibilityError, DivergenceError, ResourceError
from .qpoly import QPoly
from .words import Composition

MAX_PARTITION_GROUND = 9


# ---------------------------------------------------------------------------
# Stuffles and set partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stuffle:
    """Images of the two order-preserving injections, as sorted tuples."""

    phi: tuple
    psi: tuple
    r: int

    def __post_init__(self):
        if set(self.phi) | set(self.psi) != set(range(1, self.r + 1)):
            raise ValueError("stuffle images must cover an initial segment")


def enumerate_stuffles(m: int, n: int) -> list:
    """All stuffles on (m, n): image pairs covering {1..r}, max(m,n)<=r<=m+n."""
    if m < 1 or n < 1:
        raise ValueError("stuffles need m, n >= 1")
    out = []
    for r in range(max(m, n), m + n + 1):
        universe = range(1, r + 1)
        for phi in combinations(universe, m):
            need = set(universe) - set(phi)
            for psi in combinations(universe, n):
                if need <= set(psi):
                    out.append(Stuffle(phi, psi, r))
    return out


def enumerate_set_partitions(n: int, ordered: bool = False) -> list:
    """Set partitions of {1..n}: frozensets of blocks, or tuples if ordered."""
    if n < 1:
        raise ValueError("partitions need n >= 1")
    if n > MAX_PARTITION_GROUND:
        raise ResourceError(f"set partitions capped at ground size {MAX_PARTITION_GROUND}")
    parts = [[]]
    for el in range(1, n + 1):
        nxt = []
        for p in parts:
            for i in range(len(p)):
                nxt.append([blk | {el} if j == i else blk for j, blk in enumerate(p)])
            nxt.append(p + [{el}])
        parts = nxt
    unordered = [tuple(frozenset(b) for b in p) for p in parts]
    if not ordered:
        return [frozenset(p) for p in unordered]
    out = []
    for p in unordered:
        out.extend(permutations(p))
    return out


# ---------------------------------------------------------------------------
# Symbolic containers
# ---------------------------------------------------------------------------


def _as_composition(s) -> Composition:
    return s if isinstance(s, Composition) else Composition(s)


class ZetaCombo:
    """Finite map argument-list -> QPoly.

    Keys must be admissible unless the combo is created with formal=True;
    formal combos appear only inside intermediate reduction steps.
    """

    __slots__ = ("terms", "formal")

    def __init__(self, terms=None, formal: bool = False):
        table = {}
        if terms:
            for c, coeff in dict(terms).items():
                c = _as_composition(c)
                coeff = coeff if isinstance(coeff, QPoly) else QPoly.const(coeff)
                if coeff.is_zero():
                    continue
                if not formal:
                    c.require_admissible("combo key")
                table[c] = coeff
        self.terms = table
        self.formal = formal

    @classmethod
    def unit(cls) -> "ZetaCombo":
        return cls({Composition(): 1})

    @classmethod
    def single(cls, s, coeff=1, formal: bool = False) -> "ZetaCombo":
        return cls({_as_composition(s): coeff}, formal)

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, ZetaCombo):
            table = dict(self.terms)
            for c, coeff in other.terms.items():
                table[c] = table.get(c, QPoly.zero()) + coeff
            return ZetaCombo(table, self.formal or other.formal)
        return NotImplemented

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff) -> "ZetaCombo":
        coeff = coeff if isinstance(coeff, QPoly) else QPoly.const(coeff)
        return ZetaCombo({c: v * coeff for c, v in self.terms.items()}, self.formal)

    def max_depth(self) -> int:
        return max((c.depth for c in self.terms), default=0)

    def __eq__(self, other):
        return isinstance(other, ZetaCombo) and self.terms == other.terms

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> list:
        return [{"composition": list(c.parts), "coeff": str(v)}
                for c, v in self.sorted_items()]

    @classmethod
    def from_json(cls, data, formal: bool = False) -> "ZetaCombo":
        table = {}
        for entry in data:
            c = Composition(entry["composition"])
            table[c] = table.get(c, QPoly.zero()) + QPoly.parse(entry["coeff"])
        return cls(table, formal)

    def __repr__(self):
        bits = [f"({v})*z[{c}]" for c, v in self.sorted_items()]
        return "ZetaCombo(" + (" + ".join(bits) if bits else "0") + ")"


class ZetaExpr:
    """Combination of products of argument lists: multiset-of-keys -> QPoly."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        table = {}
        if terms:
            for key, coeff in dict(terms).items():
                key = tuple(sorted(_as_composition(c) for c in key))
                coeff = coeff if isinstance(coeff, QPoly) else QPoly.const(coeff)
                if not coeff.is_zero():
                    table[key] = coeff
        self.terms = table

    @classmethod
    def unit(cls) -> "ZetaExpr":
        return cls({(): 1})

    @classmethod
    def from_combo(cls, combo: ZetaCombo) -> "ZetaExpr":
        return cls({((c,) if len(c) else ()): v for c, v in combo.items()})

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, ZetaExpr):
            table = dict(self.terms)
            for k, v in other.terms.items():
                table[k] = table.get(k, QPoly.zero()) + v
            return ZetaExpr(table)
        return NotImplemented

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff) -> "ZetaExpr":
        coeff = coeff if isinstance(coeff, QPoly) else QPoly.const(coeff)
        return ZetaExpr({k: v * coeff for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ZetaExpr):
            table = {}
            for k1, v1 in self.terms.items():
                for k2, v2 in other.terms.items():
                    k = tuple(sorted(k1 + k2))
                    table[k] = table.get(k, QPoly.zero()) + v1 * v2
            return ZetaExpr(table)
        return NotImplemented

    def max_symbol_depth(self) -> int:
        return max((c.depth for k in self.terms for c in k), default=0)

    def __eq__(self, other):
        return isinstance(other, ZetaExpr) and self.terms == other.terms

    def __repr__(self):
        bits = []
        for k, v in sorted(self.terms.items()):
            prod = "*".join(f"z[{c}]" for c in k) if k else "1"
            bits.append(f"({v})*{prod}")
        return "ZetaExpr(" + (" + ".join(bits) if bits else "0") + ")"


# ---------------------------------------------------------------------------
# The q-stuffle product
# ---------------------------------------------------------------------------


def qstuffle_product(s, t, formal: bool = False) -> ZetaCombo:
    """Expand z[s]*z[t] into a combination of argument lists.

    Every stuffle contributes one term per subset A of the collision set:
    colliding exponents add, and each position in A drops the sum by one
    at the price of a (1-q) factor.
    """
    s = _as_composition(s)
    t = _as_composition(t)
    if not formal:
        s.require_admissible()
        t.require_admissible()
    if not len(s):
        return ZetaCombo.single(t, 1, formal)
    if not len(t):
        return ZetaCombo.single(s, 1, formal)

    table = {}
    for st in enumerate_stuffles(len(s), len(t)):
        pos_s = {img: s[i] for i, img in enumerate(st.phi)}
        pos_t = {img: t[i] for i, img in enumerate(st.psi)}
        collisions = sorted(set(st.phi) & set(st.psi))
        base = [pos_s.get(k, 0) + pos_t.get(k, 0) for k in range(1, st.r + 1)]
        for asize in range(len(collisions) + 1):
            for A in combinations(collisions, asize):
                parts = list(base)
                for k in A:
                    parts[k - 1] -= 1
                key = Composition(parts)
                coeff = QPoly.one_minus_q(asize)
                table[key] = table.get(key, QPoly.zero()) + coeff
    return ZetaCombo(table, formal)


def combo_stuffle(a: ZetaCombo, b: ZetaCombo, formal: bool = False) -> ZetaCombo:
    """Bilinear extension of the q-stuffle product to combos."""
    out = ZetaCombo({}, formal)
    for c1, v1 in a.items():
        for c2, v2 in b.items():
            out = out + qstuffle_product(c1, c2, formal).scale(v1 * v2)
    return out


def delta_apply(k: int, combo: ZetaCombo) -> ZetaCombo:
    """Apply 1 + (1-q)E_k: each term also appears with its k-th part lowered."""
    if k < 1:
        raise ValueError("delta index must be >= 1")
    table = {}
    onemq = QPoly.one_minus_q()

    def put(c, v):
        table[c] = table.get(c, QPoly.zero()) + v

    for c, v in combo.items():
        if c.depth < k or c[k - 1] < 2:
            raise AdmissibilityError(
                f"delta_{k} needs depth >= {k} and part >= 2 in {c}")
        lowered = list(c.parts)
        lowered[k - 1] -= 1
        low = Composition(lowered)
        if not combo.formal and not low.is_admissible():
            raise AdmissibilityError(f"delta_{k} would produce divergent {low}")
        put(c, v)
        put(low, v * onemq)
    return ZetaCombo(table, combo.formal)


# ---------------------------------------------------------------------------
# Depth-1 building blocks shared by the reduction theorems
# ---------------------------------------------------------------------------


def _binomial_drop(total: int, count: int, formal: bool = False) -> ZetaCombo:
    """sum_j C(count-1, j) (1-q)^j z[total - j]: the merged-index correction
    when ``count`` equal summation indices are collapsed into one."""
    table = {}
    for j in range(count):
        table[Composition((total - j,))] = QPoly.one_minus_q(j) * comb(count - 1, j)
    return ZetaCombo(table, formal)


def period1_reduce(s: int, n: int) -> ZetaExpr:
    """Express z[{s}^n] as a polynomial in depth-1 values.

    Unrolls n*z[{s}^n] = sum_k (-1)^(k+1) z[{s}^(n-k)] * sum_j C(k-1,j)(1-q)^j z[ks-j]
    until only products of single arguments remain.
    """
    if s < 2:
        raise DivergenceError("period-1 reduction needs s >= 2")
    if n < 1:
        raise ValueError("period-1 reduction needs n >= 1")

    memo = {0: ZetaExpr.unit()}

    def build(depth: int) -> ZetaExpr:
        if depth in memo:
            return memo[depth]
        acc = ZetaExpr({})
        for k in range(1, depth + 1):
            inner = ZetaExpr.from_combo(_binomial_drop(k * s, k))
            piece = (build(depth - k) * inner).scale(Fraction((-1) ** (k + 1)))
            acc = acc + piece
        acc = acc.scale(Fraction(1, depth))
        memo[depth] = acc
        return acc

    return build(n)


def nproduct_expand(ss) -> ZetaCombo:
    """Expand prod_k z[s_k] over ordered set partitions with merge corrections."""
    ss = list(ss)
    if any(s < 2 for s in ss):
        raise DivergenceError("product expansion needs every argument >= 2")
    if not ss:
        return ZetaCombo.unit()
    n = len(ss)
    table = {}
    for part in enumerate_set_partitions(n, ordered=True):
        sums = [sum(ss[i - 1] for i in blk) for blk in part]
        sizes = [len(blk) for blk in part]
        # iterate the per-block drop amounts
        def rec(j, parts_acc, coeff):
            if j == len(part):
                key = Composition(parts_acc)
                table[key] = table.get(key, QPoly.zero()) + coeff
                return
            for nu in range(sizes[j]):
                rec(j + 1, parts_acc + [sums[j] - nu],
                    coeff * comb(sizes[j] - 1, nu) * QPoly.one_minus_q(nu))
        rec(0, [], QPoly.one())
    return ZetaCombo(table)


def partition_identity_sides(ss):
    """Both sides of the symmetric-sum partition identity.

    Returns (lhs, rhs): lhs is the combo summing z over all argument
    permutations; rhs combines unordered set partitions into products of
    depth-1 values with factorial weights and alternating signs.
    """
    ss = list(ss)
    n = len(ss)
    if n < 1:
        raise ValueError("partition identity needs at least one argument")
    if n > 6:
        raise ResourceError("partition identity capped at 6 arguments")
    if any(s < 2 for s in ss):
        raise DivergenceError("partition identity needs every argument >= 2")

    lhs_table = {}
    for perm in permutations(ss):
        key = Composition(perm)
        lhs_table[key] = lhs_table.get(key, QPoly.zero()) + 1
    lhs = ZetaCombo(lhs_table)

    rhs = ZetaExpr({})
    for part in enumerate_set_partitions(n, ordered=False):
        blocks = sorted(part, key=lambda blk: sorted(blk))
        term = ZetaExpr.unit()
        weight = Fraction((-1) ** (n - len(blocks)))
        for blk in blocks:
            weight *= factorial(len(blk) - 1)
            term = term * ZetaExpr.from_combo(
                _binomial_drop(sum(ss[i - 1] for i in blk), len(blk)))
        rhs = rhs + term.scale(weight)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Regularization: divergent symbols as polynomials in z[1]
# ---------------------------------------------------------------------------

_REG_CACHE: dict = {}


def _regularize(c: Composition) -> dict:
    """Rewrite a (possibly divergent) symbol as {z1-degree: admissible combo}.

    Divergent means leading 1s.  The rewriting peels one leading 1 at a
    time using the stuffle expansion of z[1]*z[rest], which is an honest
    identity of the underlying nested sums wherever everything converges.
    """
    if c in _REG_CACHE:
        return _REG_CACHE[c]
    if c.is_admissible():
        out = {0: ZetaCombo.single(c)} if len(c) else {0: ZetaCombo.unit()}
        _REG_CACHE[c] = out
        return out
    rest = Composition(c.parts[1:])
    expansion = qstuffle_product(Composition((1,)), rest, formal=True)
    mult = expansion.terms.get(c)
    if mult is None or mult.degree != 0:
        raise AssertionError("leading-1 insertion lost in stuffle expansion")
    mult = mult.coeff(0)

    acc: dict = {}

    def add(deg, combo, scale=1):
        if combo.is_zero():
            return
        cur = acc.get(deg, ZetaCombo({}))
        acc[deg] = cur + combo.scale(scale)

    for deg, combo in _regularize(rest).items():
        add(deg + 1, combo)
    for t, coeff in expansion.items():
        if t == c:
            continue
        for deg, combo in _regularize(t).items():
            add(deg, combo.scale(coeff), -1)
    out = {deg: combo.scale(Fraction(1, mult)) for deg, combo in acc.items()
           if not combo.is_zero()}
    _REG_CACHE[c] = out
    return out


class _GradedExpr:
    """ZetaExpr graded by the power of the regularization symbol z1."""

    def __init__(self, parts=None):
        self.parts = {d: e for d, e in (parts or {}).items() if not e.is_zero()}

    @classmethod
    def unit(cls):
        return cls({0: ZetaExpr.unit()})

    @classmethod
    def from_symbol(cls, c: Composition):
        return cls({d: ZetaExpr.from_combo(cb) for d, cb in _regularize(c).items()})

    def __add__(self, other):
        table = dict(self.parts)
        for d, e in other.parts.items():
            table[d] = table.get(d, ZetaExpr({})) + e
        return _GradedExpr(table)

    def __mul__(self, other):
        table = {}
        for d1, e1 in self.parts.items():
            for d2, e2 in other.parts.items():
                d = d1 + d2
                table[d] = table.get(d, ZetaExpr({})) + e1 * e2
        return _GradedExpr(table)

    def scale(self, coeff):
        return _GradedExpr({d: e.scale(coeff) for d, e in self.parts.items()})


def _flatten_expr(expr: ZetaExpr) -> ZetaCombo:
    """Multiply out every product term with the stuffle rule."""
    out = ZetaCombo({})
    for key, coeff in expr.items():
        combo = ZetaCombo.unit()
        for c in key:
            combo = combo_stuffle(combo, ZetaCombo.single(c))
        out = out + combo.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# Parity reduction
# ---------------------------------------------------------------------------


def _chain_cells(exponents) -> ZetaCombo:
    """Weakly increasing chain over the given exponents as a formal combo.

    Splits the chain into consecutive equality levels; each level of size
    l and exponent-sum u contributes the merge correction
    sum_j C(l-1,j)(1-q)^j with entry u-j.  Argument lists read the levels
    from the largest index down, so the block order is reversed.
    """
    exps = list(exponents)
    r = len(exps)
    table = {}

    def rec(i, levels, coeff):
        if i == r:
            for drops in _level_drops(levels):
                parts = [u - j for (u, _l), j in zip(levels[::-1], drops[::-1])]
                key = Composition(parts)
                extra = QPoly.one()
                for (u, l), j in zip(levels, drops):
                    extra = extra * comb(l - 1, j) * QPoly.one_minus_q(j)
                table[key] = table.get(key, QPoly.zero()) + coeff * extra
            return
        for size in range(1, r - i + 1):
            u = sum(exps[i:i + size])
            rec(i + size, levels + [(u, size)], coeff)

    def _level_drops(levels):
        if not levels:
            yield []
            return
        (u, l) = levels[0]
        for j in range(l):
            for rest in _level_drops(levels[1:]):
                yield [j] + rest

    rec(0, [], QPoly.one())
    return ZetaCombo(table, formal=True)


def parity_reduce(s) -> ZetaExpr:
    """Reduce z[s] + (-1)^depth z[reversed s] to products of lower depth.

    Uses inclusion-exclusion over the descending-order constraints: each
    surviving term is a product over independent weakly-ordered runs, every
    run rewritten into strict chains.  Divergent symbols raised by inner 1s
    are eliminated through z[1]-regularization; their net contribution
    cancels, which is asserted.
    """
    s = _as_composition(s)
    m = s.depth
    if m < 2:
        raise AdmissibilityError("parity reduction needs depth >= 2")
    if s[0] < 2 or s[m - 1] < 2:
        raise AdmissibilityError("parity reduction needs both end parts >= 2")

    total = _GradedExpr({})
    full = frozenset(range(1, m))
    for bits in range(2 ** (m - 1)):
        T = frozenset(k for k in range(1, m) if bits >> (k - 1) & 1)
        if T == full:
            continue
        # split positions 1..m into maximal runs linked by constraints in T
        runs = []
        cur = [0]
        for k in range(1, m):
            if k in T:
                cur.append(k)
            else:
                runs.append(cur)
                cur = [k]
        runs.append(cur)
        term = _GradedExpr.unit()
        for run in runs:
            combo = _chain_cells([s[i] for i in run])
            graded = _GradedExpr({})
            for c, coeff in combo.items():
                graded = graded + _GradedExpr.from_symbol(c).scale(coeff)
            term = term * graded
        total = total + term.scale(Fraction((-1) ** len(T)))

    # the full weak chain minus its strict cell, signed
    full_chain = _chain_cells(list(s.parts))
    rev = s.reverse()
    strict = full_chain.terms.get(rev)
    if strict is None or strict != QPoly.one():
        raise AssertionError("full chain lost its strict cell")
    lower = ZetaCombo(
        {c: v for c, v in full_chain.items() if c != rev}, formal=True)
    graded_lower = _GradedExpr({})
    for c, coeff in lower.items():
        graded_lower = graded_lower + _GradedExpr.from_symbol(c).scale(coeff)
    total = total + graded_lower.scale(Fraction((-1) ** (m - 1)))

    for deg, expr in total.parts.items():
        if deg == 0:
            continue
        flat = _flatten_expr(expr)
        if not flat.is_zero():
            raise AssertionError(
                f"regularized parity terms of z1-degree {deg} did not cancel")
    result = total.parts.get(0, ZetaExpr({}))
    if result.max_symbol_depth() >= m:
        raise AssertionError("parity reduction failed to lower the depth")
    return result
