"""Words over {x,y}, their rational linear combinations, and argument lists.

A nonempty admissible argument list (s1,...,sm), s1 >= 2, corresponds to the
word x^(s1-1) y x^(s2-1) y ... x^(sm-1) y.  Duality is the anti-automorphism
that reverses a word and exchanges x with y; on argument lists it acts by the
block rule (a_j, b_j) -> (b_(n-j+1), a_(n-j+1)).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

from .errors import AdmissibilityError


@total_ordering
class Word:
    """Immutable word over the alphabet {x, y}; the empty word is the unit."""

    __slots__ = ("letters",)

    def __init__(self, letters: str = ""):
        if any(ch not in "xy" for ch in letters):
            raise ValueError(f"word letters must be x or y, got {letters!r}")
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, *a):
        raise AttributeError("Word is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __hash__(self):
        return hash(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other):
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __mul__(self, other):
        if isinstance(other, Word):
            return Word(self.letters + other.letters)
        return NotImplemented

    @property
    def degree(self) -> int:
        return len(self.letters)

    def is_admissible(self) -> bool:
        """True for the empty word and words that start with x and end with y."""
        w = self.letters
        return w == "" or (w[0] == "x" and w[-1] == "y")

    def tau(self) -> "Word":
        swap = {"x": "y", "y": "x"}
        return Word("".join(swap[ch] for ch in reversed(self.letters)))

    def blocks(self) -> list:
        """Split x^a1 y^b1 ... x^as y^bs into (a_i, b_i) pairs, a_i,b_i >= 1.

        Only defined for admissible nonempty words.
        """
        if not self.letters or not self.is_admissible():
            raise AdmissibilityError(f"word {self} is not in the x...y form")
        pairs = []
        for run in re.finditer(r"(x+)(y+)", self.letters):
            pairs.append((len(run.group(1)), len(run.group(2))))
        if sum(a + b for a, b in pairs) != len(self.letters):
            raise AdmissibilityError(f"word {self} is not in the x...y form")
        return pairs

    def __str__(self):
        return self.letters if self.letters else "1"

    def __repr__(self):
        return f"Word({self.letters!r})"


EMPTY_WORD = Word("")
X = Word("x")
Y = Word("y")


class WordPoly:
    """Finite rational linear combination of words (free algebra element)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        table = {}
        if isinstance(terms, Word):
            table[terms] = Fraction(1)
        elif isinstance(terms, str):
            table[Word(terms)] = Fraction(1)
        elif terms:
            for w, c in dict(terms).items():
                if isinstance(w, str):
                    w = Word(w)
                c = Fraction(c)
                if c:
                    table[w] = c
        self.terms = table

    @classmethod
    def zero(cls) -> "WordPoly":
        return cls()

    @classmethod
    def one(cls) -> "WordPoly":
        return cls(EMPTY_WORD)

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, WordPoly):
            return other
        if isinstance(other, (Word, str)):
            return WordPoly(other)
        if isinstance(other, (int, Fraction)):
            return WordPoly({EMPTY_WORD: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        table = dict(self.terms)
        for w, c in other.terms.items():
            table[w] = table.get(w, Fraction(0)) + c
        return WordPoly(table)

    __radd__ = __add__

    def __neg__(self):
        return WordPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Concatenation product, extended bilinearly."""
        if isinstance(other, (int, Fraction)):
            return WordPoly({w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        table = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                table[w] = table.get(w, Fraction(0)) + c1 * c2
        return WordPoly(table)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int):
        out = WordPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_words(self, fn) -> "WordPoly":
        """Apply a linear map given on basis words (fn: Word -> WordPoly)."""
        out = WordPoly.zero()
        for w, c in self.terms.items():
            out = out + fn(w) * c
        return out

    def tau(self) -> "WordPoly":
        return WordPoly({w.tau(): c for w, c in self.terms.items()})

    def max_degree(self) -> int:
        return max((w.degree for w in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            c = self.terms[w]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(w) if mag == 1 and w.letters else (f"{mag}*{w}" if w.letters else str(mag))
            bits.append((sign, body))
        s0, b0 = bits[0]
        text = ("-" if s0 == "-" else "") + b0
        for sign, body in bits[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"WordPoly({str(self)})"


def tau(p):
    """Duality: reverse each word and swap x <-> y (an anti-automorphism)."""
    if isinstance(p, Word):
        return p.tau()
    return p.tau()


def is_admissible(p) -> bool:
    """Whether every monomial lies in Q*1 + x<words>y."""
    if isinstance(p, Word):
        return p.is_admissible()
    return all(w.is_admissible() for w in p.terms)


@total_ordering
class Composition:
    """Argument list (s1,...,sm) of positive integers; may be empty."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(s) for s in parts)
        if any(s < 1 for s in parts):
            raise ValueError("composition parts must be positive integers")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, *a):
        raise AttributeError("Composition is immutable")

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __hash__(self):
        return hash(self.parts)

    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.parts == other
        return isinstance(other, Composition) and self.parts == other.parts

    def __lt__(self, other):
        o = other.parts if isinstance(other, Composition) else tuple(other)
        return self.parts < o

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def is_admissible(self) -> bool:
        return not self.parts or self.parts[0] >= 2

    def require_admissible(self, what: str = "composition") -> "Composition":
        if not self.is_admissible():
            raise AdmissibilityError(f"{what} {self} has leading part 1 (divergent)")
        return self

    def reverse(self) -> "Composition":
        return Composition(self.parts[::-1])

    def __str__(self):
        return ",".join(str(s) for s in self.parts) if self.parts else "()"

    def __repr__(self):
        return f"Composition({self.parts!r})"


def word_of_composition(s: Composition) -> Word:
    """x^(s1-1) y ... x^(sm-1) y for a nonempty admissible argument list."""
    if isinstance(s, (tuple, list)):
        s = Composition(s)
    if not len(s):
        raise AdmissibilityError("the empty composition has no word")
    s.require_admissible()
    return Word("".join("x" * (p - 1) + "y" for p in s))


def composition_of_word(w: Word) -> Composition:
    """Inverse of word_of_composition; the empty word maps to ()."""
    if isinstance(w, str):
        w = Word(w)
    if not w.letters:
        return Composition()
    if not w.is_admissible():
        raise AdmissibilityError(f"word {w} does not start with x and end with y")
    parts = []
    run = 0
    for ch in w.letters:
        if ch == "x":
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return Composition(parts)


def dual_composition(s: Composition) -> Composition:
    """Duality on argument lists; an involution preserving the weight."""
    if isinstance(s, (tuple, list)):
        s = Composition(s)
    if not len(s):
        raise AdmissibilityError("the empty composition has no dual")
    return composition_of_word(word_of_composition(s).tau())


class BlockForm:
    """Blocks (a_j, b_j), a_j,b_j >= 0, encoding Cat_j (a_j+2, {1}^b_j)."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple((int(a), int(b)) for a, b in blocks)
        if not blocks:
            raise ValueError("block form needs at least one block")
        if any(a < 0 or b < 0 for a, b in blocks):
            raise ValueError("block entries must be non-negative")
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, *a):
        raise AttributeError("BlockForm is immutable")

    def __eq__(self, other):
        return isinstance(other, BlockForm) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def to_composition(self) -> Composition:
        parts = []
        for a, b in self.blocks:
            parts.append(a + 2)
            parts.extend([1] * b)
        return Composition(parts)

    @classmethod
    def from_composition(cls, s: Composition) -> "BlockForm":
        if isinstance(s, (tuple, list)):
            s = Composition(s)
        if not len(s):
            raise AdmissibilityError("the empty composition has no block form")
        s.require_admissible("block form of")
        blocks = []
        i = 0
        parts = s.parts
        while i < len(parts):
            if parts[i] < 2:
                raise AdmissibilityError(f"{s} is not a chain of (>=2, 1...) segments")
            a = parts[i] - 2
            i += 1
            b = 0
            while i < len(parts) and parts[i] == 1:
                b += 1
                i += 1
            blocks.append((a, b))
        return cls(blocks)

    def dual(self) -> "BlockForm":
        return BlockForm([(b, a) for a, b in reversed(self.blocks)])

    @property
    def weight(self) -> int:
        return sum(a + b + 2 for a, b in self.blocks)

    def __repr__(self):
        return f"BlockForm({list(self.blocks)!r})"


_REP = re.compile(r"\{(?P<body>[^{}]*)\}\^(?P<count>\d+)")


def parse_composition(text: str) -> Composition:
    """Parse 's1,s2,...' with the repetition shorthand '{s}^m'.

    Examples: '3,1' -> (3,1); '3,{1}^4' -> (3,1,1,1,1); '{2,1}^2' -> (2,1,2,1);
    '()' or '' -> the empty composition.
    """
    s = text.strip()
    if s in ("", "()"):
        return Composition()
    while True:
        m = _REP.search(s)
        if not m:
            break
        body = m.group("body").strip()
        count = int(m.group("count"))
        expansion = ",".join([body] * count) if count else ""
        s = s[: m.start()] + expansion + s[m.end():]
        s = re.sub(",{2,}", ",", s).strip(",")
    if "{" in s or "}" in s:
        raise ValueError(f"malformed repetition shorthand in {text!r}")
    try:
        parts = [int(tok) for tok in s.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"malformed composition {text!r}: {exc}") from None
    return Composition(parts)


def parse_word(text: str) -> Word:
    t = text.strip()
    if t == "1":
        return EMPTY_WORD
    return Word(t)


def compositions_of_weight(weight: int, admissible_only: bool = True):
    """All argument lists of the given total, optionally with first part >= 2."""
    out = []

    def rec(prefix, rem):
        if rem == 0:
            out.append(Composition(prefix))
            return
        lo = 2 if (admissible_only and not prefix) else 1
        for s in range(lo, rem + 1):
            rec(prefix + [s], rem - s)

    if weight >= 1:
        rec([], weight)
    return out


def admissible_compositions(max_weight: int):
    """All admissible nonempty argument lists with weight <= max_weight."""
    out = []
    for w in range(2, max_weight + 1):
        out.extend(compositions_of_weight(w, admissible_only=True))
    return out
