import random

import pytest

from qzeta.errors import AdmissibilityError
from qzeta.words import (BlockForm, Composition, Word, WordPoly,
                         admissible_compositions, composition_of_word,
                         compositions_of_weight, dual_composition,
                         is_admissible, parse_composition, tau,
                         word_of_composition)


def rand_word(rng, max_len=8):
    return Word("".join(rng.choice("xy") for _ in range(rng.randint(0, max_len))))


def test_word_of_composition_examples():
    assert word_of_composition(Composition((2,))) == Word("xy")
    assert word_of_composition(Composition((3, 1))) == Word("xxyy")
    assert word_of_composition(Composition((2, 1, 1))) == Word("xyyy")
    with pytest.raises(AdmissibilityError):
        word_of_composition(Composition((1, 2)))


def test_composition_of_word_examples():
    assert composition_of_word(Word("xy")) == Composition((2,))
    assert composition_of_word(Word("xyxy")) == Composition((2, 2))
    assert composition_of_word(Word("")) == Composition(())
    with pytest.raises(AdmissibilityError):
        composition_of_word(Word("yx"))


def test_roundtrip_on_all_small_compositions():
    for s in admissible_compositions(7):
        assert composition_of_word(word_of_composition(s)) == s


def test_tau_examples():
    assert tau(Word("xy")) == Word("xy")
    assert tau(Word("xxy")) == Word("xyy")
    assert tau(Word("xxyy")) == Word("xxyy")


def test_tau_involution_and_antiautomorphism():
    rng = random.Random(17)
    for _ in range(500):
        u, v = rand_word(rng), rand_word(rng)
        assert tau(tau(u)) == u
        assert tau(u * v) == tau(v) * tau(u)


def test_dual_examples():
    assert dual_composition(Composition((2,))) == Composition((2,))
    assert dual_composition(Composition((3,))) == Composition((2, 1))
    assert dual_composition(Composition((4,))) == Composition((2, 1, 1))


def test_dual_involution_weight_and_depth():
    for s in admissible_compositions(8):
        d = dual_composition(s)
        assert dual_composition(d) == s
        assert d.weight == s.weight
        # count of y's plus count of x's in the word equals the weight
        assert s.depth + d.depth == s.weight


def test_blockform_roundtrip_and_dual_formula():
    for s in admissible_compositions(7):
        bf = BlockForm.from_composition(s)
        assert bf.to_composition() == s
        assert bf.weight == s.weight
        assert bf.dual().to_composition() == dual_composition(s)
    assert BlockForm([(0, 0)]).to_composition() == Composition((2,))


def test_is_admissible():
    assert is_admissible(WordPoly("xy"))
    assert not is_admissible(WordPoly("yx"))
    assert is_admissible(WordPoly.one())
    assert not is_admissible(WordPoly({"xy": 1, "yy": 2}))


def test_composition_validation():
    with pytest.raises(ValueError):
        Composition((2, 0))
    assert Composition(()).is_admissible()
    assert not Composition((1, 2)).is_admissible()
    assert Composition((2, 1)).weight == 3
    assert Composition((2, 1)).reverse() == Composition((1, 2))


def test_parse_composition_shorthand():
    assert parse_composition("3,1") == Composition((3, 1))
    assert parse_composition("3,{1}^4") == Composition((3, 1, 1, 1, 1))
    assert parse_composition("{2,1}^2") == Composition((2, 1, 2, 1))
    assert parse_composition("{3}^0,2") == Composition((2,))
    assert parse_composition("()") == Composition(())
    with pytest.raises(ValueError):
        parse_composition("3,x")


def test_composition_enumerators():
    assert len(admissible_compositions(8)) == 127
    assert len(compositions_of_weight(4, admissible_only=False)) == 8


def test_wordpoly_arithmetic():
    p = WordPoly("xy") - WordPoly("xy")
    assert p.is_zero()
    q = (WordPoly("x") + WordPoly("y")) * WordPoly("y")
    assert q == WordPoly({"xy": 1, "yy": 1})
    assert (WordPoly("x") * 2) == WordPoly({"x": 2})
