import random

from qzeta.derivations import (check_exp_partial, derivation_D,
                               derivation_partial, sigma_theta)
from qzeta.words import (Word, WordPoly, admissible_compositions,
                         is_admissible, word_of_composition)
from qzeta.zeta import eval_zeta_combo, exact_params
from qzeta.stuffle import ZetaCombo
from qzeta.words import composition_of_word


def rand_word(rng, max_len=6):
    return Word("".join(rng.choice("xy") for _ in range(rng.randint(1, max_len))))


def test_derivation_D_examples():
    assert derivation_D(1, WordPoly("xy")) == WordPoly("xxy")
    assert derivation_D(1, WordPoly("y")) == WordPoly("xy")
    assert derivation_D(1, WordPoly("xy"), conjugated=True) == WordPoly("xyy")
    assert derivation_D(2, WordPoly("y")) == WordPoly("xxy")


def test_partial_examples():
    assert derivation_partial(1, WordPoly("x")) == WordPoly("xy")
    assert derivation_partial(1, WordPoly("xy")) == WordPoly({"xyy": 1, "xxy": -1})
    assert derivation_partial(2, WordPoly("x")) == WordPoly({"xxy": 1, "xyy": 1})


def test_leibniz_rule_randomized():
    rng = random.Random(23)
    for _ in range(60):
        u, v = rand_word(rng), rand_word(rng)
        for op in (lambda p: derivation_D(2, p),
                   lambda p: derivation_partial(2, p)):
            lhs = op(WordPoly(u) * WordPoly(v))
            rhs = op(WordPoly(u)) * WordPoly(v) + WordPoly(u) * op(WordPoly(v))
            assert lhs == rhs


def test_partial_preserves_admissible_span():
    for n in (1, 2, 3):
        for s in admissible_compositions(6):
            image = derivation_partial(n, WordPoly(word_of_composition(s)))
            assert is_admissible(image)


def _zeta_hat(p, ep):
    combo = {}
    for w, c in p.items():
        comp = composition_of_word(w)
        combo[comp] = combo.get(comp, 0) + c
    return eval_zeta_combo(ZetaCombo(combo), ep)


def test_partial_sign_convention_pinned_by_vanishing():
    """The generator image of y is the negative of the image of x; the
    opposite sign demonstrably breaks the vanishing property at n=1."""
    ep = exact_params(15)
    word = WordPoly("xy")
    good = derivation_partial(1, word)
    assert _zeta_hat(good, ep).is_zero()
    bad = derivation_partial(1, word, sign_on_y=+1)
    assert not _zeta_hat(bad, ep).is_zero()


def test_sigma_theta_examples():
    st = sigma_theta(WordPoly("xy"), 1)
    assert st.coeffs[0] == WordPoly("xy")
    assert st.coeffs[1] == WordPoly("xxy")
    st2 = sigma_theta(WordPoly("xyy"), 1)
    assert st2.coeffs[1] == WordPoly({"xxyy": 1, "xyxy": 1})
    stx = sigma_theta(WordPoly("x"), 4)
    assert stx.coeffs[0] == WordPoly("x")
    assert all(c.is_zero() for c in stx.coeffs[1:])


def test_sigma_theta_multiplicative_randomized():
    rng = random.Random(29)
    M = 3
    for _ in range(500):
        u, v = rand_word(rng, 4), rand_word(rng, 4)
        lhs = sigma_theta(WordPoly(u) * WordPoly(v), M)
        rhs = sigma_theta(WordPoly(u), M) * sigma_theta(WordPoly(v), M)
        assert lhs == rhs


def test_exp_partial_matches_conjugated_flow():
    for M in range(5):
        equal, report = check_exp_partial(M)
        assert equal, report
