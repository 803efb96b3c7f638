import random

import pytest

from gfmredux.automata import LassoWord, lasso_member
from gfmredux.gf_direct import (
    cosafety_to_nfa,
    gf_body,
    gf_to_dba,
    gf_to_gfm,
    nfa_to_gfm_gf,
    reset_subset_dba,
)
from gfmredux.ltl import LtlError, atoms_named, parse
from oracles import eval_lasso


def test_gf_body_accepts_and_strips():
    f = parse("GF(a & Xb)")
    assert str(gf_body(f)) == "a & Xb"
    # NNF runs first, so an equivalent negated form is fine
    assert str(gf_body(parse("!F G !(a)"))) == "a"


def test_gf_body_rejections():
    with pytest.raises(LtlError, match="form GF"):
        gf_body(parse("F(a)"))
    with pytest.raises(LtlError, match="co-safety"):
        gf_body(parse("GF(Ga)"))
    with pytest.raises(LtlError, match="co-safety"):
        gf_body(parse("GF(!(a U b))"))


def test_nfa_states_are_residual_classes():
    nfa = cosafety_to_nfa(parse("a & XXb"))
    # residuals: a&XXb, Xb, b, tt, plus the dead ff sink
    assert nfa.n_states == 5
    assert nfa.kind == "finite"
    assert len(nfa.final_states) == 1


def test_nfa_splits_top_level_disjunctions():
    # the two disjuncts drive separate branches instead of a joint residual
    nfa = cosafety_to_nfa(parse("(a & XXa) | (b & XXb)"))
    gfm = nfa_to_gfm_gf(nfa)
    assert not gfm.is_deterministic


def test_gfm_sizes_small():
    assert gf_to_gfm(parse("GF a")).n_states == 1
    assert gf_to_gfm(parse("GF(a | b)")).n_states == 1
    assert gf_to_gfm(parse("GF(a & Xb)")).n_states == 2
    assert gf_to_gfm(parse("GF(a & XXb)")).n_states == 3


def test_gfm_trivial_body_is_universal():
    a = gf_to_gfm(parse("GF(a | !a)"))
    assert a.n_states == 1
    letters = list(a.alphabet.letters())
    assert all((0, letter, 0) in a.marked for letter in letters)


def test_gfm_is_complete_and_marks_point_home():
    a = gf_to_gfm(parse("GF(a & XXXb)"))
    assert a.is_complete
    assert a.initial == 0
    assert all(s == 0 for (_, _, s) in a.marked)


def test_gfm_language_matches_direct_evaluation():
    rng = random.Random(11)
    for text in ("GF(a & Xb)", "GF(a | b & Xa)", "GF(a U b)", "GF(a & XXb)"):
        f = parse(text)
        a = gf_to_gfm(f)
        size = a.alphabet.size
        for _ in range(150):
            w = LassoWord(
                tuple(rng.randrange(size) for _ in range(rng.randint(0, 5))),
                tuple(rng.randrange(size) for _ in range(rng.randint(1, 5))),
            )
            assert lasso_member(a, w) == eval_lasso(f, w), (text, w)


def test_reset_dba_is_deterministic_complete():
    for text in ("GF(a & XXb)", "GF(a U b)", "GF((a & Xa) | (b & Xb))"):
        d = gf_to_dba(parse(text))
        assert d.is_deterministic and d.is_complete
        assert d.kind == "buchi"


def test_reset_dba_language_matches_direct_evaluation():
    rng = random.Random(12)
    for text in ("GF(a & Xb)", "GF(a U b)", "GF((a & Xa) | (b & Xb))"):
        f = parse(text)
        d = gf_to_dba(f)
        size = d.alphabet.size
        for _ in range(150):
            w = LassoWord(
                tuple(rng.randrange(size) for _ in range(rng.randint(0, 5))),
                tuple(rng.randrange(size) for _ in range(rng.randint(1, 5))),
            )
            assert lasso_member(d, w) == eval_lasso(f, w), (text, w)


def test_routes_agree_on_random_lassos():
    rng = random.Random(13)
    for text in ("GF(a & XXXb)", "GF(a & Xb & XXXc)"):
        f = parse(text)
        a, d = gf_to_gfm(f), gf_to_dba(f)
        size = a.alphabet.size
        for _ in range(200):
            w = LassoWord(
                tuple(rng.randrange(size) for _ in range(rng.randint(0, 6))),
                tuple(rng.randrange(size) for _ in range(rng.randint(1, 6))),
            )
            assert lasso_member(a, w) == lasso_member(d, w)


def test_explicit_atom_set_controls_alphabet():
    ap = atoms_named("a", "b", "c")
    a = gf_to_gfm(parse("GF a", ap), ap)
    assert a.alphabet.atoms == ap
    assert a.alphabet.size == 8


def test_converters_reject_wrong_kinds():
    nfa = cosafety_to_nfa(parse("a & Xb"))
    gfm = nfa_to_gfm_gf(nfa)
    with pytest.raises(LtlError):
        nfa_to_gfm_gf(gfm)
    with pytest.raises(LtlError):
        reset_subset_dba(gfm)
    with pytest.raises(LtlError):
        cosafety_to_nfa(parse("Ga"))
