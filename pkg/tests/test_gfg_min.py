import random

import pytest

from gfmredux.automata import Alphabet, Automaton, AutomatonError, LassoWord, lasso_member
from gfmredux.gfg_min import (
    MinimizeError,
    alive_states,
    lift_clamped,
    minimize,
    nca_determinize,
    nca_lang_equiv,
    normalize_safety,
    safe_contained,
    safe_deterministic,
    semantically_deterministic,
)
from gfmredux.hoa import from_hoa
from gfmredux.ltl import AtomSet

ALPH = Alphabet(AtomSet(("a",)), 1)


def _dcw(transitions, marked, initial=0):
    return Automaton(
        alphabet=ALPH,
        kind="cobuchi",
        initial=initial,
        transitions=transitions,
        marked=frozenset(marked),
    )


# marks every second occurrence of letter 1; language = finitely many 1s
FLIP = _dcw((((0,), (1,)), ((1,), (0,))), {(1, 1, 0)})

# letter 1 sends the wait state to a dead sink; 0 = stay safe
DELAY = _dcw(
    (((0,), (1,)), ((2,), (3,)), ((2,), (3,)), ((3,), (3,))),
    {(1, 0, 2), (3, 0, 3), (3, 1, 3)},
)

# language = words containing at least one 1; state 3 is unreachable
CONTAINS = _dcw(
    (((0,), (1,)), ((2,), (1,)), ((1,), (1,)), ((3,), (3,))),
    {(0, 0, 0)},
)


def test_minimize_fixture_three_to_two(fixture_text):
    d = from_hoa(fixture_text("shrink3to2.hoa"))
    m = minimize(d)
    assert (d.n_states, m.n_states) == (3, 2)
    assert m.meta["lang_class"] == (0, 1)
    assert nca_lang_equiv(m, d) is None


def test_minimize_collapses_flip_to_one_state():
    m = minimize(FLIP)
    assert m.n_states == 1
    assert m.meta["lang_class"] == (0,)
    assert nca_lang_equiv(m, FLIP) is None
    # finitely many 1s: letter 1 marked, letter 0 unmarked
    assert (0, 1, 0) in m.marked and (0, 0, 0) not in m.marked


def test_minimize_delay_automaton():
    m = minimize(DELAY)
    assert m.n_states == 3
    assert m.meta["lang_class"] == (0, 1, 2)
    assert nca_lang_equiv(m, DELAY) is None


def test_minimize_contains_automaton():
    m = minimize(CONTAINS)
    assert m.n_states == 2
    assert m.meta["lang_class"] == (0, 1)
    assert nca_lang_equiv(m, CONTAINS) is None


def test_minimize_idempotent():
    for d in (FLIP, DELAY, CONTAINS):
        m = minimize(d)
        again = minimize(m)
        assert again.n_states == m.n_states


def test_minimize_output_certificates():
    for d in (DELAY, CONTAINS):
        m = minimize(d)
        assert m.is_deterministic and m.is_complete
        assert safe_deterministic(m)
        assert semantically_deterministic(m, m.meta["lang_class"])


def test_minimize_rejects_bad_inputs():
    buchi = Automaton(
        alphabet=ALPH, kind="buchi", initial=0,
        transitions=(((0,), (0,)),), marked=frozenset({(0, 1, 0)}),
    )
    with pytest.raises(AutomatonError, match="co-Buchi"):
        minimize(buchi)
    incomplete = Automaton(
        alphabet=ALPH, kind="cobuchi", initial=0,
        transitions=(((0,), ()),), marked=frozenset(),
    )
    with pytest.raises(AutomatonError, match="deterministic complete"):
        minimize(incomplete)


def test_alive_states_and_normalize_safety():
    # state 1 loops through marked edges only: no safe tail exists there
    d = _dcw((((1,), (0,)), ((1,), (1,))), {(1, 0, 1), (1, 1, 1)})
    assert alive_states(d) == frozenset({0})
    nd = normalize_safety(d)
    assert nd.marked - d.marked == {(0, 0, 1)}
    assert normalize_safety(nd) is nd


def test_safe_contained_hand_case():
    assert safe_contained(DELAY, 3, 2)
    assert not safe_contained(DELAY, 2, 3)
    assert all(safe_contained(DELAY, q, q) for q in DELAY.states())


# nondeterministic: stay in 0 (marks on 1) or hop to 1 (marks on 0);
# accepts words with finitely many 0s or finitely many 1s
BISTABLE = Automaton(
    alphabet=ALPH, kind="cobuchi", initial=0,
    transitions=(((0, 1), (0,)), ((1,), (1,))),
    marked=frozenset({(0, 0, 0), (1, 1, 1)}),
)


def test_nca_determinize_breakpoint():
    det = nca_determinize(BISTABLE)
    assert det.n_states == 4
    assert det.is_deterministic and det.is_complete
    assert nca_lang_equiv(det, BISTABLE) is None
    assert lasso_member(det, LassoWord((), (1,)))
    assert lasso_member(det, LassoWord((1, 0), (0,)))
    assert not lasso_member(det, LassoWord((), (0, 1)))


def test_nca_determinize_state_cap():
    with pytest.raises(MinimizeError, match="exceeded 1 states"):
        nca_determinize(BISTABLE, max_states=1)


def test_nca_lang_equiv_witness_is_real():
    ce = nca_lang_equiv(FLIP, CONTAINS)
    assert ce is not None
    assert lasso_member(FLIP, ce) != lasso_member(CONTAINS, ce)


def test_lift_clamped_identity_on_deterministic():
    m = minimize(DELAY)
    lid = lift_clamped(m)
    assert lid.transitions == m.transitions
    assert lid.marked == m.marked
    assert lid.alphabet == m.alphabet


def test_lift_clamped_resolves_nondeterminism():
    lifted = lift_clamped(BISTABLE)
    assert lifted.is_deterministic and lifted.is_complete
    assert lifted.alphabet.index_arity == 2
    rng = random.Random(5)
    base, big = BISTABLE.alphabet, lifted.alphabet
    for _ in range(300):
        pre = tuple(rng.randrange(big.size) for _ in range(rng.randint(0, 4)))
        cyc = tuple(rng.randrange(big.size) for _ in range(rng.randint(1, 4)))
        wl = LassoWord(pre, cyc)
        wb = LassoWord(
            tuple(base.letter(big.mask(x), 1) for x in pre),
            tuple(base.letter(big.mask(x), 1) for x in cyc),
        )
        # each lifted run picks one concrete run of the original
        if lasso_member(lifted, wl):
            assert lasso_member(BISTABLE, wb)


def test_lift_clamped_needs_complete():
    incomplete = Automaton(
        alphabet=ALPH, kind="cobuchi", initial=0,
        transitions=(((0,), ()),), marked=frozenset(),
    )
    with pytest.raises(AutomatonError, match="complete"):
        lift_clamped(incomplete)
