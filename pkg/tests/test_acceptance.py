"""End-to-end acceptance checks, one test per shipped guarantee.

Run with -v to get a pass/fail line per criterion.  These are intentionally
heavier than the unit tests: they re-derive every published size, value and
agreement claim at full scale.
"""

import json
import random
import time
from fractions import Fraction

from gfmredux.automata import LassoWord, lasso_member, pa_lasso_prob
from gfmredux.gf_direct import gf_to_dba, gf_to_gfm
from gfmredux.gfg_min import (
    minimize,
    nca_lang_equiv,
    safe_deterministic,
    semantically_deterministic,
)
from gfmredux.hoa import from_hoa
from gfmredux.ltl import atoms_named, parse, to_string
from gfmredux.mdp import (
    gen_random_mdp,
    induce_mc,
    mdp_from_json,
    mec_decompose,
    product_nba,
    product_pa,
    synthesize,
)
from gfmredux.patterns import gen_pattern
from gfmredux.redux import dba_to_dca, gfm_to_dba, redux
from oracles import brute_mecs, eval_lasso, random_cosafety_text


def _random_lasso(rng, size, max_len=5):
    return LassoWord(
        tuple(rng.randrange(size) for _ in range(rng.randint(0, max_len))),
        tuple(rng.randrange(size) for _ in range(rng.randint(1, max_len))),
    )


def test_criterion_1_gfm_gf_sizes_large_patterns():
    cases = [("TDR", (n,), n + 1) for n in range(6, 11)]
    cases += [("LIB", (n,), 2 * n + 1) for n in range(6, 10)]
    for family, params, want in cases:
        t0 = time.perf_counter()
        a = gf_to_gfm(gen_pattern(family, params))
        elapsed = time.perf_counter() - t0
        assert a.n_states == want, (family, params, a.n_states, want)
        assert elapsed < 1.0, (family, params, elapsed)


def test_criterion_2_gfm_gf_sizes_small_patterns():
    for n, want in ((3, 4), (4, 5), (5, 6)):
        assert gf_to_gfm(gen_pattern("TDR", (n,))).n_states == want
    ncs_rows = [
        ((1, 2), 4),
        ((1, 2, 1), 5),
        ((1, 2, 2), 6),
        ((1, 2, 3), 7),
        ((1, 2, 3, 1), 8),
        ((1, 2, 3, 2), 9),
        ((1, 2, 3, 3), 10),
        ((1, 2, 3, 4), 11),
    ]
    for params, want in ncs_rows:
        a = gf_to_gfm(gen_pattern("NCS", params))
        assert a.n_states == want, (params, a.n_states, want)
    assert gf_to_gfm(parse("GF(a | b)")).n_states == 1
    assert gf_to_gfm(parse("GF((a & XXXa) | (!a & XXX!a))")).n_states == 7
    assert gf_to_gfm(parse("GF((a & XXXXa) | (!a & XXXX!a))")).n_states == 9


def test_criterion_3_commit_fixture_values(fixture_text):
    t0 = time.perf_counter()
    coin = mdp_from_json(json.loads(fixture_text("coinflip_mdp.json")))
    expected = [
        ("commit_blind.hoa", Fraction(1, 2)),
        ("commit_wait.hoa", Fraction(1)),
        ("commit_det.hoa", Fraction(1)),
    ]
    for name, want in expected:
        prod = product_nba(coin, from_hoa(fixture_text(name)))
        res = synthesize(prod)
        assert res.values.exact
        assert res.value == want, (name, res.value, want)
        assert induce_mc(prod, res.strategy) == want, name
    assert time.perf_counter() - t0 < 1.0


CROSS_ROUTE_ATOMS = atoms_named("a", "b", "a1", "a2")
CROSS_ROUTE_TEXTS = (
    "GF a",
    to_string(gen_pattern("TDR", (2,))),
    to_string(gen_pattern("TDR", (3,))),
    to_string(gen_pattern("LIB", (2,))),
)


def test_criterion_4_three_routes_agree():
    t0 = time.perf_counter()
    autos = []
    for text in CROSS_ROUTE_TEXTS:
        f = parse(text, CROSS_ROUTE_ATOMS)
        gfm = gf_to_gfm(f, CROSS_ROUTE_ATOMS)
        autos.append((text, gfm, gf_to_dba(f, CROSS_ROUTE_ATOMS), redux(gfm).pa))
    for seed in range(50):
        m = gen_random_mdp(random.Random(seed), atoms=CROSS_ROUTE_ATOMS.names)
        for text, gfm, dba, pa in autos:
            prod = product_nba(m, gfm)
            v_nba = synthesize(prod).value
            v_dba = synthesize(product_nba(m, dba)).value
            v_pa = synthesize(product_pa(m, pa)).value
            assert v_nba == v_dba == v_pa, (seed, text, v_nba, v_dba, v_pa)
            v_float = synthesize(prod, exact=False).value
            assert abs(float(v_nba) - v_float) <= 1e-9, (seed, text)
    assert time.perf_counter() - t0 < 300.0


def test_criterion_5_redux_pa_zero_one():
    pipelines = []
    for text in CROSS_ROUTE_TEXTS:
        f = parse(text, CROSS_ROUTE_ATOMS)
        pipelines.append(redux(gf_to_gfm(f, CROSS_ROUTE_ATOMS)))
    for n in (2, 3, 4):
        pipelines.append(redux(gf_to_gfm(gen_pattern("TDR", (n,)))))
    for i, res in enumerate(pipelines):
        rng = random.Random(100 + i)
        size = res.pa.alphabet.size
        for _ in range(1000):
            w = _random_lasso(rng, size, max_len=6)
            p = pa_lasso_prob(res.pa, w)
            assert p == 0 or p == 1, (i, w, p)
            assert p == (1 if lasso_member(res.dba, w) else 0), (i, w)


def test_criterion_6_reduction_sound_and_effective(fixture_text):
    for n in range(3, 7):
        d = gf_to_dba(gen_pattern("TDR", (n,)))
        mi = redux(d).report.minimized
        cin = dba_to_dca(d)
        assert mi.n_states <= d.n_states + 1, (n, mi.n_states)
        assert nca_lang_equiv(mi, cin) is None, n
        assert minimize(mi).n_states == mi.n_states, n
        rng = random.Random(n)
        for _ in range(300):
            w = _random_lasso(rng, d.alphabet.size)
            assert lasso_member(mi, w) == lasso_member(cin, w), (n, w)
    shrink = from_hoa(fixture_text("shrink3to2.hoa"))
    small = minimize(shrink)
    assert (shrink.n_states, small.n_states) == (3, 2)
    assert nca_lang_equiv(small, shrink) is None
    assert minimize(small).n_states == 2


def test_criterion_7_duplicates_removed(fixture_text):
    cases = (
        ("TDR", (4,), "dup_tdr4.hoa"),
        ("NCS", (1, 2), "dup_ncs.hoa"),
        ("LIB", (2,), "dup_lib2.hoa"),
    )
    for family, params, name in cases:
        baseline = redux(gf_to_gfm(gen_pattern(family, params)))
        dup = from_hoa(fixture_text(name))
        res = redux(dup)
        mi = res.report.minimized
        assert mi.n_states == baseline.report.minimized.n_states, name
        assert mi.n_states < gfm_to_dba(dup).n_states, name
        assert safe_deterministic(mi), name
        assert semantically_deterministic(mi, mi.meta["lang_class"]), name
        assert nca_lang_equiv(mi, dba_to_dca(gfm_to_dba(dup))) is None, name


def test_criterion_8_oracle_integrity():
    rng = random.Random(0)
    for _ in range(200):
        body = random_cosafety_text(rng, max_depth=5, atoms=("a", "b", "c"))
        f = parse(f"GF({body})")
        a = gf_to_gfm(f)
        for _ in range(50):
            w = _random_lasso(rng, a.alphabet.size)
            assert lasso_member(a, w) == eval_lasso(f, w), (body, w)
    for seed in range(40):
        srng = random.Random(1000 + seed)
        m = gen_random_mdp(srng, max_states=5)
        trips = [
            (q, ai, s)
            for q in m.states()
            for ai in range(m.n_actions(q))
            for s, _ in m.dist(q, ai)
        ]
        marked = frozenset(srng.sample(trips, min(4, len(trips))))
        got = [
            (x.states, x.actions, x.accepting, x.closed)
            for x in mec_decompose(m, marked)
        ]
        assert got == brute_mecs(m, marked), seed
