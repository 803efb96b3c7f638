"""State reduction pipeline for good-for-MDP Buchi automata.

Four steps: complete the automaton and determinise it over an indexed
alphabet (each letter splits into (letter, rank) with the rank choosing a
successor), flip the acceptance to co-Buchi, reduce the deterministic
co-Buchi automaton, and read the result back as a 0/1 probabilistic
automaton with uniform transition weights.  Whether the input really is
good for MDPs is the caller's claim; the pipeline preserves the automaton
language either way, but the probabilistic reading is only meaningful for
good-for-MDP inputs.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .automata import (
    Alphabet,
    Automaton,
    AutomatonError,
    ProbAutomaton,
    build_automaton,
    complete,
)
from .gfg_min import minimize

_run_ids = itertools.count(1)


def gfm_to_dba(a: Automaton) -> Automaton:
    """Deterministic Buchi automaton over the rank-indexed alphabet.

    With k the maximal out-degree, letter (mask, i), i <= k moves to the
    i-th successor (in sorted order) of the source on (mask); surplus ranks
    go to an unmarked rejecting sink.  Edge marks are inherited.
    """
    if a.kind != "buchi":
        raise AutomatonError(f"gfm_to_dba needs a Buchi automaton, got {a.kind}")
    a = complete(a)
    base = a.alphabet
    k = max(len(a.succ(q, x)) for q in a.states() for x in base.letters())
    alphabet = Alphabet(base.atoms, base.index_arity * k)
    need_sink = any(
        len(a.succ(q, x)) < k for q in a.states() for x in base.letters()
    )
    sink = a.n_states
    edges = []
    for q in a.states():
        for x in base.letters():
            succs = a.succ(q, x)
            for j in range(1, k + 1):
                lifted = alphabet.letter(base.mask(x), (base.index(x) - 1) * k + j)
                if j <= len(succs):
                    s = succs[j - 1]
                    edges.append((q, lifted, s, (q, x, s) in a.marked))
                else:
                    edges.append((q, lifted, sink, False))
    n = a.n_states
    if need_sink:
        for y in alphabet.letters():
            edges.append((sink, y, sink, False))
        n += 1
    return build_automaton(alphabet, n, a.initial, "buchi", edges)


def dba_to_dca(d: Automaton) -> Automaton:
    """Same structure, co-Buchi reading: the co-Buchi language is the
    complement of the Buchi one for deterministic complete automata."""
    if d.kind != "buchi":
        raise AutomatonError("dba_to_dca needs a Buchi automaton")
    if not (d.is_deterministic and d.is_complete):
        raise AutomatonError("dba_to_dca needs a deterministic complete automaton")
    return Automaton(
        alphabet=d.alphabet,
        kind="cobuchi",
        initial=d.initial,
        transitions=d.transitions,
        marked=d.marked,
        meta=d.meta,
    )


def nca_to_pa(a: Automaton) -> ProbAutomaton:
    """Uniform-weight probabilistic automaton over the same transitions;
    marks carry over and keep their infinitely-often reading."""
    rows = []
    for q in a.states():
        row = []
        for letter in a.alphabet.letters():
            succs = a.succ(q, letter)
            row.append(tuple((s, Fraction(1, len(succs))) for s in succs))
        rows.append(tuple(row))
    transitions = tuple(rows)
    return ProbAutomaton(
        alphabet=a.alphabet,
        initial=a.initial,
        transitions=transitions,
        marked=a.marked,
        meta=a.meta,
    )


@dataclass(frozen=True)
class StageInfo:
    name: str
    states: int
    marks: int
    seconds: float


@dataclass(frozen=True)
class ReduxReport:
    stages: tuple[StageInfo, ...]
    minimized: Automaton
    run_id: int
    gfm_asserted_by_caller: bool = True

    def to_json(self) -> dict:
        return {
            "gfm_asserted_by_caller": self.gfm_asserted_by_caller,
            "run_id": self.run_id,
            "stages": [
                {
                    "name": s.name,
                    "states": s.states,
                    "marks": s.marks,
                    "seconds": s.seconds,
                }
                for s in self.stages
            ],
        }


class ReduxResult(NamedTuple):
    pa: ProbAutomaton
    dba: Automaton
    report: ReduxReport


def redux(a: Automaton, validate: bool = True) -> ReduxResult:
    """Run the four-step pipeline on a Buchi automaton the caller asserts
    to be good for MDPs.  Returns the 0/1 probabilistic automaton, the
    intermediate indexed deterministic Buchi automaton, and a stage report.

    The probabilistic automaton and the DBA share a `redux_id` meta token;
    consumers that require both to stem from one run can check it.
    """
    run_id = next(_run_ids)
    stages = []

    def record(name, aut, t0):
        stages.append(
            StageInfo(name, aut.n_states, len(aut.marked), time.perf_counter() - t0)
        )

    t0 = time.perf_counter()
    dba = gfm_to_dba(a)
    record("indexed_dba", dba, t0)

    t0 = time.perf_counter()
    dca = dba_to_dca(dba)
    record("dca", dca, t0)

    t0 = time.perf_counter()
    small = minimize(dca, validate=validate)
    record("minimized", small, t0)

    t0 = time.perf_counter()
    lang_class = small.meta["lang_class"]
    small = Automaton(
        alphabet=small.alphabet,
        kind=small.kind,
        initial=small.initial,
        transitions=small.transitions,
        marked=small.marked,
        meta={"lang_class": lang_class, "redux_id": run_id},
    )
    pa = nca_to_pa(small)
    record("pa", pa, t0)

    dba = Automaton(
        alphabet=dba.alphabet,
        kind=dba.kind,
        initial=dba.initial,
        transitions=dba.transitions,
        marked=dba.marked,
        meta={"redux_id": run_id},
    )
    report = ReduxReport(stages=tuple(stages), minimized=small, run_id=run_id)
    return ReduxResult(pa=pa, dba=dba, report=report)


def pa_to_json(pa: ProbAutomaton) -> dict:
    """JSON document for a probabilistic automaton: per state, per letter id,
    a list of [successor, probability, marked] moves."""
    states = []
    for q in range(len(pa.transitions)):
        rows = []
        for letter in pa.alphabet.letters():
            rows.append(
                [
                    [s, str(p), (q, letter, s) in pa.marked]
                    for s, p in pa.dist(q, letter)
                ]
            )
        states.append(rows)
    doc = {
        "atoms": list(pa.alphabet.atoms),
        "index_arity": pa.alphabet.index_arity,
        "initial": pa.initial,
        "states": states,
    }
    if isinstance(pa.meta, dict):
        if "lang_class" in pa.meta:
            doc["lang_class"] = list(pa.meta["lang_class"])
        if "redux_id" in pa.meta:
            doc["redux_id"] = pa.meta["redux_id"]
    return doc


def pa_from_json(data: dict) -> ProbAutomaton:
    from .ltl import AtomSet

    alphabet = Alphabet(
        AtomSet(tuple(data["atoms"])), int(data.get("index_arity", 1))
    )
    states = data["states"]
    transitions = []
    marked = set()
    for q, rows in enumerate(states):
        if len(rows) != alphabet.size:
            raise AutomatonError(
                f"state {q} has {len(rows)} letter rows, expected {alphabet.size}"
            )
        per_letter = []
        for letter, moves in enumerate(rows):
            dist = []
            for s, p, hot in moves:
                dist.append((int(s), Fraction(str(p))))
                if hot:
                    marked.add((q, letter, int(s)))
            per_letter.append(tuple(sorted(dist)))
        transitions.append(tuple(per_letter))
    meta = {}
    if "lang_class" in data:
        meta["lang_class"] = tuple(data["lang_class"])
    if "redux_id" in data:
        meta["redux_id"] = data["redux_id"]
    return ProbAutomaton(
        alphabet=alphabet,
        initial=int(data["initial"]),
        transitions=tuple(transitions),
        marked=frozenset(marked),
        meta=meta or None,
    )
