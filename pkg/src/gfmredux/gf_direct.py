"""GF(co-safety) goals to small good-for-MDP Buchi automata.

The co-safety body is compiled to an NFA over residual formulas (one state
per propositional-equivalence class of derivatives, with top-level
disjunctions split nondeterministically).  Wrapping the NFA with reset
transitions yields the GFM Buchi automaton; determinising the same NFA with
a reset-subset rule yields a deterministic Buchi oracle for GF(body).
"""

from __future__ import annotations

from .automata import Alphabet, Automaton, build_automaton
from .ltl import (
    FF,
    TT,
    AtomSet,
    LtlError,
    LtlFormula,
    af_step,
    atom_set,
    fold,
    is_cosafety,
    prop_equiv,
    to_nnf,
)


def gf_body(f: LtlFormula) -> LtlFormula:
    """The co-safety body of a GF(...) formula; raises LtlError otherwise."""
    g = to_nnf(f)
    if g.kind != "globally" or g.children[0].kind != "finally":
        raise LtlError("GF body must be co-safety: formula is not of the form GF(...)")
    body = g.children[0].children[0]
    if not is_cosafety(body):
        raise LtlError("GF body must be co-safety")
    return body


def cosafety_to_nfa(f: LtlFormula, atoms: AtomSet | None = None) -> Automaton:
    """Finite-word NFA with L(N).Sigma^omega = [f] for co-safety f.

    States are propositional-equivalence classes of folded derivatives; a
    residual's top-level disjuncts become separate successors, which is what
    keeps derivative chains of independent disjuncts from multiplying out.
    """
    g = fold(to_nnf(f))
    if not is_cosafety(g):
        raise LtlError("cosafety_to_nfa needs a co-safety formula")
    if atoms is None:
        atoms = atom_set(g) or AtomSet(())
    alphabet = Alphabet(atoms, 1)

    reps: list[LtlFormula] = []
    finals: list[int] = []
    by_formula: dict[LtlFormula, int] = {}

    def class_of(h: LtlFormula) -> int:
        if h in by_formula:
            return by_formula[h]
        for i, r in enumerate(reps):
            if prop_equiv(h, r):
                by_formula[h] = i
                return i
        i = len(reps)
        reps.append(h)
        by_formula[h] = i
        if prop_equiv(h, TT):
            finals.append(i)
        return i

    init = class_of(g)
    edges = []
    frontier = [init]
    done = set()
    while frontier:
        q = frontier.pop(0)
        if q in done:
            continue
        done.add(q)
        rep = reps[q]
        for letter in alphabet.letters():
            residual = af_step(rep, letter)
            parts = residual.children if residual.kind == "or" else (residual,)
            for part in parts:
                s = class_of(part)
                edges.append((q, letter, s))
                if s not in done:
                    frontier.append(s)
    return build_automaton(alphabet, len(reps), init, "finite", edges,
                           finals=finals)


def _useful_states(nfa: Automaton) -> set[int]:
    """States that can reach a final state (finals' outgoing edges ignored,
    which does not change the set: only the first final visit matters)."""
    back: dict[int, set[int]] = {q: set() for q in nfa.states()}
    for q in nfa.states():
        if q in nfa.final_states:
            continue
        for letter in nfa.alphabet.letters():
            for s in nfa.succ(q, letter):
                back[s].add(q)
    useful = set(nfa.final_states)
    frontier = list(useful)
    while frontier:
        q = frontier.pop()
        for p in back[q]:
            if p not in useful:
                useful.add(p)
                frontier.append(p)
    return useful


def _universal_buchi(alphabet: Alphabet) -> Automaton:
    edges = [(0, letter, 0, True) for letter in alphabet.letters()]
    return build_automaton(alphabet, 1, 0, "buchi", edges)


def nfa_to_gfm_gf(nfa: Automaton) -> Automaton:
    """Good-for-MDP Buchi automaton for GF(L(nfa).Sigma^omega).

    Final targets are replaced by a reset to the initial state and the reset
    transition is marked; dead NFA states are dropped first.  If the NFA
    accepts the empty word the goal is trivially true and the universal
    one-state automaton comes back.
    """
    if nfa.kind != "finite":
        raise LtlError("nfa_to_gfm_gf needs a finite-word automaton")
    if nfa.initial in nfa.final_states:
        return _universal_buchi(nfa.alphabet)
    useful = _useful_states(nfa)

    order = [nfa.initial]
    number = {nfa.initial: 0}
    edges = []
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for letter in nfa.alphabet.letters():
            base = nfa.succ(q, letter)
            fires = any(s in nfa.final_states for s in base)
            targets = {s for s in base if s in useful and s not in nfa.final_states}
            for s in sorted(targets):
                if s not in number:
                    number[s] = len(order)
                    order.append(s)
                edges.append((number[q], letter, number[s]))
            edges.append((number[q], letter, 0, fires))
    return build_automaton(nfa.alphabet, len(order), 0, "buchi", edges)


def reset_subset_dba(nfa: Automaton) -> Automaton:
    """Deterministic Buchi automaton for GF(L(nfa).Sigma^omega).

    Subset construction that restarts a fresh copy of the NFA every step and
    resets to {initial} with a mark whenever some tracked run completes.
    Distinguishes completion from mere aliveness: only subsets reachable
    between consecutive completions are tracked.
    """
    if nfa.kind != "finite":
        raise LtlError("reset_subset_dba needs a finite-word automaton")
    if nfa.initial in nfa.final_states:
        return _universal_buchi(nfa.alphabet)
    useful = _useful_states(nfa)

    start = frozenset({nfa.initial})
    number: dict[frozenset[int], int] = {start: 0}
    order = [start]
    edges = []
    i = 0
    while i < len(order):
        subset = order[i]
        i += 1
        for letter in nfa.alphabet.letters():
            targets = set()
            for q in subset:
                targets.update(
                    s for s in nfa.succ(q, letter) if s in useful
                )
            if targets & nfa.final_states:
                succ = start
                fires = True
            else:
                succ = frozenset(targets | {nfa.initial})
                fires = False
            if succ not in number:
                number[succ] = len(order)
                order.append(succ)
            edges.append((number[subset], letter, number[succ], fires))
    return build_automaton(nfa.alphabet, len(order), 0, "buchi", edges)


def gf_to_gfm(f: LtlFormula, atoms: AtomSet | None = None) -> Automaton:
    """Full pipeline: GF(co-safety) formula to its GFM Buchi automaton."""
    return nfa_to_gfm_gf(cosafety_to_nfa(gf_body(f), atoms))


def gf_to_dba(f: LtlFormula, atoms: AtomSet | None = None) -> Automaton:
    """Deterministic-oracle pipeline for the same GF(co-safety) goal."""
    return reset_subset_dba(cosafety_to_nfa(gf_body(f), atoms))
