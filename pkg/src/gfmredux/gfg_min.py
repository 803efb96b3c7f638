"""Polynomial state reduction of deterministic co-Buchi automata.

States are compared by language class (exact, via a product construction)
and by safe language — the finite words readable without crossing a mark.
A state whose safe language is covered by a same-class partner is a merge
candidate: its incoming edges are redirected to the partner, either keeping
their marks or conservatively marking them.  Each candidate rewrite is
committed only after an exact equivalence check against the *original*
automaton, so the result is correct by checking rather than by a fragile
transition-rule argument; a rewrite that fails the check is simply skipped.
Everything stays deterministic, which keeps all checks polynomial.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache

from .automata import (
    Alphabet,
    Automaton,
    AutomatonError,
    LassoWord,
    build_automaton,
    dcw_counterexample,
    lang_partition,
    prune_unreachable,
    strongly_connected_components,
)


class MinimizeError(AutomatonError):
    def __init__(self, message: str, lasso: LassoWord | None = None):
        super().__init__(message)
        self.lasso = lasso


def _require_dcw_complete(d: Automaton, who: str):
    if d.kind != "cobuchi":
        raise AutomatonError(f"{who} needs a co-Buchi automaton, got {d.kind}")
    if not (d.is_deterministic and d.is_complete):
        raise AutomatonError(f"{who} needs a deterministic complete automaton")


# ------------------------------------------------------------ safe structure

def alive_states(d: Automaton) -> frozenset[int]:
    """States with an infinite unmarked run, i.e. that reach an unmarked
    cycle through unmarked edges."""
    def succ_u(q):
        for letter in d.alphabet.letters():
            for s in d.succ(q, letter):
                if (q, letter, s) not in d.marked:
                    yield s

    comps = strongly_connected_components(list(d.states()), succ_u)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for q in comp:
            comp_of[q] = ci
    alive = set()
    for q in d.states():
        for s in succ_u(q):
            if comp_of[s] == comp_of[q]:
                alive.add(q)
                break
    pred_u: dict[int, set[int]] = {q: set() for q in d.states()}
    for q in d.states():
        for s in succ_u(q):
            pred_u[s].add(q)
    frontier = list(alive)
    while frontier:
        q = frontier.pop()
        for p in pred_u[q]:
            if p not in alive:
                alive.add(p)
                frontier.append(p)
    return frozenset(alive)


def normalize_safety(d: Automaton) -> Automaton:
    """Mark every unmarked edge whose target has no infinite unmarked run.

    Such an edge can never sit on an eventually-safe run tail, so the marks
    change no acceptance; they make safe languages honest before comparing.
    """
    alive = alive_states(d)
    extra = set()
    for q in d.states():
        for letter in d.alphabet.letters():
            for s in d.succ(q, letter):
                if (q, letter, s) not in d.marked and s not in alive:
                    extra.add((q, letter, s))
    if not extra:
        return d
    return dataclasses.replace(d, marked=d.marked | extra)


@lru_cache(maxsize=256)
def _safe_noncontainment(d: Automaton) -> frozenset[tuple[int, int]]:
    """Pairs (p, q) such that safe(p) is not a subset of safe(q)."""
    letters = list(d.alphabet.letters())
    n = d.n_states
    nodes = [(p, q) for p in range(n) for q in range(n)]
    bad = set()
    pred: dict[tuple[int, int], list[tuple[int, int]]] = {nd: [] for nd in nodes}
    for (p, q) in nodes:
        for letter in letters:
            p2 = d.succ(p, letter)[0]
            q2 = d.succ(q, letter)[0]
            p_safe = (p, letter, p2) not in d.marked
            q_safe = (q, letter, q2) not in d.marked
            if p_safe and not q_safe:
                bad.add((p, q))
            elif p_safe and q_safe:
                pred[(p2, q2)].append((p, q))
    frontier = list(bad)
    while frontier:
        nd = frontier.pop()
        for back in pred[nd]:
            if back not in bad:
                bad.add(back)
                frontier.append(back)
    return frozenset(bad)


def safe_contained(d: Automaton, p: int, q: int) -> bool:
    """Is every finite word that is safe from p also safe from q?"""
    _require_dcw_complete(d, "safe_contained")
    return (p, q) not in _safe_noncontainment(d)


# ----------------------------------------------------------- determinisation

def nca_determinize(a: Automaton, max_states: int = 200_000) -> Automaton:
    """Breakpoint determinisation of a complete nondeterministic co-Buchi
    automaton: track (reachable set S, still-safe subset O); when O dies the
    output edge is marked and O restarts from S."""
    if a.kind != "cobuchi":
        raise AutomatonError("nca_determinize needs a co-Buchi automaton")
    if not a.is_complete:
        raise AutomatonError("nca_determinize needs a complete automaton")
    start = (frozenset({a.initial}), frozenset({a.initial}))
    number = {start: 0}
    order = [start]
    edges = []
    i = 0
    while i < len(order):
        s_set, o_set = order[i]
        i += 1
        for letter in a.alphabet.letters():
            s_next = set()
            for q in s_set:
                s_next.update(a.succ(q, letter))
            o_next = set()
            for q in o_set:
                for s in a.succ(q, letter):
                    if (q, letter, s) not in a.marked:
                        o_next.add(s)
            if o_next:
                node = (frozenset(s_next), frozenset(o_next))
                breakpoint_ = False
            else:
                node = (frozenset(s_next), frozenset(s_next))
                breakpoint_ = True
            if node not in number:
                if len(order) >= max_states:
                    raise MinimizeError(
                        f"determinisation exceeded {max_states} states"
                    )
                number[node] = len(order)
                order.append(node)
            edges.append((number[(s_set, o_set)], letter, number[node], breakpoint_))
    return build_automaton(a.alphabet, len(order), 0, "cobuchi", edges)


def nca_lang_equiv(a1: Automaton, a2: Automaton) -> LassoWord | None:
    """None if two complete co-Buchi automata (nondeterminism allowed)
    recognise the same language, else a separating lasso."""
    d2 = a2 if (a2.is_deterministic and a2.is_complete) else nca_determinize(a2)
    ce = dcw_counterexample(a1, d2)
    if ce is not None:
        return ce
    d1 = a1 if (a1.is_deterministic and a1.is_complete) else nca_determinize(a1)
    return dcw_counterexample(a2, d1)


# -------------------------------------------------------------- minimisation

_MAX_TARGETS = 4


def _redirect(d: Automaton, gone: int, target: int, keep_marks: bool) -> Automaton:
    """Drop state `gone`, sending its incoming edges to `target` (marked
    unless keep_marks preserves the original flag), then prune."""
    keep = [q for q in d.states() if q != gone]
    new_id = {q: i for i, q in enumerate(keep)}

    def land(s: int) -> int:
        return new_id[target if s == gone else s]

    edges = []
    for q in keep:
        for letter in d.alphabet.letters():
            s = d.succ(q, letter)[0]
            marked = (q, letter, s) in d.marked
            if s == gone and not keep_marks:
                marked = True
            edges.append((new_id[q], letter, land(s), marked))
    initial = new_id[target if d.initial == gone else d.initial]
    cand = build_automaton(d.alphabet, len(keep), initial, "cobuchi", edges)
    return prune_unreachable(cand)


def _equiv_dcw(a: Automaton, b: Automaton) -> LassoWord | None:
    ce = dcw_counterexample(a, b)
    if ce is not None:
        return ce
    return dcw_counterexample(b, a)


def minimize(d: Automaton, validate: bool = True) -> Automaton:
    """Reduce a deterministic complete co-Buchi automaton, preserving its
    language exactly.

    The output is deterministic and complete over the same alphabet and
    never larger than the (reachable part of the) input.  Its meta carries
    `lang_class`, the language-class id of each output state.  `validate`
    adds a final equivalence assertion; the per-merge checks that guarantee
    correctness run regardless.
    """
    _require_dcw_complete(d, "minimize")
    original = prune_unreachable(d)
    cur = normalize_safety(original)

    changed = True
    while changed:
        changed = False
        if cur.n_states <= 1:
            break
        part = lang_partition(cur)
        noncont = _safe_noncontainment(cur)
        for q in cur.states():
            # same-class states whose safe language covers q's, equal first
            equal, strict = [], []
            for p in cur.states():
                if p == q or part[p] != part[q] or (q, p) in noncont:
                    continue
                (equal if (p, q) not in noncont else strict).append(p)
            committed = False
            for target in (equal + strict)[:_MAX_TARGETS]:
                for keep_marks in (True, False):
                    cand = _redirect(cur, q, target, keep_marks)
                    if _equiv_dcw(cand, original) is None:
                        cur = normalize_safety(cand)
                        committed = True
                        break
                if committed:
                    break
            if committed:
                changed = True
                break

    part = lang_partition(cur)
    cur = dataclasses.replace(cur, meta={"lang_class": part})
    if validate:
        ce = _equiv_dcw(cur, original)
        if ce is not None:  # pragma: no cover - every merge was checked
            raise MinimizeError(f"minimisation changed the language: {ce}", ce)
    return cur


def safe_deterministic(a: Automaton) -> bool:
    """At most one unmarked move per (state, letter)."""
    for q in a.states():
        for letter in a.alphabet.letters():
            unmarked = [
                s for s in a.succ(q, letter) if (q, letter, s) not in a.marked
            ]
            if len(unmarked) > 1:
                return False
    return True


def semantically_deterministic(a: Automaton, lang_class) -> bool:
    """All successors of any (state, letter) share one language class.

    `lang_class` maps states to class ids (minimize stores this in meta).
    """
    for q in a.states():
        for letter in a.alphabet.letters():
            ids = {lang_class[s] for s in a.succ(q, letter)}
            if len(ids) > 1:
                return False
    return True


# --------------------------------------------------------------- idempotence

def lift_clamped(a: Automaton) -> Automaton:
    """Deterministic view of a complete automaton where each letter splits
    by successor rank; surplus ranks clamp to the last successor instead of
    a fresh sink, so no new language class appears.  Lets the pipeline be
    re-run on its own output for idempotence checks."""
    if not a.is_complete:
        raise AutomatonError("lift_clamped needs a complete automaton")
    k2 = max(
        len(a.succ(q, letter)) for q in a.states() for letter in a.alphabet.letters()
    )
    base = a.alphabet
    alphabet = Alphabet(base.atoms, base.index_arity * k2)
    edges = []
    for q in a.states():
        for letter in base.letters():
            succs = a.succ(q, letter)
            for j in range(1, k2 + 1):
                s = succs[min(j, len(succs)) - 1]
                marked = (q, letter, s) in a.marked
                lifted = alphabet.letter(
                    base.mask(letter), (base.index(letter) - 1) * k2 + j
                )
                edges.append((q, lifted, s, marked))
    return build_automaton(alphabet, a.n_states, a.initial, a.kind, edges,
                           meta=a.meta)
