"""HOA v1 import/export for transition-based Buchi / co-Buchi automata.

Supported subset: explicit transition labels (boolean formulas over AP
indices), single start state, acceptance `1 Inf(0)` or `1 Fin(0)` with marks
written as `{0}` on transitions.  Indexed alphabets (arity k > 1) are encoded
in ceil(log2 k) extra APs `_idx0`, `_idx1`, ... plus the custom header
`x-index-arity:` so they round-trip exactly; other tools may ignore that
header and read the automaton over the extended AP set.
"""

from __future__ import annotations

import re

from .automata import Alphabet, Automaton, AutomatonError, build_automaton
from .ltl import AtomSet


class HoaError(ValueError):
    pass


# --------------------------------------------------------- label formulas

class _Label:
    __slots__ = ("op", "args", "var")

    def __init__(self, op, args=(), var=-1):
        self.op = op
        self.args = args
        self.var = var

    def eval(self, mask: int) -> bool:
        if self.op == "t":
            return True
        if self.op == "f":
            return False
        if self.op == "var":
            return bool(mask >> self.var & 1)
        if self.op == "!":
            return not self.args[0].eval(mask)
        if self.op == "&":
            return all(a.eval(mask) for a in self.args)
        return any(a.eval(mask) for a in self.args)


_LABEL_TOKEN = re.compile(r"\s*(\d+|[tf!&|()])")


def _parse_label(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _LABEL_TOKEN.match(text, pos)
        if not m:
            raise HoaError(f"bad label syntax: {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(")")  # sentinel

    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take():
        t = tokens[idx[0]]
        idx[0] += 1
        return t

    def atom_():
        t = take()
        if t == "t":
            return _Label("t")
        if t == "f":
            return _Label("f")
        if t == "!":
            return _Label("!", (atom_(),))
        if t == "(":
            e = disj()
            if take() != ")":
                raise HoaError(f"unbalanced parens in label: {text!r}")
            return e
        if t.isdigit():
            return _Label("var", var=int(t))
        raise HoaError(f"bad label syntax: {text!r}")

    def conj():
        parts = [atom_()]
        while peek() == "&":
            take()
            parts.append(atom_())
        return parts[0] if len(parts) == 1 else _Label("&", tuple(parts))

    def disj():
        parts = [conj()]
        while peek() == "|":
            take()
            parts.append(conj())
        return parts[0] if len(parts) == 1 else _Label("|", tuple(parts))

    out = disj()
    if idx[0] != len(tokens) - 1:
        raise HoaError(f"trailing tokens in label: {text!r}")
    return out


def _cubes(masks, nbits: int) -> list[tuple[int, int]]:
    """Cover an exact set of minterms by (value, care-mask) cubes, merging
    pairs that differ in one cared bit until no merge applies."""
    full = (1 << nbits) - 1
    cur = {(m, full) for m in masks}
    while True:
        merged = set()
        used = set()
        ordered = sorted(cur)
        index = set(cur)
        for cube in ordered:
            if cube in used:
                continue
            v, c = cube
            partner_found = False
            for b in range(nbits):
                bit = 1 << b
                if not c & bit:
                    continue
                partner = (v ^ bit, c)
                if partner in index and partner not in used and partner != cube:
                    used.add(cube)
                    used.add(partner)
                    merged.add((v & ~bit, c & ~bit))
                    partner_found = True
                    break
            if not partner_found and cube not in used:
                merged.add(cube)
        if merged == cur:
            return sorted(cur)
        cur = merged


def _cube_str(value: int, care: int, nbits: int) -> str:
    if care == 0:
        return "t"
    terms = []
    for b in range(nbits):
        if care >> b & 1:
            terms.append(str(b) if value >> b & 1 else f"!{b}")
    return "&".join(terms)


# ----------------------------------------------------------------- export

def _idx_bits(arity: int) -> int:
    return (arity - 1).bit_length() if arity > 1 else 0


def to_hoa(a: Automaton, name: str | None = None) -> str:
    if a.kind == "finite":
        raise HoaError("finite-word automata have no HOA form")
    arity = a.alphabet.index_arity
    n_atoms = len(a.alphabet.atoms)
    nb = _idx_bits(arity)
    nbits = n_atoms + nb
    ap_names = list(a.alphabet.atoms.names) + [f"_idx{i}" for i in range(nb)]

    lines = ["HOA: v1", "tool: \"gfmredux\""]
    if name:
        lines.append(f"name: \"{name}\"")
    lines.append(f"States: {a.n_states}")
    lines.append(f"Start: {a.initial}")
    lines.append(f"AP: {len(ap_names)} " + " ".join(f'"{n}"' for n in ap_names))
    if arity > 1:
        lines.append(f"x-index-arity: {arity}")
    if a.kind == "buchi":
        lines.append("acc-name: Buchi")
        lines.append("Acceptance: 1 Inf(0)")
    else:
        lines.append("acc-name: co-Buchi")
        lines.append("Acceptance: 1 Fin(0)")
    lines.append("properties: trans-labels explicit-labels trans-acc")
    lines.append("--BODY--")
    for q in a.states():
        lines.append(f"State: {q}")
        groups: dict[tuple[int, bool], list[int]] = {}
        for letter in a.alphabet.letters():
            ext = a.alphabet.mask(letter) | (a.alphabet.index(letter) - 1) << n_atoms
            for s in a.succ(q, letter):
                groups.setdefault((s, a.is_marked(q, letter, s)), []).append(ext)
        for (dst, marked) in sorted(groups):
            cubes = _cubes(groups[(dst, marked)], nbits)
            label = " | ".join(_cube_str(v, c, nbits) for v, c in cubes)
            lines.append(f"[{label}] {dst}" + (" {0}" if marked else ""))
    lines.append("--END--")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- import

_QUOTED = re.compile(r'"((?:[^"\\]|\\.)*)"')


def from_hoa(text: str) -> Automaton:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("HOA:"):
        raise HoaError("missing HOA: v1 header")
    if lines[0].split(":", 1)[1].strip() != "v1":
        raise HoaError(f"unsupported HOA version: {lines[0]}")

    n_states = None
    start = None
    ap_names: list[str] | None = None
    acceptance = None
    acc_name = None
    arity = 1
    body_at = None
    for i, ln in enumerate(lines[1:], start=1):
        if ln == "--BODY--":
            body_at = i
            break
        if ":" not in ln:
            raise HoaError(f"bad header line: {ln!r}")
        key, val = ln.split(":", 1)
        key = key.strip()
        val = val.strip()
        if key == "States":
            n_states = int(val)
        elif key == "Start":
            if start is not None or not val.isdigit():
                raise HoaError("exactly one Start: <state> header is supported")
            start = int(val)
        elif key == "AP":
            parts = val.split(None, 1)
            count = int(parts[0])
            names = _QUOTED.findall(parts[1] if len(parts) > 1 else "")
            if len(names) != count:
                raise HoaError(f"AP count {count} does not match {len(names)} names")
            ap_names = names
        elif key == "Acceptance":
            acceptance = "".join(val.split())
        elif key == "acc-name":
            acc_name = val
        elif key == "x-index-arity":
            arity = int(val)
            if arity < 1:
                raise HoaError(f"bad x-index-arity: {val}")
        elif key in ("tool", "name", "properties"):
            pass
        elif key[:1].isupper():
            raise HoaError(f"unsupported header: {key}")
        # other lowercase headers are ignorable by the HOA convention
    if body_at is None:
        raise HoaError("missing --BODY--")
    if n_states is None:
        raise HoaError("missing States: header")
    if start is None:
        raise HoaError("missing Start: header")
    if ap_names is None:
        raise HoaError("missing AP: header")
    if acceptance == "1Inf(0)":
        kind = "buchi"
    elif acceptance == "1Fin(0)":
        kind = "cobuchi"
    else:
        raise HoaError(f"unsupported acceptance: {acceptance!r} "
                       "(need 1 Inf(0) or 1 Fin(0))")
    if acc_name not in (None, "Buchi", "co-Buchi"):
        raise HoaError(f"unsupported acc-name: {acc_name!r}")
    if acc_name == "Buchi" and kind != "buchi":
        raise HoaError("acc-name Buchi contradicts Acceptance")
    if acc_name == "co-Buchi" and kind != "cobuchi":
        raise HoaError("acc-name co-Buchi contradicts Acceptance")

    nb = _idx_bits(arity)
    if nb > len(ap_names):
        raise HoaError("x-index-arity larger than the AP set allows")
    n_atoms = len(ap_names) - nb
    atoms = AtomSet(tuple(ap_names[:n_atoms]))
    alphabet = Alphabet(atoms, arity)
    nbits = len(ap_names)

    edges = []
    state = None
    for ln in lines[body_at + 1 :]:
        if ln == "--END--":
            break
        if ln.startswith("State:"):
            rest = ln[len("State:") :].strip()
            if rest.startswith("["):
                raise HoaError("state labels are not supported")
            m = re.match(r"(\d+)", rest)
            if not m:
                raise HoaError(f"bad state line: {ln!r}")
            state = int(m.group(1))
            tail = rest[m.end() :].strip()
            if tail.startswith('"'):
                tail = _QUOTED.sub("", tail, count=1).strip()
            if tail.startswith("{"):
                raise HoaError(
                    "state-based acceptance is not supported; re-export the "
                    "automaton with transition-based acceptance"
                )
            if tail:
                raise HoaError(f"bad state line: {ln!r}")
            if not 0 <= state < n_states:
                raise HoaError(f"state {state} out of range")
        elif ln.startswith("["):
            if state is None:
                raise HoaError("transition before any State: line")
            close = ln.index("]")
            label = _parse_label(ln[1:close])
            rest = ln[close + 1 :].split()
            if not rest or not rest[0].isdigit():
                raise HoaError(f"bad transition line: {ln!r}")
            dst = int(rest[0])
            if not 0 <= dst < n_states:
                raise HoaError(f"transition target {dst} out of range")
            marked = False
            if len(rest) > 1:
                acc = " ".join(rest[1:])
                if acc.replace(" ", "") != "{0}":
                    raise HoaError(f"unsupported acceptance sets: {acc!r}")
                marked = True
            for ext in range(1 << nbits):
                if not label.eval(ext):
                    continue
                idx = (ext >> n_atoms) + 1
                if idx > arity:
                    raise HoaError(
                        f"transition label uses index {idx} beyond "
                        f"x-index-arity {arity}"
                    )
                letter = alphabet.letter(ext & ((1 << n_atoms) - 1), idx)
                edges.append((state, letter, dst, marked))
        else:
            raise HoaError(f"unexpected body line: {ln!r}")

    # duplicate (src, letter, dst) entries collapse to one transition; the
    # mark resolves angelically (Buchi runs prefer marked, co-Buchi unmarked)
    flags: dict[tuple[int, int, int], bool] = {}
    for (q, letter, dst, marked) in edges:
        key = (q, letter, dst)
        if key in flags:
            flags[key] = (flags[key] or marked) if kind == "buchi" \
                else (flags[key] and marked)
        else:
            flags[key] = marked
    merged = [(q, letter, dst, m) for (q, letter, dst), m in flags.items()]
    try:
        return build_automaton(alphabet, n_states, start, kind, merged)
    except AutomatonError as exc:
        raise HoaError(str(exc)) from exc
