"""Command line front end.

Subcommands: gen-pattern, ltl2gfm-gf, redux, product, solve, bench,
check-equiv, fixtures.  `gen-pattern` and `ltl2gfm-gf` are also installed
as standalone commands.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import random
import sys
import time
from importlib import resources

from .automata import LassoWord, complete, lasso_member
from .gf_direct import gf_to_dba, gf_to_gfm
from .gfg_min import nca_lang_equiv
from .hoa import from_hoa, to_hoa
from .ltl import LtlError, LtlParseError, parse, to_string
from .mdp import (
    mdp_from_json,
    mdp_to_json,
    product_nba,
    product_pa,
    strategy_to_json,
    synthesize,
)
from .patterns import FAMILIES, gen_pattern
from .redux import pa_to_json, redux

ROUTES = ("gf-direct", "redux-pa", "dba-oracle")
EXACT_DEFAULT_LIMIT = 20_000


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_json(path: str | None, doc):
    _write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# ------------------------------------------------------------- subcommands

def _cmd_gen_pattern(args) -> int:
    try:
        f = gen_pattern(args.family, tuple(args.params))
    except (ValueError, LtlError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(to_string(f))
    return 0


def _cmd_ltl2gfm_gf(args) -> int:
    text = args.formula if args.formula is not None else sys.stdin.read()
    try:
        f = parse(text)
    except LtlParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    try:
        a = gf_to_gfm(f)
    except LtlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(args.out, to_hoa(a, name=to_string(f)))
    return 0


def _cmd_redux(args) -> int:
    a = from_hoa(_read(args.infile))
    result = redux(a, validate=not args.no_validate)
    if args.out:
        _write_json(args.out, pa_to_json(result.pa))
    if args.dba_out:
        _write(args.dba_out, to_hoa(result.dba, name="indexed-dba"))
    if args.min_out:
        _write(args.min_out, to_hoa(result.report.minimized, name="minimized"))
    if args.report:
        _write_json(args.report, result.report.to_json())
    stages = result.report.stages
    print(
        "  ".join(f"{s.name}:{s.states}" for s in stages)
        + f"  (input:{a.n_states})"
    )
    return 0


def _build_product(args):
    m = mdp_from_json(json.loads(_read(args.mdp)))
    if args.nba:
        aut = from_hoa(_read(args.nba))
        return product_nba(m, aut), "nba-file"
    if not args.formula:
        raise LtlError("need --formula or --nba")
    f = parse(args.formula, m.alphabet.atoms)
    route = args.route
    if route == "gf-direct":
        return product_nba(m, gf_to_gfm(f, m.alphabet.atoms)), route
    if route == "redux-pa":
        result = redux(gf_to_gfm(f, m.alphabet.atoms))
        return product_pa(m, result.pa), route
    if route == "dba-oracle":
        return product_nba(m, gf_to_dba(f, m.alphabet.atoms)), route
    raise LtlError(f"unknown route {route!r}")


def _cmd_product(args) -> int:
    try:
        prod, route = _build_product(args)
    except (LtlError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = {
        "route": route,
        "mdp": mdp_to_json(prod.mdp),
        "pairs": [list(pq) for pq in prod.pairs],
        "marked": sorted(list(t) for t in prod.marked),
    }
    _write_json(args.out, doc)
    return 0


def _pick_exact(n_states: int) -> bool:
    env = os.environ.get("GFMREDUX_EXACT")
    if env is not None and env != "":
        return env != "0"
    return n_states <= EXACT_DEFAULT_LIMIT


def _cmd_solve(args) -> int:
    try:
        prod, route = _build_product(args)
    except (LtlError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    exact = _pick_exact(prod.mdp.n_states)
    res = synthesize(prod, exact=exact)
    doc = {
        "route": route,
        "exact": exact,
        "value": str(res.value) if exact else None,
        "value_float": float(res.value),
        "product_states": prod.mdp.n_states,
        "goal_states": len(res.goal),
        "mecs": len(res.mecs),
        "accepting_mecs": sum(1 for mec in res.mecs if mec.accepting),
    }
    if args.strategy_out:
        _write_json(
            args.strategy_out,
            strategy_to_json(prod.mdp, res.strategy, pairs=prod.pairs),
        )
    if args.out:
        _write_json(args.out, doc)
    shown = str(res.value) if exact else f"{res.value:.10f}"
    print(f"value = {shown}  [{route}, {'exact' if exact else 'float'}, "
          f"product {prod.mdp.n_states} states]")
    return 0


# ------------------------------------------------------------------- bench

def _bench_case(text: str, conn):
    sizes = {}
    times = {}
    f = parse(text)
    t0 = time.perf_counter()
    gfm = gf_to_gfm(f)
    times["gfm"] = time.perf_counter() - t0
    sizes["gfm"] = gfm.n_states
    t0 = time.perf_counter()
    dba = gf_to_dba(f)
    times["reset_dba"] = time.perf_counter() - t0
    sizes["reset_dba"] = dba.n_states
    t0 = time.perf_counter()
    result = redux(gfm)
    times["redux_min"] = time.perf_counter() - t0
    sizes["redux_min"] = result.report.minimized.n_states
    conn.send((sizes, times))
    conn.close()


_BENCH_COLUMNS = ("gfm", "reset_dba", "redux_min")


def _run_bench(cases, timeout: float):
    rows = []
    all_times = {}
    ctx = multiprocessing.get_context()
    for name, text in cases:
        parent, child = ctx.Pipe(duplex=False)
        proc = ctx.Process(target=_bench_case, args=(text, child))
        proc.start()
        child.close()
        sizes = None
        if parent.poll(timeout):
            try:
                sizes, times = parent.recv()
                all_times[name] = times
            except EOFError:
                sizes = None
        proc.join(timeout=1)
        if proc.is_alive():
            proc.terminate()
            proc.join()
        parent.close()
        if sizes is None:
            rows.append((name, {c: None for c in _BENCH_COLUMNS}))
        else:
            rows.append((name, sizes))
    return rows, all_times


def _bench_csv(rows) -> str:
    out = ["name," + ",".join(_BENCH_COLUMNS)]
    for name, sizes in rows:
        cells = [
            "timeout" if sizes[c] is None else str(sizes[c])
            for c in _BENCH_COLUMNS
        ]
        out.append(",".join([name] + cells))
    return "\n".join(out) + "\n"


def _bench_md(rows) -> str:
    header = "| name | " + " | ".join(c.replace("_", "-") for c in _BENCH_COLUMNS) + " |"
    sep = "|" + "---|" * (len(_BENCH_COLUMNS) + 1)
    out = [header, sep]
    for name, sizes in rows:
        known = [v for v in sizes.values() if v is not None]
        best = min(known) if known else None
        cells = []
        for c in _BENCH_COLUMNS:
            v = sizes[c]
            if v is None:
                cells.append("timeout")
            elif v == best:
                cells.append(f"**{v}**")
            else:
                cells.append(str(v))
        out.append("| " + " | ".join([name] + cells) + " |")
    return "\n".join(out) + "\n"


def _cmd_bench(args) -> int:
    grid = json.loads(_read(args.grid))
    cases = []
    for entry in grid["cases"]:
        if "formula" in entry:
            text = entry["formula"]
            name = entry.get("name", text)
        else:
            family = entry["family"]
            params = tuple(entry.get("params", ()))
            text = to_string(gen_pattern(family, params))
            name = entry.get(
                "name", family + ("[%s]" % ",".join(map(str, params))
                                  if params else "")
            )
        cases.append((name, text))
    timeout = float(grid.get("timeout", args.timeout))
    rows, all_times = _run_bench(cases, timeout)
    if args.csv:
        _write(args.csv, _bench_csv(rows))
    if args.md:
        _write(args.md, _bench_md(rows))
    if args.times_out:
        _write_json(args.times_out, all_times)
    for name, sizes in rows:
        cells = ", ".join(
            f"{c}={'timeout' if sizes[c] is None else sizes[c]}"
            for c in _BENCH_COLUMNS
        )
        print(f"{name}: {cells}")
    return 0


# -------------------------------------------------------------- check-equiv

def _cmd_check_equiv(args) -> int:
    a1 = from_hoa(_read(args.left))
    a2 = from_hoa(_read(args.right))
    if a1.alphabet != a2.alphabet:
        print("error: automata use different alphabets", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    for i in range(args.lassos):
        prefix = tuple(
            rng.randrange(a1.alphabet.size)
            for _ in range(rng.randint(0, args.max_len))
        )
        cycle = tuple(
            rng.randrange(a1.alphabet.size)
            for _ in range(rng.randint(1, args.max_len))
        )
        w = LassoWord(prefix=prefix, cycle=cycle)
        m1, m2 = lasso_member(a1, w), lasso_member(a2, w)
        if m1 != m2:
            print(f"disagree on lasso #{i}: prefix={list(prefix)} "
                  f"cycle={list(cycle)}: left={m1} right={m2}")
            return 3
    if a1.kind == "cobuchi" and a2.kind == "cobuchi":
        ce = nca_lang_equiv(complete(a1), complete(a2))
        if ce is not None:
            print(f"disagree on lasso: prefix={list(ce.prefix)} "
                  f"cycle={list(ce.cycle)}")
            return 3
        print(f"equivalent (exact check and {args.lassos} sampled lassos)")
        return 0
    print(f"agree on {args.lassos} sampled lassos")
    return 0


def _cmd_fixtures(args) -> int:
    outdir = args.outdir
    os.makedirs(outdir, exist_ok=True)
    root = resources.files("gfmredux") / "fixtures"
    count = 0
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith((".hoa", ".json")):
            data = entry.read_text(encoding="utf-8")
            with open(os.path.join(outdir, entry.name), "w",
                      encoding="utf-8") as fh:
                fh.write(data)
            count += 1
    print(f"wrote {count} fixture files to {outdir}")
    return 0


# ------------------------------------------------------------------ parser

def _make_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gfmredux", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-pattern", help="print a benchmark pattern formula")
    p.add_argument("family", type=str.upper, choices=FAMILIES)
    p.add_argument("params", nargs="*", type=int)
    p.set_defaults(func=_cmd_gen_pattern)

    p = sub.add_parser(
        "ltl2gfm-gf",
        help="GF(co-safety) formula to a good-for-MDP Buchi automaton (HOA)",
    )
    p.add_argument("formula", nargs="?", help="read from stdin when omitted")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_ltl2gfm_gf)

    p = sub.add_parser("redux", help="run the state-reduction pipeline")
    p.add_argument("--in", dest="infile", required=True, help="input HOA")
    p.add_argument("--out", help="probabilistic automaton JSON")
    p.add_argument("--dba-out", dest="dba_out", help="indexed DBA HOA")
    p.add_argument("--min-out", dest="min_out", help="minimised co-Buchi HOA")
    p.add_argument("--report", help="stage report JSON")
    p.add_argument("--no-validate", action="store_true",
                   help="skip the final equivalence assertion")
    p.set_defaults(func=_cmd_redux)

    for name, helptext in (
        ("product", "build an MDP x automaton product"),
        ("solve", "optimal satisfaction probability and strategy"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--mdp", required=True, help="MDP JSON file")
        p.add_argument("--formula", help="GF(co-safety) goal")
        p.add_argument("--route", choices=ROUTES, default="gf-direct")
        p.add_argument("--nba", help="HOA automaton overriding the formula")
        if name == "product":
            p.add_argument("--out", help="product JSON (default stdout)")
            p.set_defaults(func=_cmd_product)
        else:
            p.add_argument("--out", help="result JSON")
            p.add_argument("--strategy-out", dest="strategy_out",
                           help="strategy JSON")
            p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="size table over a formula grid")
    p.add_argument("--grid", required=True, help="grid JSON")
    p.add_argument("--csv", help="CSV output")
    p.add_argument("--md", help="Markdown output")
    p.add_argument("--times-out", dest="times_out", help="timings JSON")
    p.add_argument("--timeout", type=float, default=300.0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("check-equiv",
                       help="compare two automata on random lassos")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--lassos", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", dest="max_len", type=int, default=8)
    p.set_defaults(func=_cmd_check_equiv)

    p = sub.add_parser("fixtures", help="copy bundled fixture files")
    p.add_argument("outdir")
    p.set_defaults(func=_cmd_fixtures)

    return top


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    return args.func(args)


def main_gen_pattern(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    return main(["gen-pattern"] + argv)


def main_ltl2gfm_gf(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    return main(["ltl2gfm-gf"] + argv)


if __name__ == "__main__":
    sys.exit(main())
