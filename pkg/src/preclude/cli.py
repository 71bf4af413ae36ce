"""``preclude`` command-line front end.

Exit codes: 0 success, 1 computation error (cap exceeded, odd order, ...),
2 usage error, 3 verification disagreement.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import preclusion as pc
from .errors import InvalidSpec, PrecludeError
from .flows import max_k_factor
from .generators import FAMILY_NAMES, FamilySpec, gen_family, parse_family
from .graphcore import ODD_CUT_CAP, Graph, bipartition, cartesian_product, format_edgelist, read_graph
from .matchings import MATCHING_CAP
from .verify import corpus, run_verify


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: Optional[Graph]
    methods: object = "auto"
    matching_cap: int = MATCHING_CAP
    oddcut_cap: int = ODD_CUT_CAP
    subset_cap: int = pc.SUBSET_SEARCH_LIMIT
    fmt: str = "json"

    def validate(self) -> None:
        if min(self.matching_cap, self.oddcut_cap, self.subset_cap) <= 0:
            raise UsageError("caps must be positive")
        if self.command == "mp" and self.methods not in ("enumeration", "all", pc.SUBSET_SEARCH):
            raise UsageError("mp --method must be enumeration, subset_search or all")
        if self.command == "mpf" and isinstance(self.methods, list):
            bad = [m for m in self.methods if m not in pc.MPF_METHODS]
            if bad:
                raise UsageError(f"unknown method(s): {', '.join(bad)}")
            if self.graph is not None and bipartition(self.graph) is None:
                wrong = [m for m in self.methods if m in pc.BIPARTITE_ONLY]
                if wrong:
                    raise UsageError(f"{', '.join(wrong)} need(s) a bipartite graph")


def _family_params(name: str, args) -> tuple[int, ...]:
    if args.params:
        return tuple(int(p) for p in args.params.split(","))
    k, n, r = args.k, args.n, args.r
    table = {
        "gk": (k,),
        "cycle": (n,),
        "path": (n,),
        "hypercube": (k if k is not None else n,),
        "complete_bipartite": (n, r if r is not None else n),
        "random_regular_bipartite": (n, r),
        "random_tree": (n,),
        "random_graph": (n, 50),
    }
    if name not in table:
        raise UsageError(f"family {name} needs --params")
    params = table[name]
    if any(p is None for p in params):
        raise UsageError(f"family {name} is missing a size flag (--k/--n/--r)")
    return params


def _load_graph(args) -> Graph:
    if args.input and args.family:
        raise UsageError("give either --input or --family, not both")
    if args.input:
        return read_graph(args.input)
    if args.family:
        spec = FamilySpec(args.family, _family_params(args.family, args), args.seed)
        return gen_family(spec)
    raise UsageError("a graph is required: --input PATH or --family NAME")


def _load_spec(text: str) -> Graph:
    if Path(text).exists():
        return read_graph(text)
    return gen_family(parse_family(text))


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    for key, val in payload.items():
        if isinstance(val, dict) and set(val) == {"num", "den"}:
            val = f"{val['num']}/{val['den']}" if val["den"] != 1 else str(val["num"])
        out.write(f"{key}: {val}\n")


def _report_payload(rep: pc.PreclusionReport) -> dict:
    return rep.to_dict()


def _cmd_mpf(cfg: RunConfig, out) -> int:
    rep = pc.fractional_preclusion(cfg.graph, cfg.methods, cfg.matching_cap, cfg.oddcut_cap)
    _emit(_report_payload(rep), cfg.fmt, out)
    return 0 if rep.agree else 3


def _cmd_mp(cfg: RunConfig, out) -> int:
    if cfg.methods == pc.SUBSET_SEARCH:
        rep = pc.mp_subset_search(cfg.graph, cfg.matching_cap, cfg.subset_cap)
    else:
        rep = pc.mp(cfg.graph, cfg.matching_cap)
    if cfg.methods == "all":
        other = pc.mp_subset_search(cfg.graph, cfg.matching_cap, cfg.subset_cap)
        rep.cross_check = {pc.ENUMERATION: rep.value, pc.SUBSET_SEARCH: other.value}
    _emit(_report_payload(rep), cfg.fmt, out)
    return 0 if rep.agree else 3


def _cmd_kfactor(cfg: RunConfig, out) -> int:
    g = cfg.graph
    bip = bipartition(g)
    if bip is None:
        raise UsageError("kfactor needs a bipartite graph")
    rep = pc.mpf_bipartite_formula(g, bip)
    k = max_k_factor(g, bip)
    fl = math.floor(rep.value)
    payload = {
        "max_k_factor": k,
        "floor_mpf": fl,
        "mpf": {"num": rep.value.numerator, "den": rep.value.denominator},
        "agree": k == fl,
    }
    _emit(payload, cfg.fmt, out)
    return 0 if k == fl else 3


def _cmd_product(args, out) -> int:
    g, h = _load_spec(args.g), _load_spec(args.h)
    if bipartition(g) is None or bipartition(h) is None:
        raise UsageError("product needs two bipartite graphs")
    prod, _ = cartesian_product(g, h)
    direct = pc.mpf_bipartite_formula(prod)
    payload = {
        "product": {"n": prod.n, "m": prod.m},
        "direct": direct.to_dict(),
        "formula": None,
    }
    agree = True
    bg = bipartition(g)
    if len(bg.side_a) == len(bg.side_b) and h.is_regular() and h.m:
        formula = pc.mpf_product_regular(g, bg, h)
        formula.cross_check[pc.BIPARTITE_FORMULA] = direct.value
        payload["formula"] = formula.to_dict()
        agree = formula.agree
    bound = pc.check_product_bound(g, h)
    payload["bound"] = {
        "lhs": {"num": bound.lhs.numerator, "den": bound.lhs.denominator},
        "rhs": {"num": bound.rhs.numerator, "den": bound.rhs.denominator},
        "holds": bound.holds,
        "equality": bound.equality,
    }
    _emit(payload, args.format, out)
    return 0 if agree and bound.holds else 3


def _cmd_gen(args, out) -> int:
    g = _load_graph(args)
    text = format_edgelist(g)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return 0


def _cmd_verify(args, out) -> int:
    graphs = corpus(args.max_n, args.samples)
    res = run_verify(graphs)
    for name, count in res.checks.items():
        failed = sum(1 for f in res.failures if f.startswith(name + ":"))
        out.write(f"{'FAIL' if failed else 'ok  '} {name}: {count - failed}/{count}\n")
    out.write(f"graphs: {len(graphs)}, failures: {len(res.failures)}\n")
    for f in res.failures[:20]:
        out.write(f"  {f}\n")
    return 0 if res.ok else 3


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="edge-list file")
    p.add_argument("--family", choices=FAMILY_NAMES)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--params", help="comma-separated family parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="preclude", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("mpf", "fractional matching preclusion number"),
        ("mp", "matching preclusion number"),
        ("kfactor", "largest k-factor vs floor of mp_f"),
        ("gen", "write a family graph as an edge list"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_graph_args(p)
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name in ("mpf", "mp"):
            p.add_argument("--method", default="auto" if name == "mpf" else "enumeration")
            p.add_argument("--matching-cap", type=int, default=MATCHING_CAP)
            p.add_argument("--oddcut-cap", type=int, default=ODD_CUT_CAP)
            p.add_argument("--subset-cap", type=int, default=pc.SUBSET_SEARCH_LIMIT)
        if name == "gen":
            p.add_argument("--output")
    p = sub.add_parser("product", help="mp_f of a Cartesian product, formula and bound")
    p.add_argument("--g", required=True, help="edge-list path or family spec like path:4")
    p.add_argument("--h", required=True, help="edge-list path or family spec like cycle:6")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p = sub.add_parser("verify", help="run the invariant suite over small graphs")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--samples", type=int, default=40)
    return parser


def _parse_methods(text: str):
    if text in ("auto", "all"):
        return text
    return [m.strip() for m in text.split(",") if m.strip()]


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "product":
            return _cmd_product(args, out)
        if args.command == "gen":
            return _cmd_gen(args, out)
        if args.command == "verify":
            if args.max_n < 2 or args.samples < 0:
                raise UsageError("--max-n must be >= 2 and --samples >= 0")
            return _cmd_verify(args, out)
        cfg = RunConfig(
            args.command,
            _load_graph(args),
            _parse_methods(args.method) if args.command == "mpf" else getattr(args, "method", None),
            getattr(args, "matching_cap", MATCHING_CAP),
            getattr(args, "oddcut_cap", ODD_CUT_CAP),
            getattr(args, "subset_cap", pc.SUBSET_SEARCH_LIMIT),
            args.format,
        )
        cfg.validate()
        handler = {"mpf": _cmd_mpf, "mp": _cmd_mp, "kfactor": _cmd_kfactor}[args.command]
        return handler(cfg, out)
    except (UsageError, InvalidSpec) as exc:
        print(f"preclude: usage error: {exc}", file=sys.stderr)
        return 2
    except PrecludeError as exc:
        print(f"preclude: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
