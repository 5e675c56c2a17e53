"""Command-line workbench tying the toolkit together.

Exit code 0 only when every requested verification passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automorphisms import DEFAULT_CAP, enumerate_automorphisms, min_motion
from .colouring import (
    DEFAULT_BUDGET,
    PartialColouring,
    distinguishing_number,
    is_set_distinguishing,
    verify_chain,
)
from .degree_bound import degree_minus_one_colouring
from .errors import SymbreakError
from .experiment import ExperimentSpec, run_experiment
from .families import FAMILIES, generate
from .formats import emit_graph6, graph_from_json, graph_to_json, parse_graph6, to_dot
from .graphs import BoundaryRootedGraph
from .two_colouring import two_colouring


def _parse_params(text: str | None) -> dict:
    params: dict = {}
    if not text:
        return params
    for item in text.split(","):
        if not item:
            continue
        key, _, value = item.partition("=")
        params[key.strip()] = int(value)
    return params


def _load_instance(args) -> BoundaryRootedGraph:
    if getattr(args, "family", None):
        return generate(args.family, _parse_params(args.params), seed=args.seed)
    if getattr(args, "graph6", None):
        return BoundaryRootedGraph(parse_graph6(args.graph6))
    if getattr(args, "infile", None):
        text = Path(args.infile).read_text().strip()
        if text.startswith("{"):
            return graph_from_json(text)
        return BoundaryRootedGraph(parse_graph6(text.splitlines()[0]))
    raise SymbreakError("no input: pass --family, --graph6 or --in")


def _emit(args, payload: dict, brg=None, colouring=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "json_out", None):
        Path(args.json_out).write_text(text + "\n")
    else:
        print(text)
    if getattr(args, "dot_out", None) and brg is not None:
        Path(args.dot_out).write_text(to_dot(brg, colouring))


def _add_common(p: argparse.ArgumentParser, inputs: bool = True) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for generators")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="candidate budget for exhaustive searches")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="automorphism element cap")
    p.add_argument("--motion-threshold", type=float, default=1, dest="motion",
                   help="minimum instance motion demanded by the 2-colouring run")
    p.add_argument("--json-out", help="write the JSON result here instead of stdout")
    p.add_argument("--dot-out", help="write a DOT rendering of the result here")
    if inputs:
        p.add_argument("--family", choices=sorted(FAMILIES),
                       help="generate the input instance from a family")
        p.add_argument("--params", help="family parameters as k=v,k=v")
        p.add_argument("--graph6", help="input graph as a graph6 record")
        p.add_argument("--in", dest="infile", help="input file (graph6 or JSON schema)")


def cmd_gen(args) -> int:
    brg = _load_instance(args)
    if args.dot_out:
        Path(args.dot_out).write_text(to_dot(brg))
    if args.emit_graph6:
        print(emit_graph6(brg.graph).decode("ascii"))
        if args.json_out:
            Path(args.json_out).write_text(
                json.dumps(graph_to_json(brg), indent=2, sort_keys=True) + "\n"
            )
    else:
        _emit(args, graph_to_json(brg))
    return 0


def cmd_autos(args) -> int:
    brg = _load_instance(args)
    auts = enumerate_automorphisms(brg, args.cap)
    mm = min_motion(brg, args.cap)
    header = {
        "graph": emit_graph6(brg.graph).decode("ascii"),
        "count": len(auts),
        "min_motion": "unbounded" if mm == float("inf") else mm,
    }
    # permutations render as one-line arrays
    rows = ",\n    ".join(json.dumps(list(p)) for p in auts)
    body = json.dumps(header, indent=2, sort_keys=True)
    text = body[:-2] + f',\n  "automorphisms": [\n    {rows}\n  ]\n}}'
    if args.json_out:
        Path(args.json_out).write_text(text + "\n")
    else:
        print(text)
    if args.dot_out:
        Path(args.dot_out).write_text(to_dot(brg))
    return 0


def cmd_dnumber(args) -> int:
    brg = _load_instance(args)
    res = distinguishing_number(brg, args.max_k, args.budget, args.cap)
    colouring = res.colouring.as_list(brg.graph.n) if res.colouring else None
    _emit(args, {
        "graph": emit_graph6(brg.graph).decode("ascii"),
        "k": res.number,
        "colouring": colouring,
        "stabiliser_size": 1 if res.number is not None else None,
        "verdict": res.report(),
    }, brg, colouring)
    return 0 if res.number is not None else 1


def cmd_verify(args) -> int:
    brg = _load_instance(args)
    spec = args.colouring.strip()
    values = json.loads(spec if spec.startswith("[") else Path(spec).read_text())
    k = max((v for v in values if v is not None), default=0) + 1
    c = PartialColouring(k, {v: col for v, col in enumerate(values) if col is not None})
    ok = is_set_distinguishing(brg, c, brg.graph.vertices, args.cap)
    _emit(args, {
        "graph": emit_graph6(brg.graph).decode("ascii"),
        "k": k,
        "colouring": values,
        "stabiliser_size": None,
        "verdict": "distinguishing" if ok else "not-distinguishing",
    }, brg, values)
    return 0 if ok else 1


def cmd_tucker(args) -> int:
    brg = _load_instance(args)
    try:
        res = two_colouring(brg, args.motion, args.cap)
    except SymbreakError as exc:
        _emit(args, {"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return 1
    colouring = res.colouring.as_list(brg.graph.n)
    if args.trace_out:
        with open(args.trace_out, "w") as fh:
            for entry in res.trace_dicts():
                fh.write(json.dumps(entry, sort_keys=True) + "\n")
    if args.dot_steps:
        outdir = Path(args.dot_steps)
        outdir.mkdir(parents=True, exist_ok=True)
        for state in res.states:
            snapshot = state.colouring.as_list(brg.graph.n)
            (outdir / f"step{state.i:04d}.dot").write_text(
                to_dot(res.run_graph, snapshot)
            )
    _emit(args, {
        "ok": True,
        "graph": emit_graph6(brg.graph).decode("ascii"),
        "ray": res.ray,
        "steps": len(res.records),
        "max_generation": res.max_generation,
        "colouring": colouring,
        "verdict": "distinguishing",
    }, res.run_graph, colouring)
    return 0


def cmd_deltabound(args) -> int:
    brg = _load_instance(args)
    try:
        res = degree_minus_one_colouring(brg, args.cap)
    except SymbreakError as exc:
        _emit(args, {"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return 1
    colouring = res.colouring.as_list(brg.graph.n)
    if args.trace_out:
        with open(args.trace_out, "w") as fh:
            for entry in res.trace_dicts():
                fh.write(json.dumps(entry, sort_keys=True) + "\n")
    _emit(args, {
        "ok": True,
        "graph": emit_graph6(brg.graph).decode("ascii"),
        "ray": res.ray,
        "colours_used": res.colours_used,
        "budget": brg.graph.max_degree - 1,
        "zero_ray_unique": res.zero_ray_unique,
        "colouring": colouring,
        "verdict": "distinguishing",
    }, res.run_graph, colouring)
    return 0 if res.zero_ray_unique else 1


def cmd_chain_check(args) -> int:
    brg = _load_instance(args)
    data = json.loads(Path(args.chain).read_text())
    k = int(data.get("k", 2))
    chain = [
        PartialColouring(
            k, {v: col for v, col in enumerate(values) if col is not None}
        )
        for values in data["chain"]
    ]
    sets = [set(s) for s in data["sets"]]
    try:
        ok = verify_chain(brg, chain, sets, args.cap)
    except SymbreakError as exc:
        _emit(args, {"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return 1
    _emit(args, {"ok": ok, "verdict": "chain-valid" if ok else "chain-invalid"})
    return 0 if ok else 1


def cmd_report(args) -> int:
    spec = ExperimentSpec.from_dict(json.loads(Path(args.spec).read_text()))
    if args.motion != 1:
        spec.motion_threshold = args.motion
    report = run_experiment(spec)
    _emit(args, report)
    summary = report["summary"]
    print(
        f"instances={summary['instances']} verifications={summary['verifications']} "
        f"failures={summary['failures']}",
        file=sys.stderr,
    )
    return 0 if summary["all_passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symbreak",
        description="graph symmetry-breaking workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a family instance")
    _add_common(p)
    p.add_argument("--emit-graph6", action="store_true",
                   help="print the instance as a graph6 record")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("autos", help="enumerate admitted automorphisms")
    _add_common(p)
    p.set_defaults(fn=cmd_autos)

    p = sub.add_parser("dnumber", help="exact distinguishing number")
    _add_common(p)
    p.add_argument("--max-k", type=int, default=8)
    p.set_defaults(fn=cmd_dnumber)

    p = sub.add_parser("verify", help="check a colouring for distinguishing")
    _add_common(p)
    p.add_argument("--colouring", required=True,
                   help="JSON list of colours (null = uncoloured) or a file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("tucker", help="run the 2-colouring construction")
    _add_common(p)
    p.add_argument("--trace-out", help="write the JSON-lines run trace here")
    p.add_argument("--dot-steps", help="directory for per-step DOT snapshots")
    p.set_defaults(fn=cmd_tucker)

    p = sub.add_parser("deltabound", help="run the degree-1 colouring construction")
    _add_common(p)
    p.add_argument("--trace-out", help="write the JSON-lines run trace here")
    p.set_defaults(fn=cmd_deltabound)

    p = sub.add_parser("chain-check", help="validate an increasing colouring chain")
    _add_common(p)
    p.add_argument("--chain", required=True, help="JSON file with chain and sets")
    p.set_defaults(fn=cmd_chain_check)

    p = sub.add_parser("report", help="run a batch experiment spec")
    _add_common(p, inputs=False)
    p.add_argument("--spec", required=True, help="experiment spec JSON file")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SymbreakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
