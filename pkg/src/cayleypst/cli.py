"""cayley-pst command line.

Exit codes: 0 ok, 2 usage or parse error, 3 invalid input data,
4 internal consistency failure (theorem and oracle disagree).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from .cubelike import (
    BentRequiredError,
    bent_support_graph,
    doubled_support_graph,
    exhaustive_sweep,
    mm_bent,
    random_sweep,
)
from .groups import (
    GroupDomainError,
    GroupElement,
    InvalidDivisorError,
    InvalidGroupError,
    enumerate_classes,
    make_group,
)
from .oracle import fidelity_scan, write_scan_csv
from .pst import InternalConsistencyError
from .report import (
    DocumentError,
    analyze,
    graph_document,
    graph_from_document,
    report_text,
    summary_line,
)
from .spectrum import CayleyGraph, GraphPreconditionError, IntegralityRequiredError

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 2, 3, 4
ENUMERATE_CLASS_BUDGET = 22

DATA_ERRORS = (
    GroupDomainError, InvalidGroupError, InvalidDivisorError, GraphPreconditionError,
    IntegralityRequiredError, BentRequiredError,
)


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _emit(obj, args, text=None):
    with _output(args.out) as fh:
        if args.format == "text" and text is not None:
            fh.write(text)
        else:
            fh.write(json.dumps(obj, indent=2) + "\n")


def _load_document(path: str) -> dict:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON: {exc}") from exc


def _graph_from_path(path: str) -> CayleyGraph:
    doc = _load_document(path)
    try:
        return graph_from_document(doc)
    except DocumentError as exc:
        raise UsageError(str(exc)) from exc


def cmd_analyze(args) -> int:
    graph = _graph_from_path(args.document)
    report = analyze(graph, verify=args.verify, tol=args.tol)
    _emit(report, args, report_text(report))
    return EXIT_OK


def _class_unions(G):
    partition = enumerate_classes(G)
    reps = [r for r in partition.representatives if r.index != 0]
    if len(reps) > ENUMERATE_CLASS_BUDGET:
        raise DataError(f"{len(reps)} nonzero classes exceed the enumeration budget of {ENUMERATE_CLASS_BUDGET}")
    masks = [G.class_ids == r.index for r in reps]
    for code in range(1, 1 << len(reps)):
        chosen = [i for i in range(len(reps)) if code >> i & 1]
        mask = np.zeros(G.order, dtype=bool)
        for i in chosen:
            mask |= masks[i]
        yield [reps[i] for i in chosen], mask


def enumerate_qset_graphs(G, only_pst: bool = False):
    """Summaries of every connected Cay(G, S), S a nonempty union of nonzero classes."""
    for chosen, mask in _class_unions(G):
        graph = CayleyGraph(G, mask)
        if not graph.connected:
            continue
        if G.order < 3:
            yield {"classes": [list(r.residues) for r in chosen], "degree": graph.degree,
                   "spectral_gcd": graph.gap_gcd, "pst": "not-applicable: |G| < 3"}
            continue
        line = summary_line(graph, chosen)
        if only_pst and not line["pst"]:
            continue
        yield line


def cmd_enumerate(args) -> int:
    G = make_group(args.group)
    with _output(args.out) as fh:
        for line in enumerate_qset_graphs(G, args.only_pst):
            if args.format == "text":
                pst = line["pst"]
                if isinstance(pst, list):
                    pst = ", ".join(f"a={tuple(p['difference'])} at {p['first']}" for p in pst) or "none"
                fh.write(f"classes={[tuple(c) for c in line['classes']]} d={line['degree']} "
                         f"gcd={line['spectral_gcd']} pst: {pst}\n")
            else:
                fh.write(json.dumps(line) + "\n")
    return EXIT_OK


def cmd_cubelike_construct(args) -> int:
    n = 2 * args.m + (args.construction == "doubled")
    if args.m < 2 or n > 16:
        raise DataError(f"--m {args.m} gives n = {n}; the constructions need m >= 2 and n <= 16")
    f = mm_bent(args.m)
    graph = doubled_support_graph(f) if args.construction == "doubled" else bent_support_graph(f)
    result = {"document": graph_document(graph), "analysis": analyze(graph, verify=args.verify, tol=args.tol)}
    _emit(result, args, json.dumps(result["document"]) + "\n" + report_text(result["analysis"]))
    return EXIT_OK


def cmd_cubelike_sweep(args) -> int:
    if args.exhaustive:
        try:
            stats = exhaustive_sweep(args.n)
        except ValueError as exc:
            raise DataError(str(exc)) from exc
    else:
        stats = random_sweep(args.n, args.samples, seed=args.seed)
    d = stats.as_dict()
    d["mode"] = "exhaustive" if args.exhaustive else f"random(samples={args.samples}, seed={args.seed})"
    text = "\n".join(f"{k}: {v}" for k, v in d.items()) + "\n"
    _emit(d, args, text)
    if stats.gcd_not_power_of_two or stats.bound_violations:
        return EXIT_INTERNAL
    return EXIT_OK


def _parse_element(G, text: str) -> GroupElement:
    try:
        parts = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse element {text!r}; use comma-separated residues") from exc
    return G.element(parts)


def cmd_scan(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    graph = _graph_from_path(args.document)
    g = _parse_element(graph.group, args.g)
    h = _parse_element(graph.group, args.h)
    graph.require(simple=True)
    t_max = args.t_max if args.t_max is not None else 2 * math.pi
    samples = fidelity_scan(graph, g, h, t_max, args.steps)
    with _output(args.out) as fh:
        write_scan_csv(samples, fh)
    return EXIT_OK


def cmd_classes(args) -> int:
    G = make_group(args.group)
    part = enumerate_classes(G)
    rows = [
        {"representative": list(rep.residues), "size": len(c),
         "members": sorted(list(x.residues) for x in c)}
        for rep, c in zip(part.representatives, part.classes)
    ]
    text = "".join(f"{tuple(r['representative'])} [{r['size']}]: "
                   f"{', '.join(str(tuple(m)) for m in r['members'])}\n" for r in rows)
    _emit({"group": list(G.factors), "classes": rows}, args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--verify", action="store_true", help="cross-check every positive verdict numerically")
    oracle.add_argument("--tol", type=float, default=1e-9)

    p = argparse.ArgumentParser(prog="cayley-pst", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common, oracle], help="full report for one graph document")
    a.add_argument("document", help="JSON graph document, or - for stdin")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", parents=[common], help="every connected integral Cayley graph of a group")
    e.add_argument("--group", type=int, nargs="+", required=True, metavar="N")
    e.add_argument("--only-pst", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("cubelike", help="bent-function constructions and sweeps over F_2^n")
    csub = c.add_subparsers(dest="cubelike_command", required=True)
    cc = csub.add_parser("construct", parents=[common, oracle])
    cc.add_argument("construction", choices=("doubled", "support"),
                    help="doubled: F_2^(2m+1), PST at pi/2^m; support: F_2^(2m) support graph")
    cc.add_argument("--m", type=int, default=2)
    cc.set_defaults(func=cmd_cubelike_construct)
    cs = csub.add_parser("sweep", parents=[common])
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--exhaustive", action="store_true")
    cs.add_argument("--samples", type=int, default=10_000)
    cs.add_argument("--seed", type=int, default=0)
    cs.set_defaults(func=cmd_cubelike_sweep)

    s = sub.add_parser("scan", help="|H_{g,h}(t)| on a uniform grid, as CSV")
    s.add_argument("document")
    s.add_argument("--g", required=True, help="comma-separated residues")
    s.add_argument("--h", required=True, help="comma-separated residues")
    s.add_argument("--t-max", type=float, default=None, help="default 2*pi")
    s.add_argument("--steps", type=int, default=1001)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_scan)

    k = sub.add_parser("classes", parents=[common], help="unit-class partition of a group")
    k.add_argument("--group", type=int, nargs="+", required=True, metavar="N")
    k.set_defaults(func=cmd_classes)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, *DATA_ERRORS) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
