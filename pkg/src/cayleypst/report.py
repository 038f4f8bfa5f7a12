"""Graph input documents and analysis reports (plain JSON-compatible dicts)."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .cubelike import (
    BooleanFunction,
    bent_support_graph,
    cubelike_group,
    doubled_support_graph,
    mm_bent,
)
from .groups import GroupElement, GroupSpec, class_mask, gcd_set_mask, make_group
from .oracle import max_fidelity, verify_period, verify_pst, transfer_entry
from .pst import (
    InternalConsistencyError,
    PSTReport,
    TimeSet,
    format_pi,
    mod4_obstruction,
    period_set,
    pst_all_pairs,
)
from .spectrum import CayleyGraph

SET_VARIANTS = ("set", "classes", "gcd_divisors", "cubelike")


class DocumentError(ValueError):
    """Structurally malformed input document (usage/parse problem)."""


def _residues(G: GroupSpec, value) -> tuple[int, ...]:
    if isinstance(value, int):
        value = [value]
    return tuple(int(v) for v in value)


def graph_from_document(doc: dict) -> CayleyGraph:
    """Build the graph a document describes.

    Structural problems raise DocumentError; bad group data raises the
    group/graph error types (invalid input data).
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    present = [k for k in SET_VARIANTS if k in doc]
    if len(present) != 1:
        raise DocumentError(f"exactly one of {', '.join(SET_VARIANTS)} is required, found {present or 'none'}")
    variant = present[0]
    if variant == "cubelike":
        return _cubelike_from_spec(doc["cubelike"], doc.get("group"))
    if "group" not in doc or not isinstance(doc["group"], list):
        raise DocumentError("'group' must be a list of cyclic factors")
    G = make_group(doc["group"])
    body = doc[variant]
    if not isinstance(body, list):
        raise DocumentError(f"'{variant}' must be a list")
    mask = np.zeros(G.order, dtype=bool)
    if variant == "set":
        for v in body:
            mask[G.index_of(_residues(G, v))] = True
    elif variant == "classes":
        for v in body:
            mask |= class_mask(G, G.index_of(_residues(G, v)))
    else:
        mask = gcd_set_mask(G, [_residues(G, d) for d in body])
    return CayleyGraph(G, mask)


def _cubelike_from_spec(spec: Any, group: Optional[list]) -> CayleyGraph:
    if not isinstance(spec, dict) or "n" not in spec:
        raise DocumentError("'cubelike' needs an object with 'n'")
    n = int(spec["n"])
    if group is not None and list(group) != [2] * n:
        raise DocumentError(f"group {group} does not match cubelike n={n}")
    if "support_hex" in spec:
        try:
            f = BooleanFunction.from_hex(n, spec["support_hex"])
        except ValueError as exc:
            raise DocumentError(f"bad support_hex: {exc}") from exc
        return CayleyGraph(cubelike_group(n), f.table.astype(bool))
    if "bent" in spec:
        b = spec["bent"]
        kind, m = b.get("construction"), int(b.get("m", 0))
        f = mm_bent(m)
        if kind == "doubled" and n == 2 * m + 1:
            return doubled_support_graph(f)
        if kind == "support" and n == 2 * m:
            return bent_support_graph(f)
        raise DocumentError(f"bent constructor {b} is inconsistent with n={n}")
    raise DocumentError("'cubelike' needs 'support_hex' or 'bent'")


def graph_document(graph: CayleyGraph) -> dict:
    """Canonical document for a graph; cubelike groups use the hex form."""
    G = graph.group
    if all(f == 2 for f in G.factors):
        f = BooleanFunction(G.rank, graph.mask.astype(np.uint8))
        return {"cubelike": {"n": G.rank, "support_hex": f.to_hex()}}
    return {"group": list(G.factors), "set": [list(G.element(int(i)).residues) for i in np.flatnonzero(graph.mask)]}


def time_dict(ts: TimeSet) -> dict:
    if ts.empty:
        return {"empty": True}
    first = ts.first
    return {
        "empty": False,
        "offset": format_pi(ts.offset),
        "period": format_pi(ts.period),
        "first": format_pi(first),
        "first_decimal": round(math.pi * float(first), 12),
    }


def _pst_dict(r: PSTReport) -> dict:
    return {
        "difference": list(r.difference.residues),
        "verdict": r.verdict,
        "failure_reason": r.failure_reason.value if r.failure_reason else None,
        "times": time_dict(r.times),
        "gap_gcd": r.gap_gcd,
        "gap_gcd_even": r.gap_gcd_even,
        "gap_gcd_odd": r.gap_gcd_odd,
        "odd_valuation": r.odd_valuation,
    }


def eigenvalue_summary(graph: CayleyGraph) -> list[dict]:
    G = graph.group
    reps, sizes = np.unique(G.class_ids, return_counts=True)
    return [
        {"class_representative": list(G.element(int(r)).residues), "class_size": int(k),
         "alpha": int(graph.alpha[r])}
        for r, k in zip(reps, sizes)
    ]


def analyze(graph: CayleyGraph, verify: bool = False, tol: float = 1e-9) -> dict:
    G = graph.group
    report: dict[str, Any] = {
        "group": list(G.factors),
        "order": G.order,
        "exponent": G.exponent,
        "degree": graph.degree,
        "flags": {
            "simple": graph.simple,
            "connected": graph.connected,
            "integral": graph.integral,
            "reasons": graph.flag_reasons(),
        },
    }
    if not graph.simple:
        report["analysis"] = "not-applicable: graph is not simple"
        return report
    if not graph.integral:
        report["eigenvalues_float"] = {
            "min": round(float(graph.alpha_float.min()), 12),
            "max": round(float(graph.alpha_float.max()), 12),
        }
        report["pst"] = "not-applicable: graph is not integral, so no PST and no periodic vertex"
        return report
    report["eigenvalues"] = eigenvalue_summary(graph)
    report["mod4_obstruction"] = mod4_obstruction(graph)
    if not graph.connected:
        report["pst"] = "not-applicable: graph is not connected"
        return report
    if G.order < 3:
        report["pst"] = "not-applicable: |G| < 3"
        return report
    report["spectral_gcd"] = graph.gap_gcd
    periods = period_set(graph, G.zero)
    report["period_set"] = time_dict(periods)
    reports = pst_all_pairs(graph)
    report["pst"] = [_pst_dict(r) for r in reports]
    if report["mod4_obstruction"] and any(r.has_pst for r in reports):
        raise InternalConsistencyError("PST found although |G| = 2 mod 4")
    if verify:
        report["oracle"] = _oracle_section(graph, periods, reports, tol)
    return report


def _oracle_section(graph: CayleyGraph, periods: TimeSet, reports: list[PSTReport], tol: float) -> dict:
    G = graph.group
    t = periods.first
    residual = abs(abs(transfer_entry(graph, G.zero, G.zero, math.pi * float(t))) - 1)
    if not verify_period(graph, G.zero, t, tol):
        raise InternalConsistencyError(f"oracle rejects the period {format_pi(t)} (residual {residual:.3e})")
    out = {"tolerance": tol, "period_residual": float(f"{residual:.3e}"), "pst": []}
    for r in reports:
        a = r.difference
        if r.has_pst:
            t = r.times.first
            res = abs(abs(transfer_entry(graph, G.zero, a, math.pi * float(t))) - 1)
            if not verify_pst(graph, G.zero, a, t, tol):
                raise InternalConsistencyError(
                    f"oracle rejects PST at {format_pi(t)} for a={a} (residual {res:.3e})")
            out["pst"].append({"difference": list(a.residues), "residual": float(f"{res:.3e}")})
        else:
            span = 4 * math.pi / graph.gap_gcd
            peak = max_fidelity(graph, G.zero, a, span, 10_000)
            out["pst"].append({"difference": list(a.residues), "scan_max": round(peak, 9)})
    return out


def report_text(report: dict) -> str:
    """Human-readable rendering of an analysis report."""
    lines = [
        f"group: Z{' + Z'.join(map(str, report['group']))} (order {report['order']}, exponent {report['exponent']})",
        f"degree: {report['degree']}",
    ]
    flags = report["flags"]
    for key in ("simple", "connected", "integral"):
        reason = flags["reasons"].get(key)
        lines.append(f"{key}: {'yes' if flags[key] else 'no'}" + (f" ({reason})" if reason else ""))
    if "eigenvalues" in report:
        lines.append("eigenvalues by class:")
        for row in report["eigenvalues"]:
            lines.append(f"  {tuple(row['class_representative'])} x{row['class_size']}: {row['alpha']}")
    if "mod4_obstruction" in report:
        lines.append(f"order = 2 mod 4 obstruction: {report['mod4_obstruction']}")
    if "spectral_gcd" in report:
        lines.append(f"spectral gcd: {report['spectral_gcd']}")
        p = report["period_set"]
        lines.append(f"vertex periods: {p['offset']} * l, minimum {p['first']} ~ {p['first_decimal']}")
    pst = report.get("pst")
    if isinstance(pst, str):
        lines.append(f"pst: {pst}")
    elif pst is not None:
        if not pst:
            lines.append("pst: no involutions, so no PST between distinct vertices")
        for r in pst:
            a = tuple(r["difference"])
            if r["verdict"] == "has-PST":
                ts = r["times"]
                lines.append(f"a={a}: has-PST at {ts['offset']} + {ts['period']}*l (first ~ {ts['first_decimal']})")
            else:
                lines.append(f"a={a}: no-PST ({r['failure_reason']})")
    if "oracle" in report:
        o = report["oracle"]
        lines.append(f"oracle (tol {o['tolerance']}): period residual {o['period_residual']}")
        for r in o["pst"]:
            detail = f"residual {r['residual']}" if "residual" in r else f"scan max {r['scan_max']}"
            lines.append(f"  a={tuple(r['difference'])}: {detail}")
    if "analysis" in report:
        lines.append(report["analysis"])
    return "\n".join(lines) + "\n"


def summary_line(graph: CayleyGraph, class_reps: list[GroupElement]) -> dict:
    reports = pst_all_pairs(graph)
    return {
        "classes": [list(r.residues) for r in class_reps],
        "degree": graph.degree,
        "spectral_gcd": graph.gap_gcd,
        "pst": [
            {"difference": list(r.difference.residues), "first": format_pi(r.times.first)}
            for r in reports if r.has_pst
        ],
    }


def pi_fraction(text: str) -> Fraction:
    """Parse 'pi*p/q' (or a plain rational) into a multiple of pi."""
    return Fraction(text.removeprefix("pi*"))
