"""Numerical ground truth for the continuous-time walk H(t) = exp(itA).

Characters diagonalise every abelian Cayley graph, so a single entry is

    H_{g,h}(t) = (1/n) * sum_x exp(i t alpha_x) * chi_{g-h}(x)

at O(n) cost.  The dense routines build all of H(t) for cross-checking.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, TextIO

import numpy as np

from .groups import GroupElement
from .spectrum import CayleyGraph

DENSE_LIMIT = 512


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class FidelitySample:
    t: float
    magnitude: float


def spectrum_values(graph: CayleyGraph) -> np.ndarray:
    """Exact eigenvalues when the graph is integral, floating ones otherwise."""
    if graph.integral:
        return graph.alpha.astype(np.float64)
    graph.require(simple=True)
    return np.asarray(graph.alpha_float)


def _character_row(graph: CayleyGraph, a: int) -> np.ndarray:
    G = graph.group
    return np.exp(2j * np.pi * G.char_exponents(a) / G.exponent)


def transfer_entries(graph: CayleyGraph, g: GroupElement, h: GroupElement, times) -> np.ndarray:
    """H_{g,h}(t) for an array of times; chunked so memory stays O(n * 1024)."""
    graph.require(simple=True)
    alpha = spectrum_values(graph)
    chi = _character_row(graph, (g - h).index)
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    out = np.empty(times.shape, dtype=np.complex128)
    step = 1024
    for lo in range(0, times.size, step):
        t = times[lo:lo + step]
        out[lo:lo + step] = np.exp(1j * np.outer(t, alpha)) @ chi / graph.order
    return out


def transfer_entry(graph: CayleyGraph, g: GroupElement, h: GroupElement, t: float) -> complex:
    return complex(transfer_entries(graph, g, h, [t])[0])


def verify_pst(graph: CayleyGraph, g: GroupElement, h: GroupElement, t_pi, tol: float = 1e-9) -> bool:
    """Is | |H_{g,h}(pi * t_pi)| - 1 | < tol ?"""
    t = math.pi * float(Fraction(t_pi))
    return abs(abs(transfer_entry(graph, g, h, t)) - 1.0) < tol


def verify_period(graph: CayleyGraph, g: GroupElement, t_pi, tol: float = 1e-9) -> bool:
    return verify_pst(graph, g, g, t_pi, tol)


def fidelity_scan(graph: CayleyGraph, g: GroupElement, h: GroupElement,
                  t_max: float, steps: int) -> list[FidelitySample]:
    if steps < 2:
        raise ValueError("a fidelity scan needs at least 2 steps")
    ts = np.linspace(0.0, t_max, steps)
    mags = np.abs(transfer_entries(graph, g, h, ts))
    return [FidelitySample(float(t), float(m)) for t, m in zip(ts, mags)]


def max_fidelity(graph: CayleyGraph, g: GroupElement, h: GroupElement,
                 t_max: float, steps: int) -> float:
    ts = np.linspace(0.0, t_max, steps)
    return float(np.abs(transfer_entries(graph, g, h, ts)).max())


def write_scan_csv(samples: list[FidelitySample], out: Optional[TextIO] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "magnitude"])
    for s in samples:
        w.writerow([f"{s.t:.15g}", f"{s.magnitude:.15g}"])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def character_matrix(graph: CayleyGraph) -> np.ndarray:
    """Unitary P with P[g, x] = chi_g(x) / sqrt(n)."""
    G = graph.group
    k = np.stack([G.char_exponents(g) for g in range(G.order)])
    return np.exp(2j * np.pi * k / G.exponent) / math.sqrt(G.order)


def dense_transfer_matrix(graph: CayleyGraph, t: float) -> np.ndarray:
    """H(t) = P diag(exp(i t alpha)) P^* as an explicit matrix product."""
    if graph.order > DENSE_LIMIT:
        raise OracleSizeError(f"dense transfer matrix limited to n <= {DENSE_LIMIT}, got {graph.order}")
    P = character_matrix(graph)
    phases = np.exp(1j * t * spectrum_values(graph))
    return (P * phases) @ P.conj().T


def closed_form_matrix(graph: CayleyGraph, t: float) -> np.ndarray:
    """H(t) assembled entry by entry from the character closed form."""
    G = graph.group
    n = G.order
    alpha = spectrum_values(graph)
    phases = np.exp(1j * t * alpha)
    # entry (g, h) only depends on a = g - h
    by_diff = np.array([np.dot(phases, _character_row(graph, a)) / n for a in range(n)])
    diff = np.stack([G.add_index(np.arange(n), G.negation[h]) for h in range(n)], axis=1)
    return by_diff[diff]


def dense_crosscheck(graph: CayleyGraph, t: float, tol: float = 1e-8) -> bool:
    """Both constructions of H(t) agree entrywise and the result is unitary."""
    if graph.order > DENSE_LIMIT:
        raise OracleSizeError(f"dense cross-check limited to n <= {DENSE_LIMIT}, got {graph.order}")
    H1 = closed_form_matrix(graph, t)
    H2 = dense_transfer_matrix(graph, t)
    if np.abs(H1 - H2).max() >= tol:
        return False
    unit = np.abs(H2 @ H2.conj().T - np.eye(graph.order)).max()
    return bool(unit < tol)


def adjacency_matrix(graph: CayleyGraph) -> np.ndarray:
    """A[g, h] = 1 iff g - h is in S."""
    G = graph.group
    n = G.order
    diff = np.stack([G.add_index(np.arange(n), G.negation[h]) for h in range(n)], axis=1)
    return graph.mask[diff].astype(np.float64)
