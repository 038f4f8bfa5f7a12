"""Abelian Cayley graphs and their spectra.

For a Q-set S every eigenvalue alpha_x = sum_{g in S} chi_x(g) is an integer.  It
is computed class by class: a unit class [h] of order lam contributes the
Ramanujan sum c_lam(t), where chi_x(h) = omega_lam^t.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arith import gcd_all, ramanujan_row, ramanujan_sum
from .groups import (
    GroupDomainError,
    GroupElement,
    GroupSpec,
    SetLike,
    char_exponent,
    closure_mask,
    element_order,
    is_qset_mask,
)


class IntegralityRequiredError(ValueError):
    pass


class GraphPreconditionError(ValueError):
    """The graph is not simple / not connected / too small for the requested analysis."""


class CayleyGraph:
    """Cay(G, S) with validation flags evaluated once at construction."""

    def __init__(self, group: GroupSpec, mask: np.ndarray):
        mask = np.array(mask, dtype=bool)
        mask.setflags(write=False)
        self.group = group
        self.mask = mask
        self.degree = int(mask.sum())
        self.simple = bool(not mask[0] and np.array_equal(mask, mask[group.negation]))
        self.connected = bool(closure_mask(group, mask).all())
        self.integral = is_qset_mask(group, mask)

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def connection_set(self) -> frozenset[GroupElement]:
        return self.group.from_mask(self.mask)

    @cached_property
    def class_representatives(self) -> np.ndarray:
        """Representatives of the unit classes contained in S (meaningful when integral)."""
        return np.unique(self.group.class_ids[self.mask])

    def flag_reasons(self) -> dict[str, str]:
        reasons = {}
        if self.mask[0]:
            reasons["simple"] = "0 is in S"
        elif not self.simple:
            reasons["simple"] = "S is not closed under negation"
        if not self.connected:
            reasons["connected"] = "S does not generate G"
        if not self.integral:
            reasons["integral"] = "S is not a union of unit classes"
        return reasons

    def require(self, *, simple: bool = False, connected: bool = False, integral: bool = False):
        if simple and not self.simple:
            raise GraphPreconditionError(f"graph is not simple: {self.flag_reasons()['simple']}")
        if connected and not self.connected:
            raise GraphPreconditionError("graph is not connected: S does not generate G")
        if integral and not self.integral:
            raise IntegralityRequiredError("graph is not integral: S is not a union of unit classes")

    @cached_property
    def alpha(self) -> np.ndarray:
        """Exact eigenvalue table as an int64 array indexed by element index."""
        self.require(integral=True)
        G = self.group
        e = G.exponent
        out = np.zeros(G.order, dtype=np.int64)
        for h in self.class_representatives:
            lam = int(G.orders[h])
            t = (G.char_exponents(int(h)) // (e // lam)) % lam
            out += np.array(ramanujan_row(lam), dtype=np.int64)[t]
        out.setflags(write=False)
        return out

    @cached_property
    def gap_gcd(self) -> int:
        """gcd of d - alpha_x over all x; 0 only for an empty connection set."""
        return gcd_all(self.degree - self.alpha)

    @cached_property
    def alpha_float(self) -> np.ndarray:
        G = self.group
        out = np.zeros(G.order)
        for g in np.flatnonzero(self.mask):
            out += np.cos(2 * np.pi * G.char_exponents(int(g)) / G.exponent)
        out.setflags(write=False)
        return out

    def __repr__(self) -> str:
        return f"CayleyGraph({self.group}, |S|={self.degree})"


def build_graph(G: GroupSpec, S: SetLike) -> CayleyGraph:
    return CayleyGraph(G, G.mask(S))


@dataclass(frozen=True)
class EigenvalueTable:
    group: GroupSpec
    alpha: np.ndarray
    degree: int
    connected: bool

    def __getitem__(self, x) -> int:
        return int(self.alpha[self.group._coerce(x)])

    def gaps(self) -> np.ndarray:
        """d - alpha_x for every x."""
        return self.degree - self.alpha


def _check_member(graph: CayleyGraph, x: GroupElement):
    if x.group != graph.group:
        raise GroupDomainError(f"{x} is not an element of {graph.group}")


def eigenvalue_exact(graph: CayleyGraph, x: GroupElement) -> int:
    graph.require(integral=True)
    _check_member(graph, x)
    G = graph.group
    total = 0
    for h in graph.class_representatives:
        rep = GroupElement(G, int(h))
        lam = element_order(rep)
        t = char_exponent(x, rep) * lam // G.exponent
        total += ramanujan_sum(lam, t)
    return total


def eigenvalue_table(graph: CayleyGraph) -> EigenvalueTable:
    return EigenvalueTable(graph.group, graph.alpha, graph.degree, graph.connected)


def eigenvalue_float(graph: CayleyGraph, x: GroupElement) -> float:
    graph.require(simple=True)
    _check_member(graph, x)
    return float(graph.alpha_float[x.index])
