"""Periodicity and perfect state transfer on integral abelian Cayley graphs.

Everything here is exact: eigenvalue gaps d - alpha_x are integers, valuations
are 2-adic, and times are rationals in units of pi.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .arith import INF, gcd_all, v2
from .groups import GroupElement, element_order, involutions
from .spectrum import (
    CayleyGraph,
    EigenvalueTable,
    GraphPreconditionError,
)

__all__ = [
    "INF", "v2", "TimeSet", "FailureReason", "PSTReport", "InvolutionPartition",
    "InternalConsistencyError", "OrderError", "spectral_gcd", "period_set",
    "involution_partition", "pst_check", "pst_all_pairs", "mod4_obstruction",
    "bipartite_valuation_check", "split_valuation_check", "circulant_chain_check",
]


class InternalConsistencyError(AssertionError):
    """A state the characterisation rules out was reached; indicates a bug."""


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class TimeSet:
    """{pi * (offset + period * l) : l >= 0}, restricted to positive times."""

    offset: Fraction
    period: Fraction
    empty: bool = False

    @classmethod
    def none(cls) -> "TimeSet":
        return cls(Fraction(0), Fraction(0), empty=True)

    @property
    def first(self) -> Optional[Fraction]:
        if self.empty:
            return None
        return self.offset if self.offset > 0 else self.offset + self.period

    def contains(self, t_pi) -> bool:
        t_pi = Fraction(t_pi)
        if self.empty or t_pi <= 0:
            return False
        q = (t_pi - self.offset) / self.period
        return q.denominator == 1 and q >= 0

    def take(self, count: int) -> list[Fraction]:
        if self.empty:
            return []
        start = self.first
        return [start + self.period * k for k in range(count)]

    def __str__(self) -> str:
        if self.empty:
            return "{}"
        return f"{{{format_pi(self.offset)} + {format_pi(self.period)}*l : l >= 0}}"


def format_pi(q: Fraction) -> str:
    q = Fraction(q)
    return f"pi*{q.numerator}/{q.denominator}"


class FailureReason(str, enum.Enum):
    NOT_INTEGRAL = "not-integral"
    ORDER_NOT_TWO = "order-not-two"
    VALUATION_NONUNIFORM = "valuation-nonuniform"
    VALUATION_GAP = "valuation-gap"


@dataclass(frozen=True)
class InvolutionPartition:
    involution: GroupElement
    even_mask: np.ndarray = field(repr=False)  # chi_a(x) = +1: an index-2 subgroup
    odd_mask: np.ndarray = field(repr=False)   # chi_a(x) = -1: its coset
    gap_gcd_even: int
    gap_gcd_odd: int
    odd_valuation: Optional[int]                 # None when v2(d - alpha_y) varies over the coset

    @property
    def even_part(self) -> frozenset[GroupElement]:
        return self.involution.group.from_mask(self.even_mask)

    @property
    def odd_part(self) -> frozenset[GroupElement]:
        return self.involution.group.from_mask(self.odd_mask)

    @property
    def uniform(self) -> bool:
        return self.odd_valuation is not None


@dataclass(frozen=True)
class PSTReport:
    pair: tuple[GroupElement, GroupElement]
    difference: GroupElement
    has_pst: bool
    failure_reason: Optional[FailureReason]
    times: TimeSet
    gap_gcd: Optional[int] = None
    gap_gcd_even: Optional[int] = None
    gap_gcd_odd: Optional[int] = None
    odd_valuation: Optional[int] = None

    @property
    def verdict(self) -> str:
        return "has-PST" if self.has_pst else "no-PST"


def _v2_array(values: np.ndarray) -> np.ndarray:
    """Elementwise v2 of an integer array, with inf for zeros."""
    values = np.abs(np.asarray(values, dtype=np.int64))
    out = np.full(values.shape, INF)
    nz = values != 0
    low = values[nz] & -values[nz]
    out[nz] = np.log2(low.astype(np.float64)).round()
    return out


def spectral_gcd(table: EigenvalueTable, require_connected: bool = True) -> int:
    """gcd of the gaps d - alpha_x over the whole group (the x = 0 term is 0)."""
    if require_connected and not table.connected:
        raise GraphPreconditionError("spectral gcd needs a connected graph")
    if table.group.order < 2:
        raise GraphPreconditionError("spectral gcd needs |G| >= 2")
    m = gcd_all(table.gaps())
    if m == 0:
        raise GraphPreconditionError("all eigenvalue gaps vanish (empty connection set)")
    return m


def _graph_gcd(graph: CayleyGraph) -> int:
    graph.require(connected=True)
    if graph.gap_gcd == 0:
        raise GraphPreconditionError("all eigenvalue gaps vanish (empty connection set)")
    return graph.gap_gcd


def _require_analysable(graph: CayleyGraph, min_order: int):
    graph.require(simple=True, connected=True)
    if graph.order < min_order:
        raise GraphPreconditionError(f"|G| = {graph.order} is below the supported minimum {min_order}")


def period_set(graph: CayleyGraph, g: GroupElement) -> TimeSet:
    """Times t > 0 with |H_{g,g}(t)| = 1: every positive multiple of 2*pi/M."""
    _require_analysable(graph, 2)
    graph.require(integral=True)
    if g.group != graph.group:
        raise GraphPreconditionError(f"{g} is not a vertex of this graph")
    m = _graph_gcd(graph)
    return TimeSet(Fraction(2, m), Fraction(2, m))


def involution_partition(graph: CayleyGraph, a: GroupElement) -> InvolutionPartition:
    if element_order(a) != 2:
        raise OrderError(f"{a} has order {element_order(a)}, not 2")
    graph.require(integral=True)
    if graph.order < 4:
        raise GraphPreconditionError("the involution partition needs |G| >= 4")
    G = graph.group
    even = G.char_exponents(a.index) == 0
    odd = ~even
    gaps = graph.degree - graph.alpha
    vals = _v2_array(gaps[odd])
    lo, hi = vals.min(), vals.max()
    if lo == INF:
        # alpha_y = d for y outside the kernel of chi_a would make G disconnected
        raise InternalConsistencyError(f"gap vanishes on the coset of {a}")
    return InvolutionPartition(
        involution=a,
        even_mask=even,
        odd_mask=odd,
        gap_gcd_even=gcd_all(gaps[even]),
        gap_gcd_odd=gcd_all(gaps[odd]),
        odd_valuation=int(lo) if lo == hi else None,
    )


def pst_check(graph: CayleyGraph, g: GroupElement, h: GroupElement) -> PSTReport:
    """Decide PST between g and h and return the exact set of transfer times."""
    if g == h:
        raise ValueError("g == h: use period_set for the return times of a single vertex")
    if graph.order < 3:
        raise GraphPreconditionError("PST analysis is only supported for |G| >= 3")
    _require_analysable(graph, 3)
    a = g - h
    no = dict(pair=(g, h), difference=a, has_pst=False, times=TimeSet.none())
    if not graph.integral:
        return PSTReport(failure_reason=FailureReason.NOT_INTEGRAL, **no)
    m = _graph_gcd(graph)
    if element_order(a) != 2:
        return PSTReport(failure_reason=FailureReason.ORDER_NOT_TWO, gap_gcd=m, **no)
    part = involution_partition(graph, a)
    if math.gcd(part.gap_gcd_even, part.gap_gcd_odd) != m:
        raise InternalConsistencyError("gcd over the subgroup and its coset differs from the full gcd")
    witness = dict(gap_gcd=m, gap_gcd_even=part.gap_gcd_even, gap_gcd_odd=part.gap_gcd_odd)
    if part.odd_valuation is None:
        return PSTReport(failure_reason=FailureReason.VALUATION_NONUNIFORM, **witness, **no)
    rho = part.odd_valuation
    if v2(part.gap_gcd_even) < rho + 1:
        return PSTReport(failure_reason=FailureReason.VALUATION_GAP, odd_valuation=rho,
                         **witness, **no)
    return PSTReport(
        pair=(g, h),
        difference=a,
        has_pst=True,
        failure_reason=None,
        times=TimeSet(Fraction(1, m), Fraction(2, m)),
        odd_valuation=rho,
        **witness,
    )


def pst_all_pairs(graph: CayleyGraph) -> list[PSTReport]:
    """One report per involution a, for the pair (0, a); other pairs follow by translation."""
    graph.require(simple=True, connected=True)
    G = graph.group
    return [pst_check(graph, G.zero, a) for a in involutions(G)]


def mod4_obstruction(graph: CayleyGraph) -> bool:
    """True when |G| = 2 mod 4 and |G| >= 6, which rules out PST between distinct vertices."""
    graph.require(integral=True)
    n = graph.order
    return n % 4 == 2 and n >= 6


def _uniform_valuation(diffs) -> tuple[bool, Optional[int]]:
    vals = {v2(int(d)) for d in diffs}
    if len(vals) == 1:
        (rho,) = vals
        if rho != INF:
            return True, int(rho)
    return False, None


def bipartite_valuation_check(graph: CayleyGraph, a: GroupElement) -> tuple[bool, Optional[int]]:
    """Is v2(alpha_x - alpha_y) one constant over all x in the kernel of chi_a, y off it?"""
    part = involution_partition(graph, a)
    xs = np.unique(graph.alpha[part.even_mask])
    ys = np.unique(graph.alpha[part.odd_mask])
    return _uniform_valuation((xs[:, None] - ys[None, :]).ravel())


def split_valuation_check(graph: CayleyGraph, a: GroupElement) -> tuple[bool, Optional[int]]:
    """v2(d - alpha_y) = rho on the coset and v2(d - alpha_x) >= rho + 1 on the kernel."""
    part = involution_partition(graph, a)
    if part.odd_valuation is None:
        return False, None
    rho = part.odd_valuation
    even_vals = _v2_array(graph.degree - graph.alpha[part.even_mask])
    if np.all(even_vals >= rho + 1):
        return True, rho
    return False, None


def circulant_chain_check(graph: CayleyGraph) -> tuple[bool, Optional[int]]:
    """Cyclic groups of even order: do consecutive eigenvalue differences share one v2?"""
    G = graph.group
    if G.rank != 1 or G.order % 2:
        raise GraphPreconditionError(f"chain check needs a cyclic group of even order, got {G}")
    graph.require(integral=True, connected=True)
    return _uniform_valuation(np.diff(graph.alpha))
