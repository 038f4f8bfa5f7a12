import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import event, given, settings, strategies as st

from cayleypst.groups import class_mask, enumerate_classes, make_group
from cayleypst.pst import (
    FailureReason,
    OrderError,
    TimeSet,
    bipartite_valuation_check,
    circulant_chain_check,
    format_pi,
    involution_partition,
    mod4_obstruction,
    period_set,
    pst_all_pairs,
    pst_check,
    spectral_gcd,
    split_valuation_check,
)
from cayleypst.spectrum import CayleyGraph, GraphPreconditionError, build_graph, eigenvalue_table

import oracles
from test_spectrum import z4z4_class_graph


def qset_graph(G, reps):
    mask = np.zeros(G.order, dtype=bool)
    for r in reps:
        mask |= class_mask(G, r.index)
    return CayleyGraph(G, mask)


def test_z4z4_worked_example():
    graph = z4z4_class_graph((1, 0), (1, 1))
    G = graph.group
    assert graph.degree == 4 and graph.connected
    reps = [(0, 0), (0, 2), (2, 0), (2, 2), (1, 0), (1, 2), (1, 1), (1, 3), (0, 1), (2, 1)]
    gaps = [graph.degree - graph.alpha[G.index_of(z)] for z in reps]
    assert gaps == [0, 4, 8, 4, 4, 4, 6, 2, 2, 6]
    a = G.element((0, 2))
    part = involution_partition(graph, a)
    assert part.odd_valuation == 1
    assert {x.residues for x in part.odd_part} == {(x, y) for x in range(4) for y in (1, 3)}
    r = pst_check(graph, G.zero, a)
    assert r.has_pst and r.verdict == "has-PST"
    assert (r.gap_gcd, r.gap_gcd_even, r.gap_gcd_odd, r.odd_valuation) == (2, 4, 2, 1)
    assert r.times.first == Fraction(1, 2)
    assert r.times.contains(Fraction(3, 2)) and not r.times.contains(1)


def test_z4z4_other_involutions_fail():
    graph = z4z4_class_graph((1, 0), (1, 1))
    verdicts = {r.difference.residues: r.failure_reason for r in pst_all_pairs(graph)}
    assert verdicts == {(0, 2): None, (2, 0): FailureReason.VALUATION_NONUNIFORM,
                        (2, 2): FailureReason.VALUATION_NONUNIFORM}


def test_cycle_c4():
    graph = build_graph(make_group([4]), [1, 3])
    assert spectral_gcd(eigenvalue_table(graph)) == 2
    assert period_set(graph, graph.group.zero).first == 1
    r = pst_check(graph, graph.group.element(0), graph.group.element(2))
    assert r.has_pst and r.times.first == Fraction(1, 2)


def test_cycle_c6_has_no_pst():
    graph = build_graph(make_group([6]), [1, 5])
    r = pst_check(graph, graph.group.element(0), graph.group.element(3))
    assert not r.has_pst
    assert r.failure_reason == FailureReason.VALUATION_NONUNIFORM
    assert r.times.empty and r.times.first is None
    assert mod4_obstruction(graph)
    assert bipartite_valuation_check(graph, graph.group.element(3)) == (False, None)


def test_order_not_two():
    graph = build_graph(make_group([8]), [1, 3, 5, 7])
    r = pst_check(graph, graph.group.element(0), graph.group.element(1))
    assert r.failure_reason == FailureReason.ORDER_NOT_TWO
    with pytest.raises(OrderError):
        involution_partition(graph, graph.group.element(1))


def test_valuation_gap_reason():
    # K4 = Cay(Z4, {1,2,3}): gaps 0,4,4,4 so rho = 2 on the odd coset, but the even gcd is 4
    graph = build_graph(make_group([4]), [1, 2, 3])
    r = pst_check(graph, graph.group.element(0), graph.group.element(2))
    assert not r.has_pst and r.failure_reason == FailureReason.VALUATION_GAP


def test_not_integral_reason():
    graph = build_graph(make_group([8]), [1, 2, 6, 7])
    assert not graph.integral
    r = pst_check(graph, graph.group.element(0), graph.group.element(4))
    assert r.failure_reason == FailureReason.NOT_INTEGRAL


def test_preconditions():
    G = make_group([6])
    with pytest.raises(ValueError):
        pst_check(build_graph(G, [1, 5]), G.zero, G.zero)
    with pytest.raises(GraphPreconditionError):
        pst_check(build_graph(G, [2, 4]), G.zero, G.element(3))
    with pytest.raises(GraphPreconditionError):
        pst_check(build_graph(G, [1]), G.zero, G.element(3))
    K2 = make_group([2])
    with pytest.raises(GraphPreconditionError):
        pst_check(build_graph(K2, [1]), K2.zero, K2.element(1))
    with pytest.raises(GraphPreconditionError):
        spectral_gcd(eigenvalue_table(build_graph(G, [2, 4])))
    assert spectral_gcd(eigenvalue_table(build_graph(G, [2, 4])), require_connected=False) == 3


def test_time_set_helpers():
    ts = TimeSet(Fraction(1, 4), Fraction(1, 2))
    assert ts.take(3) == [Fraction(1, 4), Fraction(3, 4), Fraction(5, 4)]
    assert str(ts) == "{pi*1/4 + pi*1/2*l : l >= 0}"
    assert not ts.contains(0) and not ts.contains(Fraction(1, 2))
    assert TimeSet.none().take(2) == []
    assert format_pi(Fraction(2)) == "pi*2/1"


def test_chain_check_requires_even_cycle():
    with pytest.raises(GraphPreconditionError):
        circulant_chain_check(build_graph(make_group([5]), [1, 4]))
    with pytest.raises(GraphPreconditionError):
        circulant_chain_check(z4z4_class_graph((1, 0), (1, 1)))


def brute_force_pst(factors, S, a):
    """PST between 0 and a by dense expm at every t = pi*k/M, k = 1..2M.

    For an integral graph |H_{0,a}(t)| = 1 forces t*(alpha_x - alpha_0) in pi*Z for all x,
    so these samples cover every candidate time in one period.
    """
    m = oracles.eigenvalue_gcd(factors, S)
    zero = tuple(0 for _ in factors)
    A, idx = oracles.adjacency(factors, S)
    w, V = np.linalg.eigh(A)
    hits = []
    for k in range(1, 2 * m + 1):
        t = math.pi * k / m
        H = (V * np.exp(1j * t * w)) @ V.conj().T
        if abs(abs(H[idx[zero], idx[a]]) - 1) < 1e-8:
            hits.append(Fraction(k, m))
    return hits


small_groups = st.sampled_from([[4], [6], [8], [10], [12], [16], [2, 2], [2, 4], [4, 4], [2, 6], [2, 8], [2, 2, 2]])


@settings(max_examples=200, deadline=None)
@given(small_groups, st.data())
def test_pst_verdict_matches_expm(factors, data):
    G = make_group(factors)
    reps = [r for r in enumerate_classes(G).representatives if r.index != 0]
    chosen = data.draw(st.lists(st.sampled_from(reps), min_size=1, unique=True))
    graph = qset_graph(G, chosen)
    if not graph.connected:
        return
    S = [x.residues for x in graph.connection_set]
    assert graph.gap_gcd == oracles.eigenvalue_gcd(factors, S)
    reports = pst_all_pairs(graph)
    event(f"pst={any(r.has_pst for r in reports)}")
    for r in reports:
        hits = brute_force_pst(factors, S, r.difference.residues)
        assert r.has_pst == bool(hits)
        if r.has_pst:
            assert hits == [t for t in hits if r.times.contains(t)]
            assert hits[0] == r.times.first


@settings(max_examples=200, deadline=None)
@given(small_groups, st.data())
def test_equivalent_forms_agree(factors, data):
    G = make_group(factors)
    reps = [r for r in enumerate_classes(G).representatives if r.index != 0]
    chosen = data.draw(st.lists(st.sampled_from(reps), min_size=1, unique=True))
    graph = qset_graph(G, chosen)
    if not graph.connected:
        return
    for r in pst_all_pairs(graph):
        a = r.difference
        ok_b, rho_b = bipartite_valuation_check(graph, a)
        ok_s, rho_s = split_valuation_check(graph, a)
        assert ok_b == ok_s == r.has_pst
        assert math.gcd(r.gap_gcd_even, r.gap_gcd_odd) == r.gap_gcd == graph.gap_gcd
        if r.has_pst:
            assert rho_b == rho_s == r.odd_valuation
        if G.rank == 1:
            assert circulant_chain_check(graph)[0] == r.has_pst


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([6, 10, 14, 18, 22, 26, 30]), st.data())
def test_no_pst_when_order_is_twice_odd(n, data):
    G = make_group([n])
    reps = [r for r in enumerate_classes(G).representatives if r.index != 0]
    chosen = data.draw(st.lists(st.sampled_from(reps), min_size=1, unique=True))
    graph = qset_graph(G, chosen)
    if graph.connected:
        assert mod4_obstruction(graph)
        assert not any(r.has_pst for r in pst_all_pairs(graph))


@settings(max_examples=60, deadline=None)
@given(small_groups, st.data())
def test_period_set_is_exact(factors, data):
    G = make_group(factors)
    reps = [r for r in enumerate_classes(G).representatives if r.index != 0]
    chosen = data.draw(st.lists(st.sampled_from(reps), min_size=1, unique=True))
    graph = qset_graph(G, chosen)
    if not graph.connected:
        return
    first = period_set(graph, G.zero).first
    A, _ = oracles.adjacency(factors, [x.residues for x in graph.connection_set])
    w, V = np.linalg.eigh(A)
    H = lambda t: (V * np.exp(1j * t * w)) @ V.conj().T
    assert abs(abs(H(math.pi * float(first))[0, 0]) - 1) < 1e-8
    # return times are multiples of pi/M, and pi/M itself is not one
    assert first == Fraction(2, graph.gap_gcd)
    assert abs(H(math.pi / graph.gap_gcd)[0, 0]) < 1 - 1e-6
