import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayleypst.groups import (
    GroupDomainError,
    InvalidDivisorError,
    InvalidGroupError,
    char_exponent,
    class_of,
    element_order,
    enumerate_classes,
    expected_class_size,
    gcd_set,
    involutions,
    is_qset,
    make_group,
    subgroup_closure,
)

import oracles

factor_lists = st.lists(st.integers(2, 8), min_size=1, max_size=3).filter(lambda f: math.prod(f) <= 200)


def test_mixed_radix_encoding():
    G = make_group([4, 4])
    assert G.order == 16 and G.exponent == 4
    assert G.index_of((1, 3)) == 7
    assert G.element(7).residues == (1, 3)
    assert repr(G.element((2, 1))) == "(2,1)"
    assert repr(make_group([6]).element(5)) == "5"


def test_invalid_groups():
    for bad in ([], [1], [0, 4], [4, -2]):
        with pytest.raises(InvalidGroupError):
            make_group(bad)


def test_domain_errors():
    G = make_group([4, 4])
    with pytest.raises(GroupDomainError):
        G.element((4, 0))
    with pytest.raises(GroupDomainError):
        G.element((1,))
    with pytest.raises(GroupDomainError):
        G.element(16)
    H = make_group([16])
    with pytest.raises(GroupDomainError):
        G.element(1) + H.element(1)


def test_element_arithmetic():
    G = make_group([4, 6])
    g, h = G.element((3, 5)), G.element((2, 4))
    assert (g + h).residues == (1, 3)
    assert (g - h).residues == (1, 1)
    assert (-g).residues == (1, 1)
    assert (5 * g).residues == (3, 1)
    assert element_order(g) == 12


def test_z4z4_classes():
    # the ten unit classes of Z4 + Z4, listed by hand
    G = make_group([4, 4])
    expected = {
        frozenset({(0, 0)}), frozenset({(0, 2)}), frozenset({(2, 0)}), frozenset({(2, 2)}),
        frozenset({(1, 0), (3, 0)}), frozenset({(1, 2), (3, 2)}), frozenset({(1, 1), (3, 3)}),
        frozenset({(1, 3), (3, 1)}), frozenset({(0, 1), (0, 3)}), frozenset({(2, 1), (2, 3)}),
    }
    part = enumerate_classes(G)
    got = {frozenset(x.residues for x in c) for c in part.classes}
    assert got == expected
    assert len(part) == 10


def test_gcd_sets_z4z4():
    G = make_group([4, 4])
    union = {x.residues for x in gcd_set(G, [(1, 1)])}
    assert union == {(1, 1), (3, 3), (1, 3), (3, 1)}
    # neither half of that gcd-set is a gcd-set on its own, but each is a Q-set
    assert is_qset(G, [(1, 1), (3, 3)])
    assert not is_qset(G, [(1, 1), (3, 1)])


def test_gcd_set_validation():
    G = make_group([4, 6])
    with pytest.raises(InvalidDivisorError):
        gcd_set(G, [(3, 1)])
    with pytest.raises(InvalidDivisorError):
        gcd_set(G, [(1,)])
    with pytest.raises(InvalidDivisorError):
        gcd_set(G, [(4, 6)])


def test_involutions():
    assert [a.residues for a in involutions(make_group([4, 6]))] == [(0, 3), (2, 0), (2, 3)]
    assert involutions(make_group([5])) == []


def test_closure():
    G = make_group([4, 6])
    assert len(subgroup_closure(G, [(2, 0), (0, 2)])) == 6
    assert len(subgroup_closure(G, [(1, 1)])) == 12
    assert len(subgroup_closure(G, [(1, 0), (0, 1)])) == 24
    assert subgroup_closure(G, []) == frozenset({G.zero})


@settings(max_examples=60, deadline=None)
@given(factor_lists, st.data())
def test_classes_match_brute_force(factors, data):
    G = make_group(factors)
    g = data.draw(st.tuples(*(st.integers(0, n - 1) for n in factors)))
    cls = {x.residues for x in class_of(G.element(g))}
    assert cls == set(oracles.unit_class(factors, g))
    assert len(cls) == expected_class_size(G.element(g))
    assert element_order(G.element(g)) == oracles.order(factors, g)


@settings(max_examples=40, deadline=None)
@given(factor_lists)
def test_classes_partition_group(factors):
    G = make_group(factors)
    part = enumerate_classes(G)
    members = [x for c in part.classes for x in c]
    assert len(members) == G.order == len(set(members))
    assert len(part) == len(oracles.all_classes(factors))


@settings(max_examples=40, deadline=None)
@given(factor_lists, st.data())
def test_closure_matches_bfs(factors, data):
    G = make_group(factors)
    els = oracles.elements(factors)
    S = data.draw(st.sets(st.sampled_from(els), max_size=3))
    got = {x.residues for x in subgroup_closure(G, S)}
    sym = S | {oracles.neg(factors, s) for s in S}
    assert got == oracles.generated_subgroup(factors, sym)


@settings(max_examples=40, deadline=None)
@given(factor_lists, st.data())
def test_char_exponent_matches_root_of_unity(factors, data):
    G = make_group(factors)
    x = data.draw(st.sampled_from(oracles.elements(factors)))
    g = data.draw(st.sampled_from(oracles.elements(factors)))
    k = char_exponent(G.element(x), G.element(g))
    assert np.isclose(np.exp(2j * np.pi * k / G.exponent), oracles.character(factors, x, g))


@settings(max_examples=40, deadline=None)
@given(factor_lists, st.data())
def test_qset_iff_union_of_classes(factors, data):
    G = make_group(factors)
    els = oracles.elements(factors)
    S = data.draw(st.sets(st.sampled_from(els), max_size=6))
    closed = all(oracles.unit_class(factors, s) <= S for s in S)
    assert is_qset(G, S) == closed
