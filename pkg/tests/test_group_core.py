from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from caplab.group_core import (
    GroupError,
    PGroupType,
    elem_order,
    enumerate_subgroups,
    intersect,
    join,
    member,
    naive_subgroup_count,
    p_height,
    p_rank,
    quotient_invariants,
    span,
)

from conftest import SMALL_TYPES, T

Z27x3 = T("3:3,1")
Z4x2 = T("2:2,1")
Z3sq = T("3:1,1")


# -- examples ---------------------------------------------------------------


def test_elem_order():
    assert elem_order(Z27x3.elem(3, 1)) == 9
    assert elem_order(Z27x3.zero()) == 1
    assert elem_order(T("3:2,2").elem(3, 0)) == 3


def test_p_height():
    assert p_height(Z27x3.elem(3, 0)) == 1
    assert p_height(Z27x3.elem(0, 1)) == 0
    assert p_height(Z27x3.elem(9, 0)) == 2


def test_span():
    assert span([Z3sq.elem(1, 0), Z3sq.elem(0, 1)]).order == 9
    assert span([], Z3sq).order == 1
    S = span([Z4x2.elem(1, 1)])
    assert S.order == 4 and member(Z4x2.elem(2, 0), S)


def test_member():
    assert member(Z4x2.elem(2, 0), span([Z4x2.elem(1, 1)]))
    assert not member(Z4x2.elem(0, 1), Z4x2.trivial())
    assert all(member(g, Z4x2.whole()) for g in Z4x2.elements())


def test_intersect_and_join():
    a, b = span([Z3sq.elem(1, 0)]), span([Z3sq.elem(0, 1)])
    assert intersect(a, b).order == 1
    assert join(a, b) == Z3sq.whole()
    got = intersect(span([Z4x2.elem(1, 1)]), span([Z4x2.elem(1, 0), Z4x2.elem(2, 0)]))
    assert got == span([Z4x2.elem(2, 0)])
    J = join(span([Z4x2.elem(2, 0)]), span([Z4x2.elem(0, 1)]))
    assert {g.coords for g in J.elements()} == {(0, 0), (2, 0), (0, 1), (2, 1)}


def test_quotient_invariants():
    assert quotient_invariants(span([Z3sq.elem(1, 0)])) == T("3:1")
    assert quotient_invariants(Z3sq.whole()).order == 1
    assert quotient_invariants(span([Z4x2.elem(2, 1)])) == T("2:2")


def test_enumerate_counts():
    assert len(enumerate_subgroups(T("2:1,1"))) == 5
    assert len(enumerate_subgroups(T("3:2"))) == 3
    assert len(enumerate_subgroups(Z4x2)) == 8


def test_p_rank():
    assert p_rank(Z3sq) == 2
    assert p_rank(Z27x3) == 2
    assert p_rank(T("3:")) == 0


def test_bad_specs():
    for bad in ("9:1", "3:1,2", "x", "3:a"):
        with pytest.raises(GroupError):
            PGroupType.parse(bad)


def test_cross_group_rejected():
    with pytest.raises(GroupError):
        Z3sq.elem(1, 0) + T("3:2,1").elem(1, 0)


# -- properties ---------------------------------------------------------------

types = st.sampled_from(SMALL_TYPES)


@st.composite
def group_and_gens(draw):
    A = draw(types)
    n = draw(st.integers(0, 3))
    gens = [A.elem(*(draw(st.integers(0, m - 1)) for m in A.moduli)) for _ in range(n)]
    return A, gens


@given(group_and_gens(), st.integers(1, 1000), st.randoms(use_true_random=False))
def test_canonical_form_independent_of_generators(data, k, rnd):
    A, gens = data
    S = span(gens, A)
    # regenerate from random combinations of the elements plus the original generators
    elems = list(S.elements())
    extra = [rnd.choice(elems) for _ in range(3)]
    mixed = [(k % max(elem_order(g), 1) or 1) * g for g in gens] + extra
    T2 = span(mixed + gens, A)
    assert T2 == S and T2.generators() == S.generators()


@pytest.mark.parametrize("A", SMALL_TYPES, ids=str)
def test_lattice_laws_and_index(A):
    subs = enumerate_subgroups(A)
    assert len(subs) == naive_subgroup_count(A)
    for S in subs:
        assert S.order * quotient_invariants(S).order == A.order
    sample = subs if len(subs) <= 20 else subs[:: max(1, len(subs) // 20)]
    for S in sample:
        assert intersect(S, S) == S and join(S, S) == S
        for U in sample:
            assert intersect(S, U) == intersect(U, S)
            assert join(S, U) == join(U, S)
            assert intersect(S, join(S, U)) == S
            assert join(S, intersect(S, U)) == S
            for V in sample[:5]:
                assert intersect(intersect(S, U), V) == intersect(S, intersect(U, V))
                assert join(join(S, U), V) == join(S, join(U, V))


@pytest.mark.parametrize("A", SMALL_TYPES, ids=str)
def test_height_zero_iff_nonzero_mod_p(A):
    pA = span([A.p * e for e in A.basis()], A)
    for g in A.elements():
        if not g:
            continue
        assert (p_height(g) == 0) == (not member(g, pA))


@given(group_and_gens())
def test_elem_order_is_lcm_of_coordinates(data):
    A, gens = data
    for g in gens:
        coord = [m // math.gcd(m, c) for c, m in zip(g.coords, A.moduli)]
        assert elem_order(g) == math.lcm(1, *coord)
