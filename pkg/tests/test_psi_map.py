from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from caplab.galois_model import base_field, fixed_field, generates, restriction_order, top_field
from caplab.group_core import elem_order, enumerate_subgroups, intersect, join, span
from caplab.psi_map import (
    STRATEGIES,
    NoComplementError,
    NotBijectiveError,
    PsiError,
    PsiMap,
    canonical_complement,
    find_complement,
    psi_cyclic,
    psi_max,
    psi_subgroup,
    splitting_field,
)

from conftest import SMALL_TYPES, T

Z9, Z3sq, Z27x3, Z9x3 = T("3:2"), T("3:1,1"), T("3:3,1"), T("3:2,1")


def test_splitting_field():
    assert splitting_field(Z9.elem(1)).degree == 1
    L = splitting_field(Z3sq.elem(1, 0))
    assert L.degree == 3 and L.fixing == span([Z3sq.elem(1, 0)])
    assert splitting_field(Z27x3.elem(1, 1)).degree == 3


def test_canonical_complement_adapted():
    assert canonical_complement(Z3sq.elem(1, 0)) == span([Z3sq.elem(0, 1)])
    assert canonical_complement(Z27x3.elem(1, 1)) == span([Z27x3.elem(0, 1)])


def test_complement_requires_maximal_order():
    a = Z27x3.elem(3, 1)
    for s in STRATEGIES:
        with pytest.raises(NoComplementError):
            canonical_complement(a, strategy=s)
    assert find_complement(span([a])) is None


def test_psi_max():
    L = psi_max(Z9.elem(1))
    assert L == top_field(Z9) and generates(Z9.elem(1), L)
    assert psi_max(Z3sq.elem(1, 0)) == fixed_field(span([Z3sq.elem(0, 1)]))
    L = psi_max(Z27x3.elem(1, 1))
    assert L.degree == 27 and restriction_order(Z27x3.elem(1, 1), L) == 27


def test_psi_cyclic():
    assert psi_cyclic(Z9.elem(3)).degree == 3
    L = psi_cyclic(Z9x3.elem(3, 0))
    assert L.degree == 3 and L.fixing == span([Z9x3.elem(0, 1), Z9x3.elem(3, 0)])
    assert psi_cyclic(Z3sq.elem(1, 0)) == psi_max(Z3sq.elem(1, 0))


def test_psi_subgroup_boundaries():
    assert psi_subgroup(Z3sq.trivial()).field == base_field(Z3sq)
    assert psi_subgroup(Z9.whole()).field == top_field(Z9)
    S = span([Z3sq.elem(1, 0)])
    assert psi_subgroup(S).field == psi_max(Z3sq.elem(1, 0))


def test_psi_inverse_and_capitulation_cyclic():
    psi = PsiMap(Z9)
    assert psi.psi_inverse(base_field(Z9)) == Z9.trivial()
    assert psi.psi_inverse(top_field(Z9)) == Z9.whole()
    L3 = fixed_field(span([Z9.elem(3)]))
    assert psi.capitulates_canonically(Z9.zero(), L3)
    assert psi.capitulates_canonically(Z9.elem(3), L3)
    assert not psi.capitulates_canonically(Z9.elem(1), L3)


def test_hilbert94_witness():
    psi = PsiMap(Z9)
    w = psi.hilbert94_witness(top_field(Z9))
    assert elem_order(w.element) == 9 and w.ok
    L3 = fixed_field(span([Z9.elem(3)]))
    w = psi.hilbert94_witness(L3)
    # phi(3) lies in Gal(H/L), so its restriction is trivial; the class 1 above it generates L
    assert elem_order(w.element) == 3 and not w.generates and not w.maximal_cyclic and w.ok
    assert not generates(w.element, top_field(Z9))
    assert generates(Z9.elem(1), L3)
    # (Z/3)^2: the adapted rule collides, so psi^-1 is undefined there; the pairing rule inverts
    L = psi_max(Z3sq.elem(1, 0))
    with pytest.raises(NotBijectiveError):
        PsiMap(Z3sq, "adapted-basis").hilbert94_witness(L)
    w = PsiMap(Z3sq, "pairing-annihilator").hilbert94_witness(L)
    assert w.element == Z3sq.elem(1, 0) and w.ok


@pytest.mark.parametrize("p, m", [(p, m) for p in (2, 3, 5) for m in range(1, 5)])
def test_cyclic_psi_is_the_lattice_bijection(p, m):
    A = T(f"{p}:{m}")
    for s in STRATEGIES:
        psi = PsiMap(A, s)
        for S in psi.subgroups:
            r = psi.psi_subgroup(S)
            # the unique order-preserving bijection sends the subgroup of order q to the field of degree q
            assert r.field.degree == S.order and r.degree_ok and r.independence_ok
            assert r.generation_ok is not False


@pytest.mark.parametrize("A", SMALL_TYPES, ids=str)
def test_complement_validity(A):
    for s in STRATEGIES:
        psi = PsiMap(A, s)
        for a in psi.maximal_elements():
            try:
                C = psi.canonical_complement(a)
            except PsiError:
                assert s == "pairing-annihilator"
                continue
            cyc = span([a])
            assert intersect(cyc, C).order == 1 and join(cyc, C) == A.whole()


@pytest.mark.parametrize("spec", ["3:1,1", "2:2,1", "3:2,1", "5:1,1", "2:1,1,1"])
def test_transversal_matches_elementwise_oracle(spec):
    for s in STRATEGIES:
        psi = PsiMap(T(spec), s)
        for S in psi.subgroups:
            try:
                L = psi.psi_subgroup(S).field
            except PsiError:
                continue
            assert L == psi.psi_subgroup_elementwise(S)


@given(st.sampled_from([A for A in SMALL_TYPES if A.order <= 27]), st.sampled_from(STRATEGIES))
def test_degree_audit_and_determinism(A, s):
    psi1, psi2 = PsiMap(A, s), PsiMap(A, s)
    for x in A.elements():
        if not x:
            continue
        try:
            L = psi1.psi_cyclic(x)
        except PsiError:
            continue
        assert L.degree == elem_order(x)
        assert psi2.psi_cyclic(x) == L
    for S in enumerate_subgroups(A):
        try:
            a = psi1.psi_subgroup(S)
        except PsiError:
            continue
        assert a == psi2.psi_subgroup(S)
