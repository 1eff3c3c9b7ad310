from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from caplab.galois_model import fixed_field, top_field, base_field
from caplab.group_core import enumerate_subgroups, member, p_rank, span
from caplab.orthogonality import (
    genset_counterexample,
    genset_size_audit,
    is_orthogonal,
    maximal_orthogonal_set,
    orthogonality_properties_audit,
    psi_k,
    radical_of_field,
)
from caplab.pairing import KummerPairing, RadicalGroup, annihilator, is_perfect, pair
from caplab.psi_map import STRATEGIES, PsiMap

from conftest import SMALL_TYPES, T

G3 = T("3:1,1")


def test_standard_pairing_values():
    P = KummerPairing.standard(G3)
    assert pair(P, G3.elem(1, 0), G3.elem(1, 0)) == 1
    assert pair(P, G3.elem(1, 0), G3.elem(0, 1)) == 0
    G = T("3:2,1")
    Q = KummerPairing.standard(G)
    assert Q.matrix == ((1, 0), (0, 3))


def test_perfectness():
    for A in SMALL_TYPES:
        assert is_perfect(KummerPairing.standard(A))
    zero = KummerPairing(G3, RadicalGroup(G3), ((0, 0), (0, 0)), strict=False)
    assert not is_perfect(zero)
    degen = KummerPairing(G3, RadicalGroup(G3), ((0, 0), (0, 1)), strict=False)
    assert not is_perfect(degen) and member(G3.elem(1, 0), degen.left_kernel)


def test_radical_of_field():
    P = KummerPairing.standard(G3)
    assert radical_of_field(P, base_field(G3)).order == 1
    assert radical_of_field(P, top_field(G3)) == G3.whole()
    L = fixed_field(span([G3.elem(0, 1)]))
    assert radical_of_field(P, L) == span([G3.elem(1, 0)])


def test_psi_k_composes():
    psi = PsiMap(G3, "adapted-basis")
    P = KummerPairing.standard(G3)
    S = span([G3.elem(1, 0)])
    C = psi.canonical_complement(G3.elem(1, 0))
    assert psi_k(psi, S) == annihilator(P, psi.phi.apply_subgroup(C))


def test_is_orthogonal_examples():
    r = is_orthogonal(G3.elem(1, 0), G3.elem(0, 1))
    assert r.co and r.co1 and r.agree
    assert not is_orthogonal(G3.elem(1, 0), G3.elem(1, 1)).co


def test_orthogonality_audit_cyclic_and_pair_count():
    reps = orthogonality_properties_audit(PsiMap(T("3:2")))
    assert all(r.verdict == "pass" for r in reps)
    for s in STRATEGIES:
        reps = orthogonality_properties_audit(PsiMap(G3, s))
        assert "pairs_outside_cycle=48" in reps[0].detail
        assert {r.verdict for r in reps} <= {"pass", "fail"}


@pytest.mark.parametrize("spec, size", [("3:2", 1), ("3:1,1", 2), ("3:3,1", 2)])
def test_maximal_orthogonal_set(spec, size):
    res = maximal_orthogonal_set(PsiMap(T(spec)))
    assert len(res.members) == size == p_rank(T(spec))
    assert res.generates is True


@pytest.mark.parametrize("p", [2, 3, 5])
def test_genset_counterexample(p):
    r = genset_counterexample(p)
    assert r.verdict == "pass", r.witness
    assert r.witness["minimal_generating"]


@pytest.mark.parametrize("A", SMALL_TYPES, ids=str)
def test_double_annihilator_and_orders(A):
    P = KummerPairing.standard(A)
    for S in enumerate_subgroups(A):
        R = annihilator(P, S, "right")
        assert S.order * R.order == A.order
        assert annihilator(P, R, "left") == S


@given(st.sampled_from(SMALL_TYPES), st.integers(0, 2**32))
def test_random_pairing_bilinear_and_dual(A, seed):
    P = KummerPairing.random_perfect(A, random.Random(seed))
    rnd = random.Random(seed + 1)
    els = list(A.elements())
    for _ in range(10):
        g, h, b = rnd.choice(els), rnd.choice(els), rnd.choice(els)
        assert P.pair(g + h, b) == (P.pair(g, b) + P.pair(h, b)) % P.modulus
        assert P.pair(b, g + h) == (P.pair(b, g) + P.pair(b, h)) % P.modulus
    for S in enumerate_subgroups(A)[:25]:
        assert S.order * P.annihilator(S).order == A.order
        assert P.annihilator(P.annihilator(S), "left") == S


@pytest.mark.parametrize("spec", ["3:1,1", "5:1,1", "3:2,1", "3:1,1,1"])
def test_co1_symmetric_under_standard_pairing(spec):
    """co1 with the pairing strategy: symmetric wherever both sides are defined."""
    from caplab.orthogonality import OrthogonalityTable
    from caplab.psi_map import PsiError

    psi = PsiMap(T(spec), "pairing-annihilator")
    table = OrthogonalityTable(psi)
    maxi = psi.maximal_elements()
    checked = 0
    for a in maxi:
        for b in maxi:
            try:
                x, y = table(a, b).co1, table(b, a).co1
            except PsiError:
                continue
            checked += 1
            assert x == y, (a, b)
    assert checked


@pytest.mark.parametrize("spec", ["3:1,1", "3:3,1", "5:2,1", "2:2,1,1"])
def test_genset_size_catalog(spec):
    for s in STRATEGIES:
        r = genset_size_audit(PsiMap(T(spec), s))
        assert r.verdict in ("pass", "not-applicable"), r.witness
