"""Values checked against oracles that share no code with the package."""

from __future__ import annotations

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from caplab.group_core import (
    count_subgroups,
    enumerate_subgroups,
    naive_subgroup_count,
    quotient_invariants,
)

from conftest import SMALL_TYPES, T


def sympy_quotient(S) -> list[int]:
    """Nontrivial invariant factors of A/S from the relation lattice diag(moduli) + gens(S)."""
    A = S.owner
    rows = [[n if i == j else 0 for j in range(A.rank)] for i, n in enumerate(A.moduli)]
    rows += [list(g.coords) for g in S.generators()]
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    return sorted((d for d in diag if d > 1), reverse=True)


def gaussian_total(p: int, n: int) -> int:
    """Number of subspaces of F_p^n."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


@pytest.mark.parametrize("A", [A for A in SMALL_TYPES if A.order <= 81], ids=str)
def test_quotients_match_smith_normal_form(A):
    for S in enumerate_subgroups(A)[:60]:
        want = sympy_quotient(S)
        got = quotient_invariants(S)
        assert sorted((A.p**e for e in got.exponents), reverse=True) == want


@pytest.mark.parametrize("p, n", [(2, 1), (2, 4), (2, 6), (2, 9), (3, 4), (3, 6), (5, 3), (5, 4)])
def test_elementary_abelian_counts(p, n):
    assert count_subgroups(T(f"{p}:" + ",".join(["1"] * n))) == gaussian_total(p, n)


# frozen from the closure oracle and cross-checked against published counts
FROZEN = {"2:1,1": 5, "2:2,1": 8, "3:2": 3, "3:2,2": 23, "2:2,2": 15, "3:3,1": 14, "2:1,1,1,1,1,1": 2825,
          "3:1,1,1,1": 212, "5:2,1": 14}


@pytest.mark.parametrize("spec, n", sorted(FROZEN.items()))
def test_frozen_counts(spec, n):
    assert len(enumerate_subgroups(T(spec))) == n
    assert naive_subgroup_count(T(spec)) == n


def test_cyclic_counts():
    for p in (2, 3, 5):
        for m in range(1, 7):
            assert count_subgroups(T(f"{p}:{m}")) == m + 1
