"""Group-theoretic capitulation: Gamma models Gal(H2/K), transfer models the lift of classes.

Subfields K <= L <= H correspond to subgroups Gamma' <= Delta <= Gamma; the
capitulation map C(K) -> C(L) is the transfer Gamma/Gamma' -> Delta/Delta'.
Groups are Cayley tables with identity at index 0 and the product
``table[a, b] = a*b``.  Permutations act on the right: ``(x)(gh) = ((x)g)h``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Sequence

import numpy as np

from . import _kernels
from .galois_model import FieldNode
from .group_core import (
    GroupElement,
    GroupError,
    PGroupType,
    Subgroup,
    elem_order,
    enumerate_subgroups,
    hom_apply,
    hom_kernel,
    intersect,
    iter_hnf_blocks,
    member,
    span,
)
from .psi_map import ComplementStrategy, PsiError, PsiMap
from .reports import ClaimReport, verdict

DEFAULT_GROUP_BOUND = 512


class TransferError(GroupError):
    pass


def _prime_of(n: int) -> int | None:
    """p if n is a power of the prime p (n > 1), else None."""
    if n <= 1:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


@dataclass(frozen=True)
class SubgroupT:
    """Subgroup of a FiniteGroup as a sorted tuple of element indices."""

    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __le__(self, other: SubgroupT) -> bool:
        return self._set <= other._set


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(
        self,
        table: np.ndarray,
        name: str = "",
        labels: Sequence[Hashable] | None = None,
        generators: Sequence[int] = (),
        bound: int = DEFAULT_GROUP_BOUND,
        check_associativity: bool = True,
    ):
        table = np.ascontiguousarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise GroupError("multiplication table must be square and nonempty")
        if n > bound:
            raise GroupError(f"group order {n} exceeds the bound {bound}")
        self.table = table
        self.n = n
        self.name = name or f"G{n}"
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.generators = tuple(generators)
        ident = np.arange(n)
        if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
            raise GroupError("index 0 is not a two-sided identity")
        for row in table:
            if len(set(row.tolist())) != n:
                raise GroupError("table rows are not permutations (no Latin square)")
        inv = np.argmax(table == 0, axis=1)
        if not np.all(table[ident, inv] == 0) or not np.all(table[inv, ident] == 0):
            raise GroupError("some element has no inverse")
        self.inv = inv.astype(np.int64)
        if check_associativity:
            a, b, c = _kernels.associativity_failure(table)
            if a >= 0:
                raise GroupError(f"not associative at ({a}, {b}, {c})")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order {self.n})"

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_function(
        cls,
        elements: Sequence[Hashable],
        mul: Callable[[Hashable, Hashable], Hashable],
        name: str = "",
        **kw,
    ) -> FiniteGroup:
        """Table from an explicit element list; elements[0] must be the identity."""
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise GroupError("duplicate elements")
        n = len(elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                c = mul(a, b)
                if c not in index:
                    raise GroupError(f"product {a}*{b} = {c} leaves the set")
                table[i, j] = index[c]
        return cls(table, name=name, labels=elements, **kw)

    @classmethod
    def from_permutations(
        cls, gens: Sequence[Sequence[int]], name: str = "", bound: int = DEFAULT_GROUP_BOUND
    ) -> FiniteGroup:
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise GroupError("need at least one generator")
        deg = len(gens[0])
        for g in gens:
            if len(g) != deg or sorted(g) != list(range(deg)):
                raise GroupError(f"{g} is not a permutation of 0..{deg - 1}")
        ident = tuple(range(deg))
        elems = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elems):
            x = elems[i]
            for g in gens:
                y = tuple(g[x[t]] for t in range(deg))
                if y not in index:
                    if len(elems) >= bound:
                        raise GroupError(f"generated group exceeds the bound {bound}")
                    index[y] = len(elems)
                    elems.append(y)
            i += 1
        P = np.array(elems, dtype=np.int64)
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            comp = P[:, P[a]]  # row b: x -> b(a(x)), i.e. a*b with right action
            for b in range(n):
                table[a, b] = index[tuple(comp[b].tolist())]
        gen_idx = [index[g] for g in gens]
        # permutation composition is associative; the table is still checked
        return cls(table, name=name, labels=elems, generators=gen_idx, bound=bound)

    @classmethod
    def from_abelian_type(cls, A: PGroupType, check_associativity: bool = True) -> FiniteGroup:
        """Additive table of A with elements in A's lexicographic order."""
        coords = np.array([g.coords for g in A.elements()], dtype=np.int64).reshape(A.order, A.rank)
        strides = np.array(A._strides, dtype=np.int64)
        table = np.zeros((A.order, A.order), dtype=np.int64)
        for c, q in enumerate(A.moduli):
            table += ((coords[:, None, c] + coords[None, :, c]) % q) * strides[c]
        G = cls(
            table,
            name=f"ab({A})",
            labels=[tuple(r) for r in coords.tolist()],
            generators=[A.index_of(b) for b in A.basis()],
            bound=max(A.order, DEFAULT_GROUP_BOUND),
            check_associativity=check_associativity,
        )
        G.abelian_type = A
        return G

    # -- elementary structure -----------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, g: int, e: int) -> int:
        x = 0
        for _ in range(e % self.element_order(g)):
            x = int(self.table[x, g])
        return x

    def element_order(self, g: int) -> int:
        x, o = g, 1
        while x != 0:
            x = int(self.table[x, g])
            o += 1
        return o

    def commutator(self, a: int, b: int) -> int:
        inv = self.inv
        return int(self.table[self.table[inv[a], inv[b]], self.table[a, b]])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def prime(self) -> int | None:
        return _prime_of(self.n)

    def closure(self, gens: Sequence[int]) -> SubgroupT:
        seen = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return SubgroupT(tuple(sorted(seen)))

    def is_subgroup(self, elements: Sequence[int]) -> bool:
        s = set(elements)
        if 0 not in s:
            return False
        return all(int(self.table[a, b]) in s for a in s for b in s)

    def subgroup(self, elements: Sequence[int]) -> SubgroupT:
        if not self.is_subgroup(elements):
            raise GroupError("element set is not closed under the product")
        return SubgroupT(tuple(sorted(set(int(x) for x in elements))))

    def whole(self) -> SubgroupT:
        return SubgroupT(tuple(range(self.n)))

    @cached_property
    def derived(self) -> SubgroupT:
        return self.closure([self.commutator(a, b) for a in range(self.n) for b in range(a + 1, self.n)])

    def restrict(self, S: SubgroupT) -> tuple[FiniteGroup, dict[int, int]]:
        """S as a FiniteGroup (elements renumbered in sorted order) and the index map."""
        elems = list(S.elements)
        local = {g: i for i, g in enumerate(elems)}
        sub = self.table[np.ix_(elems, elems)]
        table = np.vectorize(local.__getitem__, otypes=[np.int64])(sub) if len(elems) > 1 else np.zeros((1, 1))
        H = FiniteGroup(table, name=f"{self.name}|{len(elems)}", labels=[self.labels[g] for g in elems],
                        check_associativity=False)
        return H, local

    @cached_property
    def abelianization(self) -> Abelianization:
        return Abelianization.compute(self)


def all_subgroups(G: FiniteGroup) -> list[SubgroupT]:
    """Every subgroup, by closing the cyclic subgroups under joins; sorted by (order, elements)."""
    cyclic = {G.closure([g]) for g in range(G.n)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic:
                if C <= S:
                    continue
                T = G.closure(list(S.elements) + [C.elements[1]])
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(found, key=lambda S: (S.order, S.elements))


def derived_subgroup(G: FiniteGroup) -> SubgroupT:
    return G.derived


def abelianization(G: FiniteGroup) -> Abelianization:
    return G.abelianization


@dataclass(frozen=True, eq=False)
class Abelianization:
    """Gamma/Gamma' in invariant-factor coordinates.

    ``coords[g]`` are the coordinates of the class of g; ``lifts[i]`` is an
    element of Gamma mapping to the i-th basis vector.  ``type`` is None when
    the quotient is not a p-group.
    """

    group: FiniteGroup
    derived: SubgroupT
    order: int
    type: PGroupType | None
    coords: np.ndarray | None
    lifts: tuple[int, ...]

    @classmethod
    def compute(cls, G: FiniteGroup) -> Abelianization:
        D = G.derived
        n = G.n
        label = np.empty(n, dtype=np.int64)
        rmin = np.empty(n, dtype=np.int64)
        rmax = np.empty(n, dtype=np.int64)
        delta = np.array(D.elements, dtype=np.int64)
        nq = _kernels.right_cosets(G.table, delta, len(delta), label, rmin, rmax)
        p = _prime_of(nq)
        if nq == 1:
            p = G.prime or 2
            return cls(G, D, 1, PGroupType(p), np.zeros((n, 0), dtype=np.int64), ())
        if p is None:
            return cls(G, D, nq, None, None, ())
        reps = rmin[:nq]
        Q = label[G.table[np.ix_(reps, reps)]]
        basis, exps = _abelian_basis(Q, p)
        A = PGroupType(p, tuple(exps))
        qcoords = np.full((nq, len(basis)), -1, dtype=np.int64)
        for cs in itertools.product(*(range(p**e) for e in exps)):
            x = 0
            for b, c in zip(basis, cs):
                for _ in range(c):
                    x = Q[x, b]
            if qcoords[x, 0] >= 0:
                raise GroupError("abelianization basis is not independent")
            qcoords[x] = cs
        if (qcoords < 0).any():
            raise GroupError("abelianization basis does not span")
        return cls(G, D, nq, A, qcoords[label], tuple(int(reps[b]) for b in basis))

    @property
    def is_p_group(self) -> bool:
        return self.type is not None

    def _need_type(self) -> PGroupType:
        if self.type is None:
            raise TransferError(f"abelianization of {self.group.name} (order {self.order}) is not a p-group")
        return self.type

    def project(self, g: int) -> GroupElement:
        A = self._need_type()
        return GroupElement(A, tuple(int(x) for x in self.coords[g]), _reduced=True)

    def preimage(self, S: Subgroup) -> SubgroupT:
        A = self._need_type()
        if S.owner != A:
            raise GroupError("subgroup of a different group")
        return SubgroupT(tuple(g for g in range(self.group.n) if self.project(g) in S))


def _abelian_basis(Q: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    """Basis of an abelian p-group table by max order modulo the span so far, then a lift of equal order."""
    nq = Q.shape[0]

    def order_mod(g: int, S: set[int]) -> int:
        x, o = g, 1
        while x not in S:
            x = Q[x, g]
            o += 1
        return o

    S = {0}
    basis, exps = [], []
    while len(S) < nq:
        best, bo = -1, 0
        for g in range(nq):
            o = order_mod(g, S)
            if o > bo:
                best, bo = g, o
        lift = next(int(Q[best, s]) for s in sorted(S) if order_mod(int(Q[best, s]), {0}) == bo)
        basis.append(lift)
        exps.append(round(math.log(bo, p)))
        new = set(S)
        x = lift
        while x not in S:
            new |= {int(Q[x, s]) for s in S}
            x = Q[x, lift]
        S = new
    return basis, exps


@dataclass(frozen=True)
class TransferMap:
    """Ver: Gamma/Gamma' -> Delta/Delta' on the basis of the source abelianization."""

    source: PGroupType
    target: PGroupType
    images: tuple[GroupElement, ...]
    transversal: tuple[int, ...]
    index: int

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(img.coords for img in self.images)

    def __call__(self, a: GroupElement) -> GroupElement:
        if a.owner != self.source:
            raise GroupError("class of a different group")
        return hom_apply(self.images, a, self.target)

    def kernel(self) -> Subgroup:
        return hom_kernel(self.source, self.target, list(self.images))

    @property
    def is_trivial(self) -> bool:
        return not any(self.images)


@dataclass(frozen=True)
class _Cosets:
    label: np.ndarray
    rep_min: np.ndarray
    rep_max: np.ndarray
    count: int


def _right_cosets(G: FiniteGroup, D: SubgroupT) -> _Cosets:
    n = G.n
    label = np.empty(n, dtype=np.int64)
    rmin = np.empty(n, dtype=np.int64)
    rmax = np.empty(n, dtype=np.int64)
    delta = np.array(D.elements, dtype=np.int64)
    c = _kernels.right_cosets(G.table, delta, len(delta), label, rmin, rmax)
    return _Cosets(label, rmin[:c].copy(), rmax[:c].copy(), c)


def ver_element(G: FiniteGroup, cos: _Cosets, reps: np.ndarray, g: int) -> int:
    """The transfer product for g as an element of Delta (an index of G)."""
    return int(_kernels.transfer_value(G.table, G.inv, cos.label, reps, cos.count, g))


def transfer(G: FiniteGroup, D: SubgroupT, verify: bool = True) -> TransferMap:
    """Ver: G/G' -> D/D' over the transversal of minimal coset elements.

    With ``verify`` the images are recomputed with the maximal-element
    transversal and the map is checked on every element of G against the
    basis images (homomorphism and independence of the lift).
    """
    if not G.is_subgroup(D.elements):
        raise TransferError("Delta is not closed under the product")
    AG = G.abelianization
    src = AG._need_type()
    cos = _right_cosets(G, D)
    H, local = G.restrict(D)
    AH = H.abelianization
    tgt = AH._need_type()
    if tgt.p != src.p and tgt.order > 1:
        raise TransferError("source and target abelianizations have different primes")
    if tgt.order == 1:
        tgt = PGroupType(src.p)

    def image(g: int, reps: np.ndarray) -> GroupElement:
        v = ver_element(G, cos, reps, g)
        return GroupElement(tgt, tuple(int(x) for x in AH.coords[local[v]]), _reduced=True)

    images = tuple(image(g, cos.rep_min) for g in AG.lifts)
    T = TransferMap(src, tgt, images, tuple(int(x) for x in cos.rep_min), cos.count)
    if verify:
        second = tuple(image(g, cos.rep_max) for g in AG.lifts)
        if second != images:
            raise TransferError("transfer depends on the transversal")
        for g in range(G.n):
            if image(g, cos.rep_min) != T(AG.project(g)):
                raise TransferError(f"transfer is not a homomorphism on G/G' (element {g})")
    return T


def transversal_independent(G: FiniteGroup, D: SubgroupT) -> bool:
    """Min- and max-element transversals give the same image in D/D' for every g."""
    cos = _right_cosets(G, D)
    H, local = G.restrict(D)
    AH = H.abelianization
    for g in range(G.n):
        a = ver_element(G, cos, cos.rep_min, g)
        b = ver_element(G, cos, cos.rep_max, g)
        if a != b and not np.array_equal(AH.coords[local[a]], AH.coords[local[b]]):
            return False
    return True


def capitulation_kernel(G: FiniteGroup, D: SubgroupT) -> Subgroup:
    if not G.derived <= D:
        raise TransferError("capitulation needs Gamma' <= Delta")
    return transfer(G, D).kernel()


def admissible_deltas(G: FiniteGroup) -> list[tuple[Subgroup, SubgroupT]]:
    """Every Delta with Gamma' <= Delta <= Gamma, indexed by Delta/Gamma' in Sub(Gamma/Gamma')."""
    AG = G.abelianization
    A = AG._need_type()
    return [(S, AG.preimage(S)) for S in enumerate_subgroups(A, bound=max(A.order, 729))]


# ---------------------------------------------------------------------------
# audits


def finite_instance(G: FiniteGroup, **extra) -> dict:
    d = {"group": G.name, "order": G.n}
    if G.prime == 2:
        d["p2"] = True
    d.update(extra)
    return d


def miyake_audit(G: FiniteGroup) -> ClaimReport:
    """[Gamma:Delta] divides |ker Ver| for every admissible Delta."""
    if not G.abelianization.is_p_group:
        return ClaimReport("MY1-miyake", finite_instance(G), "not-applicable", detail="abelianization not a p-group")
    checked = 0
    for S, D in admissible_deltas(G):
        idx = G.n // D.order
        K = capitulation_kernel(G, D)
        checked += 1
        if K.order % idx:
            return ClaimReport(
                "MY1-miyake",
                finite_instance(G),
                "fail",
                witness={"delta_mod_derived": _sub_json(S), "index": idx, "kernel_order": K.order},
                detail=f"{checked} subgroups checked before failure",
            )
    return ClaimReport("MY1-miyake", finite_instance(G), "pass", detail=f"{checked} admissible subgroups")


def pit_audit(G: FiniteGroup) -> ClaimReport:
    """Transfer Gamma -> Gamma' is trivial (Furtwangler)."""
    AG = G.abelianization
    if not AG.is_p_group:
        return ClaimReport("PIT1-principal-ideal", finite_instance(G), "not-applicable", detail="abelianization not a p-group")
    D = G.derived
    H, _ = G.restrict(D)
    metabelian = H.derived.order == 1
    T = transfer(G, D)
    inst = finite_instance(G, metabelian=metabelian)
    if T.is_trivial:
        return ClaimReport("PIT1-principal-ideal", inst, "pass", detail=f"|Gamma'| = {D.order}")
    bad = [i for i, img in enumerate(T.images) if img]
    return ClaimReport(
        "PIT1-principal-ideal",
        inst,
        "fail",
        witness={"basis_index": bad[0], "image": list(T.images[bad[0]].coords)},
    )


def psi_vs_transfer_audit(
    G: FiniteGroup, strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED
) -> list[ClaimReport]:
    """TC4 and LO1 for every maximal class a of Gamma/Gamma' (phi = identity).

    TC4: a lies in ker(Gamma -> Delta_a), Delta_a the preimage of c(a).
    LO1: the transfer of a into Delta'_a, the preimage of <a>, keeps ord(a).
    A failure is a counterexample inside the group model only.
    """
    strategy = ComplementStrategy(strategy)
    AG = G.abelianization
    out: list[ClaimReport] = []
    if not AG.is_p_group or AG.order == 1:
        why = "abelianization not a p-group" if not AG.is_p_group else "trivial abelianization"
        for claim in ("TC4-capitulation-transfer", "LO1-lift-order"):
            out.append(ClaimReport(claim, finite_instance(G, strategy=strategy.value), "not-applicable", detail=why))
        return out
    A = AG.type
    psi = PsiMap(A, strategy)
    for a in psi.maximal_elements():
        inst = finite_instance(G, strategy=strategy.value, a=list(a.coords))
        try:
            C = psi.canonical_complement(a)
        except PsiError as exc:
            out.append(ClaimReport("TC4-capitulation-transfer", inst, "not-applicable", detail=str(exc)))
        else:
            K = capitulation_kernel(G, AG.preimage(C))
            ok = member(a, K)
            out.append(
                ClaimReport(
                    "TC4-capitulation-transfer",
                    inst,
                    verdict(ok),
                    witness=None if ok else {"complement": _sub_json(C), "kernel": _sub_json(K)},
                    detail="model counterexample" if not ok else "",
                )
            )
        T = transfer(G, AG.preimage(span([a])))
        o, o_img = elem_order(a), elem_order(T(a))
        ok = o == o_img
        out.append(
            ClaimReport(
                "LO1-lift-order",
                inst,
                verdict(ok),
                witness=None if ok else {"order": o, "lift_order": o_img},
                detail="model counterexample" if not ok else "",
            )
        )
    return out


def fr_quotient_report(
    G: FiniteGroup, strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED
) -> ClaimReport:
    """|K_L| / |psi^-1(L) cap K_L| for every admissible Delta; data only, never pass/fail."""
    strategy = ComplementStrategy(strategy)
    AG = G.abelianization
    if not AG.is_p_group:
        return ClaimReport("FR1-fr-quotient", finite_instance(G), "not-applicable", detail="abelianization not a p-group")
    psi = PsiMap(AG.type, strategy)
    rows = []
    for S, D in admissible_deltas(G):
        K = capitulation_kernel(G, D)
        L = FieldNode(S)
        try:
            pre = psi.psi_inverse(L)
        except PsiError:
            rows.append({"fixing": _sub_json(S), "kernel_order": K.order, "quotient": None})
            continue
        rows.append(
            {"fixing": _sub_json(S), "kernel_order": K.order, "quotient": K.order // intersect(pre, K).order}
        )
    return ClaimReport(
        "FR1-fr-quotient",
        finite_instance(G, strategy=strategy.value),
        "not-applicable",
        witness={"rows": rows},
        detail="exploratory: the unit side of (fr) is not modelled",
    )


def _sub_json(S: Subgroup) -> list[list[int]]:
    return [list(g.coords) for g in S.generators()]


# ---------------------------------------------------------------------------
# exhaustive abelian sweep


@dataclass
class AbelianSweep:
    type: PGroupType
    subgroups: int = 0
    elementwise: bool = True
    elementwise_sampled: int = 0
    transfers: int = 0
    power_failures: int = 0
    transversal_failures: int = 0
    miyake_failures: int = 0
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.power_failures or self.transversal_failures or self.miyake_failures)


def abelian_transfer_sweep(
    A: PGroupType, elementwise_max: int = 128, sample: int = 1000, seed: int = 0, block: int = 1 << 14
) -> AbelianSweep:
    """Transfer against the index-power map for every subgroup Delta of A.

    Element-wise for |A| <= ``elementwise_max``.  Above that, the basis is
    transferred for every Delta (kernel size from the span of the images) and
    a seeded sample of ``sample`` subgroups is additionally checked element-wise.
    """
    G = FiniteGroup.from_abelian_type(A)
    coords = np.array([g.coords for g in A.elements()], dtype=np.int64).reshape(A.order, A.rank)
    moduli = np.array(A.moduli, dtype=np.int64)
    strides = np.array(A._strides, dtype=np.int64)
    basis = np.array(G.generators, dtype=np.int64)
    out = AbelianSweep(A, elementwise=A.order <= elementwise_max)
    stats = np.zeros(5, dtype=np.int64)
    first = np.full(3, -1, dtype=np.int64)
    rng = np.random.default_rng(seed)
    # seeded sample in one pass: keep the subgroups with the smallest random keys
    keep_keys = np.zeros(0)
    keep = np.zeros((0, A.rank, A.rank), dtype=np.int64)
    for blk in iter_hnf_blocks(A, block):
        before = stats[:3].copy()
        first[:] = -1
        _kernels.abelian_transfer_sweep(
            G.table, G.inv, coords, moduli, strides, basis, blk, len(blk), out.elementwise, stats, first
        )
        for c, name in enumerate(("power", "transversal", "miyake")):
            if stats[c] > before[c] and name not in out.witness:
                out.witness[name] = blk[first[c]].tolist()
        if not out.elementwise and sample:
            keys = np.concatenate([keep_keys, rng.random(len(blk))])
            pool = np.concatenate([keep, blk])
            order = np.argpartition(keys, sample)[:sample] if len(keys) > sample else np.arange(len(keys))
            order.sort()
            keep_keys, keep = keys[order], pool[order]
    if len(keep):
        before = stats[:3].copy()
        first[:] = -1
        keep = np.ascontiguousarray(keep)
        _kernels.abelian_transfer_sweep(
            G.table, G.inv, coords, moduli, strides, basis, keep, len(keep), True, stats, first
        )
        stats[3] -= len(keep)
        out.elementwise_sampled = len(keep)
        for c, name in enumerate(("power", "transversal", "miyake")):
            if stats[c] > before[c] and name not in out.witness:
                out.witness[name] = keep[first[c]].tolist()
    out.subgroups = int(stats[3])
    out.transfers = int(stats[4])
    out.power_failures, out.transversal_failures, out.miyake_failures = (int(x) for x in stats[:3])
    return out


# ---------------------------------------------------------------------------
# catalog


def _semidirect(n: int, m: int, r: int, name: str) -> FiniteGroup:
    """Z/n x| Z/m with y x y^-1 = x^r, elements (x, y)."""
    elems = [(x, y) for y in range(m) for x in range(n)]

    def mul(a, b):
        return ((a[0] + pow(r, a[1], n) * b[0]) % n, (a[1] + b[1]) % m)

    return FiniteGroup.from_function(elems, mul, name=name)


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p, elements (a, b, c)."""
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return FiniteGroup.from_function(elems, mul, name=f"He{p**3}")


def dihedral8() -> FiniteGroup:
    return FiniteGroup.from_permutations([(1, 2, 3, 0), (0, 3, 2, 1)], name="D8")


def quaternion8() -> FiniteGroup:
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    elems = [u for u in units] + [tuple(-x for x in u) for u in units]

    def mul(a, b):
        a1, b1, c1, d1 = a
        a2, b2, c2, d2 = b
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    return FiniteGroup.from_function(elems, mul, name="Q8")


NONABELIAN = {
    "D8": dihedral8,
    "Q8": quaternion8,
    "M16": lambda: _semidirect(8, 2, 5, "M16"),
    "He27": lambda: heisenberg(3),
    "Ex27": lambda: _semidirect(9, 3, 4, "Ex27"),
    "He125": lambda: heisenberg(5),
}


def catalog_group(name: str) -> FiniteGroup:
    """A named catalog group, a ``p:e1,...`` abelian type, or a permutation file."""
    if name in NONABELIAN:
        return NONABELIAN[name]()
    if ":" in name and not Path(name).exists():
        return FiniteGroup.from_abelian_type(PGroupType.parse(name))
    return load_permutation_file(name)


def load_permutation_file(path: str | Path, bound: int = DEFAULT_GROUP_BOUND) -> FiniteGroup:
    """Header ``perm n``, then one generator per line as n space-separated images of 0..n-1."""
    path = Path(path)
    lines = [ln.split("#")[0].strip() for ln in path.read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GroupError(f"{path}: empty group file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "perm" or not head[1].isdigit():
        raise GroupError(f"{path}: header must be 'perm n'")
    deg = int(head[1])
    gens = []
    for ln in lines[1:]:
        try:
            g = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise GroupError(f"{path}: bad permutation line {ln!r}") from exc
        if len(g) != deg or sorted(g) != list(range(deg)):
            raise GroupError(f"{path}: {ln!r} is not a permutation of 0..{deg - 1}")
        gens.append(g)
    return FiniteGroup.from_permutations(gens, name=path.stem, bound=bound)


def parse_delta(G: FiniteGroup, spec: str) -> SubgroupT:
    """``derived``, ``whole``, or comma-separated generator indices."""
    spec = spec.strip()
    if spec == "derived":
        return G.derived
    if spec == "whole":
        return G.whole()
    try:
        gens = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        raise GroupError(f"bad subgroup spec {spec!r}") from exc
    if any(not 0 <= g < G.n for g in gens):
        raise GroupError("generator index out of range")
    return G.closure(gens)

