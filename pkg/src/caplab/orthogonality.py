"""Canonical orthogonality a ⊥ a' and the generator-set lemma.

``co``  : a' lies in the complement c(a) (membership form).
``co1`` : <phi(a), b> = 0 for every b in psi_k(<a'>) (pairing form).
Both are computed literally; whether they agree is measured, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois_model import FieldNode
from .group_core import (
    GroupElement,
    GroupError,
    PGroupType,
    Subgroup,
    elem_order,
    member,
    p_height,
    p_rank,
    span,
)
from .pairing import KummerPairing
from .psi_map import STRATEGIES, ComplementStrategy, PsiError, PsiMap
from .reports import ClaimReport, verdict


def radical_of_field(P: KummerPairing, L: FieldNode) -> Subgroup:
    """Kummer radical of L: the annihilator of Gal(H/L); its order is [L:K]."""
    if L.group != P.G:
        raise GroupError("field of a different extension")
    return P.annihilator(L.fixing, "right")


def psi_k(psi: PsiMap, S: Subgroup, P: KummerPairing | None = None) -> Subgroup:
    """radical_of_field(psi(S)); the pairing defaults to the map's own (or the standard one)."""
    P = P or _pairing(psi)
    return radical_of_field(P, psi.psi_subgroup(S).field)


def _pairing(psi: PsiMap) -> KummerPairing:
    return psi.pairing if psi.pairing is not None else KummerPairing.standard(psi.G)


@dataclass(frozen=True)
class Orthogonality:
    a: GroupElement
    a2: GroupElement
    co: bool
    co1: bool
    fields_contained: bool

    @property
    def agree(self) -> bool:
        return self.co == self.co1


class OrthogonalityTable:
    """Cached evaluation of co / co1 over the maximal classes of one PsiMap."""

    def __init__(self, psi: PsiMap, P: KummerPairing | None = None):
        self.psi = psi
        self.P = P or _pairing(psi)
        self._radical: dict[tuple, Subgroup] = {}

    def radical(self, a2: GroupElement) -> Subgroup:
        key = a2.coords
        if key not in self._radical:
            self._radical[key] = psi_k(self.psi, span([a2]), self.P)
        return self._radical[key]

    def __call__(self, a: GroupElement, a2: GroupElement) -> Orthogonality:
        psi = self.psi
        for x in (a, a2):
            if not psi.is_maximal(x):
                raise GroupError(f"{x} is not of maximal order")
        co = member(a2, psi.canonical_complement(a))
        g = psi.phi(a)
        co1 = all(self.P.pair(g, b) == 0 for b in self.radical(a2).generators())
        contained = psi.psi_max(a) <= psi.splitting_field(a2)
        return Orthogonality(a, a2, co, co1, contained)


def is_orthogonal(
    a: GroupElement,
    a2: GroupElement,
    strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED,
    pairing: KummerPairing | None = None,
) -> Orthogonality:
    return OrthogonalityTable(PsiMap(a.owner, strategy, pairing=pairing), pairing)(a, a2)


def _instance(psi: PsiMap, seed: int | None) -> dict:
    d = {"group": str(psi.A), "strategy": psi.strategy.value}
    if psi.strategy is ComplementStrategy.PAIRING:
        d["pairing_seed"] = seed or 0
    if psi.A.p == 2:
        d["p2"] = True
    return d


def orthogonality_properties_audit(psi: PsiMap, seed: int | None = None) -> list[ClaimReport]:
    """OC1 (symmetry of co), OC2 (co <=> co1 and co <=> L_a <= L'_a'), OC3 (co => a' not in <a>).

    Every ordered pair of maximal classes is evaluated; pairs where a
    complement is undefined are counted and skipped.
    """
    inst = _instance(psi, seed)
    table = OrthogonalityTable(psi)
    maxi = psi.maximal_elements()
    res: dict[tuple, Orthogonality] = {}
    undefined = 0
    for a in maxi:
        for a2 in maxi:
            try:
                res[a.coords, a2.coords] = table(a, a2)
            except PsiError:
                undefined += 1
    pairs = len(res)
    outside = sum(1 for r in res.values() if not member(r.a2, span([r.a])))
    counts = {"pairs": pairs, "pairs_outside_cycle": outside, "undefined": undefined}
    if not res:
        why = "no maximal pair with defined complements" if maxi else "trivial group"
        claims = ("OC1-orth-symmetry", "OC2-co-co1-equivalence", "OC3-orth-excludes-cycle")
        return [ClaimReport(c, inst, "not-applicable", detail=why) for c in claims]

    def first(pred):
        for key in sorted(res):
            if pred(key, res[key]):
                return key
        return None

    asym = first(lambda k, r: (k[1], k[0]) in res and res[k[1], k[0]].co != r.co)
    diseq = first(lambda k, r: not r.agree or r.co != r.fields_contained)
    cyc = first(lambda k, r: r.co and member(r.a2, span([r.a])))

    def report(claim, bad, extra):
        w = None
        if bad is not None:
            r = res[bad]
            w = {"a": list(bad[0]), "a2": list(bad[1]), "co": r.co, "co1": r.co1, **extra(bad, r)}
        return ClaimReport(claim, inst, verdict(bad is None), witness=w, detail=_counts(counts))

    return [
        report("OC1-orth-symmetry", asym, lambda k, r: {"co_reversed": res[k[1], k[0]].co}),
        report("OC2-co-co1-equivalence", diseq, lambda k, r: {"fields_contained": r.fields_contained}),
        report("OC3-orth-excludes-cycle", cyc, lambda k, r: {}),
    ]


def _counts(counts: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in counts.items())


@dataclass(frozen=True)
class OrthogonalSet:
    members: tuple[GroupElement, ...]
    steps: tuple[Subgroup, ...]
    generates: bool | None
    pairwise: dict
    error: str = ""


def maximal_orthogonal_set(psi: PsiMap) -> OrthogonalSet:
    """Greedy construction from the generator-set lemma.

    Start with S = A; pick the lexicographically first element a of order
    exponent(S) in S whose complement the strategy can build, replace S by
    that complement of <a> inside S (the part fixing the compositum of the
    chosen L_a), and repeat until S is trivial.  For the first member this
    complement is c(a) itself.
    """
    A = psi.A
    S = A.whole()
    members: list[GroupElement] = []
    steps: list[Subgroup] = [S]
    error = ""
    while S.order > 1:
        # first candidate whose complement the strategy can build (the pairing rule may refuse some)
        refusals = []
        for a in sorted((g for g in S.elements() if elem_order(g) == S.exponent), key=lambda g: g.coords):
            try:
                C = psi.complement_in(S, a)
            except PsiError as exc:
                refusals.append(str(exc))
                continue
            break
        else:
            error = f"no admissible element in a subgroup of order {S.order}: {refusals[0]}"
            break
        members.append(a)
        S = C
        steps.append(S)
    gen = None
    if members and all(p_height(x) == 0 for x in members):
        gen = span(members, A).order == A.order
    # pairwise co1 where both members are of maximal order in A
    table = OrthogonalityTable(psi)
    pairwise = {"checked": 0, "orthogonal": 0, "undefined": 0}
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if not (psi.is_maximal(x) and psi.is_maximal(y)):
                pairwise["undefined"] += 1
                continue
            try:
                ok = table(x, y).co1 and table(y, x).co1
            except PsiError:
                pairwise["undefined"] += 1
                continue
            pairwise["checked"] += 1
            pairwise["orthogonal"] += int(ok)
    return OrthogonalSet(tuple(members), tuple(steps), gen, pairwise, error)


def genset_size_audit(psi: PsiMap, seed: int | None = None) -> ClaimReport:
    """GS1: the greedy set reaches p-rank many members.

    If the strategy refuses every candidate at some step the greedy run is
    not defined, so the verdict is not-applicable (with the stall as witness).
    """
    inst = _instance(psi, seed)
    r = p_rank(psi.A)
    res = maximal_orthogonal_set(psi)
    witness = {
        "members": [list(x.coords) for x in res.members],
        "p_rank": r,
        "generates": res.generates,
        "pairwise": res.pairwise,
    }
    if res.error:
        return ClaimReport("GS1-genset-size", inst, "not-applicable", witness=witness, detail=res.error)
    ok = len(res.members) == r
    return ClaimReport(
        "GS1-genset-size",
        inst,
        verdict(ok),
        witness=None if ok else witness,
        detail=f"{len(res.members)} members, generates={res.generates}",
    )


def genset_counterexample(p: int) -> ClaimReport:
    """On (Z/p)^2: a ⊥ a' but the generating pair {a, a + a'} is not orthogonal.

    Evaluated under every strategy whose complements exist for a, a' and b;
    reproduced iff it holds under each of them.
    """
    A = PGroupType(p, (1, 1))
    a, a2 = A.elem(1, 0), A.elem(0, 1)
    b = a + a2
    gens_min = span([a, b]).order == A.order and span([a]).order < A.order and span([b]).order < A.order
    rows = {}
    for strategy in STRATEGIES:
        psi = PsiMap(A, strategy)
        table = OrthogonalityTable(psi)
        try:
            orth = table(a, a2)
            bad = table(a, b)
        except PsiError as exc:
            rows[strategy.value] = {"defined": False, "reason": str(exc)}
            continue
        rows[strategy.value] = {
            "defined": True,
            "a_perp_a2": orth.co and orth.co1,
            "a_perp_b_co1": bad.co1,
            "a_perp_b_co": bad.co,
        }
    defined = [v for v in rows.values() if v["defined"]]
    ok = gens_min and bool(defined) and all(v["a_perp_a2"] and not v["a_perp_b_co1"] for v in defined)
    inst = {"group": str(A)}
    if p == 2:
        inst["p2"] = True
    return ClaimReport(
        "GS2-genset-counterexample",
        inst,
        verdict(ok),
        witness={"a": [1, 0], "a2": [0, 1], "b": [1, 1], "minimal_generating": gens_min, "strategies": rows},
    )
