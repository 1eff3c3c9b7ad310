"""Claim audits over the catalog: one function per family of claim ids.

Every audit returns ClaimReports in a fixed order so that serial and
parallel suite runs assemble byte-identical files.
"""

from __future__ import annotations

import random
from typing import Callable

from .galois_model import ArtinIso, FieldNode, field_join, field_meet, fixed_field
from .group_core import (
    DEFAULT_ENUM_BOUND,
    PGroupType,
    Subgroup,
    elem_order,
    enumerate_subgroups,
    intersect,
    is_complement,
    join,
    member,
    p_height,
    span,
)
from .orthogonality import genset_counterexample, genset_size_audit, orthogonality_properties_audit
from .pairing import KummerPairing
from .psi_map import ComplementStrategy, PairingComplementError, PsiError, PsiMap, find_complement
from .reports import ClaimReport, verdict
from .transfer_capitulation import (
    NONABELIAN,
    FiniteGroup,
    abelian_transfer_sweep,
    all_subgroups,
    catalog_group,
    finite_instance,
    fr_quotient_report,
    miyake_audit,
    pit_audit,
    psi_vs_transfer_audit,
    transversal_independent,
)

PAIR_EXHAUSTIVE = 60  # all ordered pairs of subgroups below this lattice size
PAIR_SAMPLE = 1500
FR_ABELIAN_MAX = 32  # the (fr) data table is only tabulated for small abelian Gamma


def _sub_json(S: Subgroup) -> list[list[int]]:
    return [list(g.coords) for g in S.generators()]


def make_psi(A: PGroupType, strategy: ComplementStrategy | str, pairing_seed: int = 0,
             phi: ArtinIso | None = None, bound: int = DEFAULT_ENUM_BOUND) -> PsiMap:
    """Pairing seed 0 is the standard pairing; other seeds draw a random perfect pairing."""
    strategy = ComplementStrategy(strategy)
    P = None
    if strategy is ComplementStrategy.PAIRING:
        P = KummerPairing.standard(A) if not pairing_seed else KummerPairing.random_perfect(
            A, random.Random(pairing_seed))
    return PsiMap(A, strategy, phi=phi, pairing=P, bound=bound)


def psi_instance(psi: PsiMap, seed: int = 0, **extra) -> dict:
    d = {"group": str(psi.A), "strategy": psi.strategy.value}
    if psi.strategy is ComplementStrategy.PAIRING:
        d["pairing_seed"] = seed
    if psi.A.p == 2:
        d["p2"] = True
    d.update(extra)
    return d


def group_instance(A: PGroupType, **extra) -> dict:
    d = {"group": str(A)}
    if A.p == 2:
        d["p2"] = True
    d.update(extra)
    return d


def subgroup_pairs(n: int, seed: int = 0) -> list[tuple[int, int]]:
    """All ordered pairs below PAIR_EXHAUSTIVE subgroups, else a seeded sample."""
    if n <= PAIR_EXHAUSTIVE:
        return [(i, j) for i in range(n) for j in range(n)]
    rng = random.Random(seed)
    return sorted({(rng.randrange(n), rng.randrange(n)) for _ in range(PAIR_SAMPLE)})


# ---------------------------------------------------------------------------
# psi family: bijectivity, order, (cint), degree/generation


def theorem_audits(psi: PsiMap, seed: int = 0) -> list[ClaimReport]:
    """TC1 (bijective and order preserving), TC2 (meets and joins), TC3 (degree and generation)."""
    inst = psi_instance(psi, seed)
    subs = psi.subgroups
    table = psi.forward_table
    undefined = [S for S in subs if not isinstance(table[S], FieldNode)]
    seen: dict[FieldNode, Subgroup] = {}
    collision = None
    for S in subs:
        L = table[S]
        if isinstance(L, FieldNode):
            if L in seen and collision is None:
                collision = (seen[L], S)
            seen.setdefault(L, S)
    pairs = subgroup_pairs(len(subs), seed)
    exhaustive = len(subs) <= PAIR_EXHAUSTIVE

    def field(S):
        L = table.get(S)
        return L if isinstance(L, FieldNode) else None

    order_bad = None
    meet_bad = join_bad = None
    checked = skipped = 0
    for i, j in pairs:
        S, T = subs[i], subs[j]
        M, J = intersect(S, T), join(S, T)
        fs, ft, fm, fj = field(S), field(T), field(M), field(J)
        for lo, hi, flo, fhi in ((S, J, fs, fj), (M, S, fm, fs)):
            if order_bad is None and flo is not None and fhi is not None and not flo <= fhi:
                order_bad = (lo, hi)
        if None in (fs, ft, fm, fj):
            skipped += 1
            continue
        checked += 1
        if meet_bad is None and fm != field_meet(fs, ft):
            meet_bad = (S, T)
        if join_bad is None and fj != field_join(fs, ft):
            join_bad = (S, T)

    ok1 = not undefined and collision is None and order_bad is None
    w1 = None
    if not ok1:
        w1 = {
            "undefined": len(undefined),
            "first_undefined": _sub_json(undefined[0]) if undefined else None,
            "collision": [_sub_json(x) for x in collision] if collision else None,
            "order_violation": [_sub_json(x) for x in order_bad] if order_bad else None,
        }
    sampling = "all pairs" if exhaustive else f"{len(pairs)} sampled pairs"
    tc1 = ClaimReport(
        "TC1-bijectivity", inst, verdict(ok1), witness=w1,
        detail=f"{len(subs)} subgroups, {len(seen)} distinct fields; order checked on {sampling}",
    )
    if checked == 0:
        tc2 = ClaimReport("TC2-cint", inst, "not-applicable", detail="psi undefined on every pair")
    else:
        ok2 = meet_bad is None and join_bad is None
        w2 = None
        if not ok2:
            w2 = {
                "meet": [_sub_json(x) for x in meet_bad] if meet_bad else None,
                "join": [_sub_json(x) for x in join_bad] if join_bad else None,
            }
        tc2 = ClaimReport("TC2-cint", inst, verdict(ok2), witness=w2,
                          detail=f"{checked} pairs ({sampling}), {skipped} skipped as undefined")

    bad3 = None
    n3 = 0
    for a in psi.maximal_elements():
        try:
            flags = psi.psi_max_flags(a)
        except PsiError:
            continue
        n3 += 1
        if not flags.ok and bad3 is None:
            bad3 = {"a": list(a.coords), "degree_ok": flags.degree_ok, "generation_ok": flags.generation_ok,
                    "disjoint_ok": flags.disjoint_ok}
    for S in subs:
        try:
            r = psi.psi_subgroup(S)
        except PsiError:
            continue
        n3 += 1
        if bad3 is None and (not r.degree_ok or r.generation_ok is False):
            bad3 = {"subgroup": _sub_json(S), "degree": r.field.degree, "order": S.order,
                    "generation_ok": r.generation_ok}
    if n3 == 0:
        tc3 = ClaimReport("TC3-degree-generation", inst, "not-applicable", detail="psi undefined everywhere")
    else:
        tc3 = ClaimReport("TC3-degree-generation", inst, verdict(bad3 is None), witness=bad3,
                          detail=f"{n3} evaluations")
    return [tc1, tc2, tc3]


def independence_audit(psi: PsiMap, seed: int = 0) -> ClaimReport:
    """LI1: psi(<x>) is the same for every maximal class above x."""
    inst = psi_instance(psi, seed)
    checked = undefined = 0
    bad = None
    for x in psi.cyclic_transversal(psi.A.whole()):
        try:
            c = psi.cyclic_audit(x)
        except PsiError:
            undefined += 1
            continue
        checked += 1
        if not c.agree and bad is None:
            bad = {"x": list(x.coords), "candidates": [list(a.coords) for a in c.candidates],
                   "degrees": [L.degree for L in c.candidate_fields],
                   "distinct_fields": len(set(c.candidate_fields))}
    if checked == 0:
        return ClaimReport("LI1-lemma-int-independence", inst, "not-applicable", detail="psi undefined")
    return ClaimReport("LI1-lemma-int-independence", inst, verdict(bad is None), witness=bad,
                       detail=f"{checked} cyclic subgroups, {undefined} without a maximal class above")


def hilbert94_audit(psi: PsiMap, seed: int = 0) -> ClaimReport:
    """H94: every cyclic L != K gets a class of order [L:K] in psi^-1(L), generating when L is maximal cyclic."""
    inst = psi_instance(psi, seed)
    checked = 0
    bad = None
    for V in psi._g_subgroups:
        L = fixed_field(V)
        if L.degree == 1 or not L.is_cyclic:
            continue
        checked += 1
        try:
            w = psi.hilbert94_witness(L)
            ok, info = w.ok, {"element": list(w.element.coords), "maximal_cyclic": w.maximal_cyclic,
                              "generates": w.generates}
        except PsiError as exc:
            ok, info = False, {"error": str(exc)}
        if not ok and bad is None:
            bad = {"fixing": _sub_json(V), "degree": L.degree, **info}
    if checked == 0:
        return ClaimReport("H94-hilbert94", inst, "not-applicable", detail="no cyclic subfield")
    return ClaimReport("H94-hilbert94", inst, verdict(bad is None), witness=bad, detail=f"{checked} cyclic fields")


def complement_validity_audit(psi: PsiMap, seed: int = 0) -> ClaimReport:
    """CV1: every complement a strategy returns is a direct complement; adapted mode never refuses."""
    inst = psi_instance(psi, seed)
    n = refused = 0
    bad = None
    for a in psi.maximal_elements():
        try:
            C = psi.canonical_complement(a)
        except PairingComplementError:
            refused += 1
            continue
        except PsiError as exc:
            bad = bad or {"a": list(a.coords), "error": str(exc)}
            continue
        n += 1
        if not is_complement(C, span([a])) and bad is None:
            bad = {"a": list(a.coords), "complement": _sub_json(C)}
    return ClaimReport("CV1-complement-validity", inst, verdict(bad is None), witness=bad,
                       detail=f"{n} complements checked, {refused} refused by the pairing rule")


def abelian_psi_audits(spec: str, strategy: str, pairing_seed: int = 0,
                       bound: int = DEFAULT_ENUM_BOUND) -> list[ClaimReport]:
    """All psi-level audits of one instance; ``bound`` caps |A| for subgroup enumeration."""
    psi = make_psi(PGroupType.parse(spec), strategy, pairing_seed, bound=bound)
    out = theorem_audits(psi, pairing_seed)
    out.append(independence_audit(psi, pairing_seed))
    out.append(hilbert94_audit(psi, pairing_seed))
    out.append(complement_validity_audit(psi, pairing_seed))
    for r in orthogonality_properties_audit(psi, pairing_seed):
        out.append(_with_instance(r, psi_instance(psi, pairing_seed)))
    out.append(_with_instance(genset_size_audit(psi, pairing_seed), psi_instance(psi, pairing_seed)))
    return out


def _with_instance(r: ClaimReport, inst: dict) -> ClaimReport:
    return ClaimReport(r.claim, inst, r.verdict, r.witness, r.detail)


# ---------------------------------------------------------------------------
# complement hypothesis and canonicity


def complement_hypothesis_audit(spec: str) -> ClaimReport:
    """CC1: every class outside A^p spans a direct summand (exhaustive search)."""
    A = PGroupType.parse(spec)
    inst = group_instance(A)
    subs = enumerate_subgroups(A)
    seen = set()
    checked = 0
    for x in sorted(A.elements(), key=lambda g: g.coords):
        if not x or p_height(x) != 0:
            continue
        cyc = span([x])
        if cyc in seen:
            continue
        seen.add(cyc)
        checked += 1
        if find_complement(cyc, subs) is None:
            return ClaimReport(
                "CC1-complement-hypothesis", inst, "fail",
                witness={"element": list(x.coords), "order": elem_order(x), "height": 0,
                         "subgroups_searched": len(subs)},
                detail="hypothesis gap: class outside A^p without a direct complement",
            )
    return ClaimReport("CC1-complement-hypothesis", inst, "pass", detail=f"{checked} cyclic subgroups")


def cc1_replay(spec: str, element: list[int]) -> ClaimReport:
    A = PGroupType.parse(spec)
    x = A.elem(*element)
    inst = group_instance(A)
    subs = enumerate_subgroups(A)
    if not x or p_height(x) != 0:
        return ClaimReport("CC1-complement-hypothesis", inst, "not-applicable", detail="witness lies in A^p")
    C = find_complement(span([x]), subs)
    if C is None:
        return ClaimReport("CC1-complement-hypothesis", inst, "fail",
                           witness={"element": element, "order": elem_order(x), "height": 0,
                                    "subgroups_searched": len(subs)},
                           detail="hypothesis gap: class outside A^p without a direct complement")
    return ClaimReport("CC1-complement-hypothesis", inst, "pass", witness={"complement": _sub_json(C)},
                       detail="witness has a complement")


def _forward(psi: PsiMap) -> dict[Subgroup, FieldNode | None]:
    return {S: (L if isinstance(L, FieldNode) else None) for S, L in psi.forward_table.items()}


def basis_canonicity_audit(spec: str, strategy: str, phi_seed: int) -> ClaimReport:
    """CN1: relabelling A by a random automorphism alpha gives psi_alpha(alpha^-1 S) = psi(S)."""
    A = PGroupType.parse(spec)
    strategy = ComplementStrategy(strategy)
    alpha = ArtinIso.random(A, random.Random(phi_seed))
    base = _forward(make_psi(A, strategy))
    moved = make_psi(A, strategy, phi=alpha)
    back = alpha.inverse
    inst = group_instance(A, strategy=strategy.value, phi_seed=phi_seed)
    if strategy is ComplementStrategy.PAIRING:
        inst["pairing_seed"] = 0
    bad = None
    for S, L in base.items():
        S2 = back.apply_subgroup(S)
        try:
            L2 = moved.psi_subgroup(S2).field
        except PsiError:
            L2 = None
        if L2 != L:
            bad = {"subgroup": _sub_json(S), "alpha": [list(r) for r in alpha.matrix],
                   "defined": [L is not None, L2 is not None]}
            break
    return ClaimReport("CN1-basis-canonicity", inst, verdict(bad is None), witness=bad,
                       detail=f"{len(base)} subgroups")


def pairing_canonicity_audit(spec: str, pairing_seed: int) -> ClaimReport:
    """CN2: the pairing-annihilator psi does not depend on the perfect pairing."""
    A = PGroupType.parse(spec)
    base = _forward(make_psi(A, ComplementStrategy.PAIRING, 0))
    other = _forward(make_psi(A, ComplementStrategy.PAIRING, pairing_seed))
    inst = group_instance(A, pairing_seed=pairing_seed)
    bad = None
    for S in base:
        if base[S] != other[S]:
            bad = {"subgroup": _sub_json(S), "defined": [base[S] is not None, other[S] is not None]}
            break
    return ClaimReport("CN2-pairing-canonicity", inst, verdict(bad is None), witness=bad,
                       detail=f"{len(base)} subgroups")


# ---------------------------------------------------------------------------
# transfer model


def transfer_group(name: str) -> FiniteGroup:
    """Catalog name, ``p:e1,...`` abelian type, or ``ab(p:e1,...)`` as written in reports."""
    if name.startswith("ab(") and name.endswith(")"):
        name = name[3:-1]
    return catalog_group(name)


def transfer_audits(name: str) -> list[ClaimReport]:
    """MY1, PIT1, TR1 and, for abelian Gamma, AB1."""
    G = transfer_group(name)
    inst = finite_instance(G)
    out = []
    A = getattr(G, "abelian_type", None)
    if A is not None:
        sw = abelian_transfer_sweep(A, elementwise_max=A.order)
        detail = f"{sw.subgroups} subgroups, {sw.transfers} transfer evaluations"
        out.append(ClaimReport("MY1-miyake", inst, verdict(not sw.miyake_failures),
                               witness=_sweep_witness(sw, "miyake"), detail=detail))
        out.append(pit_audit(G))
        out.append(ClaimReport("TR1-transversal-independence", inst, verdict(not sw.transversal_failures),
                               witness=_sweep_witness(sw, "transversal"), detail=detail))
        out.append(ClaimReport("AB1-abelian-transfer", inst, verdict(not sw.power_failures),
                               witness=_sweep_witness(sw, "power"), detail=detail))
        return out
    out.append(miyake_audit(G))
    out.append(pit_audit(G))
    subs = all_subgroups(G)
    bad = next((D for D in subs if not transversal_independent(G, D)), None)
    out.append(ClaimReport("TR1-transversal-independence", inst, verdict(bad is None),
                           witness={"delta": list(bad.elements)} if bad else None,
                           detail=f"{len(subs)} subgroups"))
    return out


def _sweep_witness(sw, key: str) -> dict | None:
    if key not in sw.witness:
        return None
    return {"delta_hnf": sw.witness[key]}


def capitulation_audits(name: str, strategy: str) -> list[ClaimReport]:
    """TC4 and LO1 for every maximal class, and the FR1 data row."""
    G = transfer_group(name)
    out = psi_vs_transfer_audit(G, strategy)
    if G.is_abelian and G.n > FR_ABELIAN_MAX:
        inst = finite_instance(G, strategy=ComplementStrategy(strategy).value)
        out.append(ClaimReport("FR1-fr-quotient", inst, "not-applicable",
                               detail=f"not tabulated for abelian groups above order {FR_ABELIAN_MAX}"))
    else:
        out.append(fr_quotient_report(G, strategy))
    return out


# ---------------------------------------------------------------------------
# task registry


TASKS: dict[str, tuple[Callable[..., list[ClaimReport] | ClaimReport], tuple[str, ...]]] = {
    "abelian": (abelian_psi_audits, (
        "TC1-bijectivity", "TC2-cint", "TC3-degree-generation", "LI1-lemma-int-independence", "H94-hilbert94",
        "CV1-complement-validity", "OC1-orth-symmetry", "OC2-co-co1-equivalence", "OC3-orth-excludes-cycle",
        "GS1-genset-size")),
    "cc1": (complement_hypothesis_audit, ("CC1-complement-hypothesis",)),
    "cn1": (basis_canonicity_audit, ("CN1-basis-canonicity",)),
    "cn2": (pairing_canonicity_audit, ("CN2-pairing-canonicity",)),
    "gs2": (genset_counterexample, ("GS2-genset-counterexample",)),
    "transfer": (transfer_audits, ("MY1-miyake", "PIT1-principal-ideal", "TR1-transversal-independence",
                                   "AB1-abelian-transfer")),
    "capitulation": (capitulation_audits, ("TC4-capitulation-transfer", "LO1-lift-order", "FR1-fr-quotient")),
}


def run_task(task: tuple) -> list[dict]:
    """Execute one task; unexpected exceptions become error verdicts for the task's claims."""
    kind, *args = task
    fn, claims = TASKS[kind]
    try:
        res = fn(*args)
        reports = res if isinstance(res, list) else [res]
    except Exception as exc:  # noqa: BLE001 - any crash is reported as an error verdict
        inst = {"group": str(args[0]), "task": kind, "args": list(args)}
        reports = [ClaimReport(c, inst, "error", detail=f"{type(exc).__name__}: {exc}") for c in claims]
    return [r.to_dict() for r in reports]


def catalog_tasks(primes, max_order, strategies, seeds, transfer_max_order) -> list[tuple]:
    """Task list in canonical order."""
    from .group_core import abelian_types

    types = [A for p in primes for A in abelian_types(p, max_order)]
    tasks: list[tuple] = []
    pairing_seeds = list(range(seeds + 1))
    for A in types:
        spec = str(A)
        for st in strategies:
            for s in (pairing_seeds if st == ComplementStrategy.PAIRING.value else [0]):
                tasks.append(("abelian", spec, st, s))
        tasks.append(("cc1", spec))
        for st in strategies:
            for s in range(1, seeds + 1):
                tasks.append(("cn1", spec, st, s))
        if ComplementStrategy.PAIRING.value in strategies:
            for s in range(1, seeds + 1):
                tasks.append(("cn2", spec, s))
    for p in primes:
        tasks.append(("gs2", p))
    groups = [name for name, f in NONABELIAN.items() if _catalog_prime(name) in primes]
    groups += [str(A) for p in primes for A in abelian_types(p, transfer_max_order)]
    for name in groups:
        tasks.append(("transfer", name))
        for st in strategies:
            tasks.append(("capitulation", name, st))
    return tasks


_PRIMES = {"D8": 2, "Q8": 2, "M16": 2, "He27": 3, "Ex27": 3, "He125": 5}


def _catalog_prime(name: str) -> int:
    return _PRIMES[name]
