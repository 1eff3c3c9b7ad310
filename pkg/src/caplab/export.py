"""Lattice diagrams: Sub(A), Sub(H/K) and the psi edges between them, as DOT or JSON."""

from __future__ import annotations

import json

from .galois_model import FieldNode, fixed_field
from .group_core import DEFAULT_ENUM_BOUND, EnumerationBoundError, PGroupType, Subgroup, enumerate_subgroups
from .psi_map import ComplementStrategy, PsiMap


def _gens(S: Subgroup) -> list[list[int]]:
    return [list(g.coords) for g in S.generators()]


def _covers(subs: list[Subgroup], p: int) -> list[tuple[int, int]]:
    """(i, j) with subs[i] a maximal subgroup of subs[j]; index p in an abelian p-group."""
    out = []
    for i, S in enumerate(subs):
        for j, T in enumerate(subs):
            if T.order == S.order * p and S <= T:
                out.append((i, j))
    return out


def lattice_data(A: PGroupType, strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED,
                 bound: int = DEFAULT_ENUM_BOUND) -> dict:
    if A.order > bound:
        raise EnumerationBoundError(f"|A| = {A.order} exceeds the export bound {bound}")
    psi = PsiMap(A, strategy, bound=bound)
    subs = enumerate_subgroups(A, bound)
    # fields in increasing degree: fixing groups in decreasing order
    fields = [fixed_field(V) for V in reversed(enumerate_subgroups(psi.G, bound))]
    fid = {L: k for k, L in enumerate(fields)}
    table = psi.forward_table
    edges = []
    for i, S in enumerate(subs):
        L = table[S]
        if not isinstance(L, FieldNode):
            edges.append({"from": f"A{i}", "to": None, "verdict": "undefined", "reason": str(L)})
            continue
        r = psi.psi_subgroup(S)
        injective = len(psi.preimages(L)) == 1
        ok = r.degree_ok and r.generation_ok is not False and r.independence_ok and injective
        edges.append({
            "from": f"A{i}",
            "to": f"F{fid[L]}",
            "degree_ok": r.degree_ok,
            "generation_ok": r.generation_ok,
            "independence_ok": r.independence_ok,
            "injective": injective,
            "verdict": "pass" if ok else "fail",
        })
    return {
        "group": str(A),
        "strategy": psi.strategy.value,
        "p2": A.p == 2,
        "subgroups": [{"id": f"A{i}", "order": S.order, "generators": _gens(S)} for i, S in enumerate(subs)],
        "fields": [{"id": f"F{k}", "degree": L.degree, "fixing": _gens(L.fixing)} for k, L in enumerate(fields)],
        "subgroup_covers": [[f"A{i}", f"A{j}"] for i, j in _covers(subs, A.p)],
        "field_covers": [[f"F{i}", f"F{j}"] for i, j in _field_covers(fields, A.p)],
        "psi": edges,
    }


def _field_covers(fields: list[FieldNode], p: int) -> list[tuple[int, int]]:
    out = []
    for i, L in enumerate(fields):
        for j, M in enumerate(fields):
            if M.degree == L.degree * p and L <= M:
                out.append((i, j))
    return out


def to_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def to_dot(data: dict) -> str:
    lines = [f'digraph "{data["group"]}" {{']
    lines.append(f'  label="Sub({data["group"]}) -> Sub(H/K), {data["strategy"]}";')
    lines.append(f'  p2="{str(data["p2"]).lower()}";')
    lines.append("  rankdir=BT;")
    lines.append("  subgraph cluster_A {")
    lines.append('    label="Sub(A)";')
    for n in data["subgroups"]:
        lab = _label_from_gens(n["generators"])
        lines.append(f'    {n["id"]} [label="{lab}\\n|{n["order"]}|"];')
    for i, j in data["subgroup_covers"]:
        lines.append(f"    {i} -> {j};")
    lines.append("  }")
    lines.append("  subgraph cluster_F {")
    lines.append('    label="Sub(H/K)";')
    for n in data["fields"]:
        lab = _label_from_gens(n["fixing"])
        lines.append(f'    {n["id"]} [label="H^{lab}\\n[{n["degree"]}]", shape=box];')
    for i, j in data["field_covers"]:
        lines.append(f"    {i} -> {j};")
    lines.append("  }")
    for e in data["psi"]:
        if e["to"] is None:
            continue
        color = "darkgreen" if e["verdict"] == "pass" else "red"
        flags = ",".join(f"{k}={str(e[k]).lower()}" for k in
                         ("degree_ok", "generation_ok", "independence_ok", "injective"))
        lines.append(f'  {e["from"]} -> {e["to"]} [style=dashed, color={color}, '
                     f'label="{e["verdict"]}", flags="{flags}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _label_from_gens(gens: list[list[int]]) -> str:
    if not gens:
        return "0"
    return "<" + ",".join("(" + ",".join(map(str, g)) + ")" for g in gens) + ">"


def export_lattice(spec: str, strategy: ComplementStrategy | str = ComplementStrategy.ADAPTED,
                   fmt: str = "dot") -> str:
    data = lattice_data(PGroupType.parse(spec), strategy)
    if fmt == "dot":
        return to_dot(data)
    if fmt == "json":
        return to_json(data)
    raise ValueError(f"unknown format {fmt!r}")
