"""Command-line front end: ``caplab check|lattice|complement|orth|transfer|replay``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .export import export_lattice
from .group_core import GroupError, PGroupType, elem_order, enumerate_subgroups, p_height, span
from .harness import ALL_STRATEGIES, ReplayError, SuiteConfig, load_witness, replay, run_suite
from .orthogonality import OrthogonalityTable, maximal_orthogonal_set, orthogonality_properties_audit
from .psi_map import PsiError, PsiMap, find_complement
from .transfer_capitulation import (
    FiniteGroup,
    admissible_deltas,
    catalog_group,
    parse_delta,
    transfer,
)


def _gens(S) -> list[list[int]]:
    return [list(g.coords) for g in S.generators()]


def _strategies(value: str) -> list[str]:
    return list(ALL_STRATEGIES) if value == "both" else [value]


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from exc


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=1) + "\n")


# -- commands ---------------------------------------------------------------


def cmd_check(args) -> int:
    cfg = SuiteConfig(
        primes=args.p,
        max_order=args.max_order,
        strategies=_strategies(args.strategy),
        seeds=args.seeds,
        transfer_max_order=args.transfer_max_order,
        jobs=args.jobs,
        out=args.out,
        inject_fault=args.inject_fault,
    )
    res = run_suite(cfg)
    if not args.out:
        sys.stdout.write(res.text())
    width = max((len(c) for c in res.summary()), default=5)
    for claim, counts in res.summary().items():
        cells = "  ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        print(f"{claim:<{width}}  {cells}", file=sys.stderr)
    print(f"theorem failures: {len(res.theorem_failures)}, errors: {len(res.errors)}", file=sys.stderr)
    return res.exit_code


def cmd_lattice(args) -> int:
    sys.stdout.write(export_lattice(args.group, args.strategy, args.format))
    return 0


def cmd_complement(args) -> int:
    A = PGroupType.parse(args.group)
    try:
        a = A.elem(*(int(x) for x in args.elem.split(",")))
    except ValueError as exc:
        raise GroupError(f"bad element {args.elem!r}") from exc
    if len(a.coords) != A.rank:
        raise GroupError(f"element needs {A.rank} coordinates")
    C = find_complement(span([a]), enumerate_subgroups(A))
    out = {
        "group": str(A),
        "element": list(a.coords),
        "order": elem_order(a),
        "height": p_height(a) if a else None,
        "maximal_order": elem_order(a) == A.exponent and bool(a),
        "complement_exists": C is not None,
        "complement": _gens(C) if C is not None else None,
        "strategies": {},
    }
    for s in ALL_STRATEGIES:
        try:
            out["strategies"][s] = {"complement": _gens(PsiMap(A, s).canonical_complement(a))}
        except (PsiError, GroupError) as exc:
            out["strategies"][s] = {"error": str(exc)}
    _emit(out)
    return 0


def cmd_orth(args) -> int:
    A = PGroupType.parse(args.group)
    out = {"group": str(A), "strategies": {}}
    for s in _strategies(args.strategy):
        psi = PsiMap(A, s)
        table = OrthogonalityTable(psi)
        pairs = []
        for a in psi.maximal_elements():
            for a2 in psi.maximal_elements():
                try:
                    r = table(a, a2)
                except PsiError:
                    pairs.append({"a": list(a.coords), "a2": list(a2.coords), "defined": False})
                    continue
                pairs.append({"a": list(a.coords), "a2": list(a2.coords), "defined": True,
                              "co": r.co, "co1": r.co1, "fields_contained": r.fields_contained})
        gs = maximal_orthogonal_set(psi)
        out["strategies"][s] = {
            "pairs": pairs,
            "orthogonal_set": {
                "members": [list(x.coords) for x in gs.members],
                "generates": gs.generates,
                "pairwise": gs.pairwise,
                "error": gs.error or None,
            },
            "audits": [r.to_dict() for r in orthogonality_properties_audit(psi)],
        }
    _emit(out)
    return 0


def transfer_summary(G: FiniteGroup, delta: str | None = None) -> dict:
    AG = G.abelianization
    out = {
        "group": G.name,
        "order": G.n,
        "abelianization": str(AG.type) if AG.type is not None else None,
        "derived": list(G.derived.elements),
        "transfers": [],
    }
    if delta is not None:
        items = [(None, parse_delta(G, delta))]
    else:
        items = [(S, D) for S, D in admissible_deltas(G)]
    for S, D in items:
        T = transfer(G, D)
        row = {
            "delta": list(D.elements),
            "index": T.index,
            "target": str(T.target),
            "matrix": [list(r) for r in T.matrix],
            "kernel": _gens(T.kernel()),
            "kernel_order": T.kernel().order,
            "trivial": T.is_trivial,
        }
        if S is not None:
            row["delta_mod_derived"] = _gens(S)
        out["transfers"].append(row)
    return out


def cmd_transfer(args) -> int:
    _emit(transfer_summary(catalog_group(args.group), args.delta))
    return 0


def cmd_replay(args) -> int:
    res = replay(load_witness(args.witness, args.index))
    _emit({"claim": res.recorded.claim, "instance": res.recorded.instance,
           "recorded": res.recorded.verdict, "replayed": res.replayed.verdict,
           "match": res.match, "replay": res.replayed.to_dict()})
    if not res.match:
        print("mismatch: replayed verdict differs from the recorded one", file=sys.stderr)
    return 0 if res.match else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="caplab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    strat = [*ALL_STRATEGIES, "both"]

    p = sub.add_parser("check", help="run the claim suite over the catalog")
    p.add_argument("--p", type=_primes, default=[2, 3, 5], help="comma-separated primes")
    p.add_argument("--max-order", type=int, default=81)
    p.add_argument("--strategy", choices=strat, default="both")
    p.add_argument("--seeds", type=int, default=1, help="random pairing / Artin seeds per instance")
    p.add_argument("--transfer-max-order", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="report file (stdout if omitted)")
    p.add_argument("--inject-fault", type=int, default=None, metavar="SEED",
                   help="flip one passing theorem-status verdict (exit-code self test)")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("lattice", help="Sub(A), Sub(H/K) and psi edges")
    p.add_argument("group", metavar="GROUPSPEC")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--strategy", choices=list(ALL_STRATEGIES), default=ALL_STRATEGIES[0])
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("complement", help="complements of <ELEM> (exhaustive and per strategy)")
    p.add_argument("group", metavar="GROUPSPEC")
    p.add_argument("elem", metavar="ELEM", help="comma-separated coordinates, e.g. 3,1")
    p.set_defaults(fn=cmd_complement)

    p = sub.add_parser("orth", help="orthogonality table and greedy orthogonal set")
    p.add_argument("group", metavar="GROUPSPEC")
    p.add_argument("--strategy", choices=strat, default="both")
    p.set_defaults(fn=cmd_orth)

    p = sub.add_parser("transfer", help="transfer maps of a catalog or permutation group")
    p.add_argument("group", metavar="GROUPFILE|NAME")
    p.add_argument("--delta", default=None, help="'derived', 'whole' or generator indices")
    p.set_defaults(fn=cmd_transfer)

    p = sub.add_parser("replay", help="re-execute one recorded report")
    p.add_argument("witness", metavar="WITNESSFILE")
    p.add_argument("--index", type=int, default=None, help="report index in a suite file")
    p.set_defaults(fn=cmd_replay)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (GroupError, ReplayError, ValueError, OSError) as exc:
        print(f"caplab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
