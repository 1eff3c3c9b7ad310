"""Claim verdict records and their canonical JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

VERDICTS = ("pass", "fail", "not-applicable", "error")
STATUSES = ("theorem", "paper", "data")

# claim id -> (status, short description)
CLAIMS: dict[str, tuple[str, str]] = {
    "TC1-bijectivity": ("paper", "psi is a bijection Sub(A) -> Sub(H/K)"),
    "TC2-cint": ("paper", "psi respects intersections and joins"),
    "TC3-degree-generation": ("paper", "[psi(a):K] = ord(a) and phi(a) generates Gal(psi(a)/K)"),
    "TC4-capitulation-transfer": ("paper", "a lies in the transfer kernel to the group fixing L_a"),
    "LO1-lift-order": ("paper", "the lift of a to L'_a keeps the order of a"),
    "LI1-lemma-int-independence": ("paper", "psi(<x>) does not depend on the maximal class above x"),
    "CC1-complement-hypothesis": ("paper", "every p-indivisible class spans a direct summand"),
    "H94-hilbert94": ("paper", "cyclic L has a class of order [L:K] capitulating in L, generating when L is maximal"),
    "CV1-complement-validity": ("theorem", "strategy complements are direct complements"),
    "CN1-basis-canonicity": ("paper", "psi is invariant under relabelling A by automorphisms"),
    "CN2-pairing-canonicity": ("paper", "pairing-annihilator psi is independent of the chosen perfect pairing"),
    "OC1-orth-symmetry": ("paper", "canonical orthogonality is symmetric"),
    "OC2-co-co1-equivalence": ("paper", "membership form and pairing form of orthogonality agree"),
    "OC3-orth-excludes-cycle": ("paper", "a orthogonal to a' implies a' not in <a>"),
    "GS1-genset-size": ("theorem", "a greedy maximal orthogonal set has p-rank many members"),
    "GS2-genset-counterexample": ("paper", "a generating pair need not be orthogonal"),
    "MY1-miyake": ("theorem", "[Gamma:Delta] divides the transfer kernel"),
    "PIT1-principal-ideal": ("theorem", "transfer to the derived subgroup is trivial"),
    "AB1-abelian-transfer": ("theorem", "abelian transfer is the index-power map"),
    "TR1-transversal-independence": ("theorem", "transfer does not depend on the transversal"),
    "FR1-fr-quotient": ("data", "left side of the (fr) quotient, recorded only"),
}


def claim_status(claim: str) -> str:
    return CLAIMS[claim][0]


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    instance: dict[str, Any]
    verdict: str
    witness: dict[str, Any] | None = None
    detail: str = ""
    status: str = field(default="")

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim id {self.claim!r}")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if not self.status:
            object.__setattr__(self, "status", claim_status(self.claim))
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ClaimReport:
        return cls(
            claim=d["claim"],
            instance=d["instance"],
            verdict=d["verdict"],
            witness=d.get("witness"),
            detail=d.get("detail", ""),
            status=d.get("status", ""),
        )

    @property
    def key(self) -> str:
        return json.dumps([self.claim, self.instance], sort_keys=True)


def verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def dumps(reports: Iterable[ClaimReport], meta: dict[str, Any] | None = None) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    doc = {"meta": meta or {}, "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def loads(text: str) -> tuple[dict[str, Any], list[ClaimReport]]:
    doc = json.loads(text)
    return doc.get("meta", {}), [ClaimReport.from_dict(d) for d in doc["reports"]]
