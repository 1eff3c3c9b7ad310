"""Regenerate the regression goldens in tests/goldens (review the diff before committing)."""

from __future__ import annotations

import json
from pathlib import Path

from caplab.cli import transfer_summary
from caplab.export import export_lattice
from caplab.transfer_capitulation import catalog_group

GOLDENS = Path(__file__).resolve().parent.parent / "tests" / "goldens"
LATTICES = {"z9.dot": "3:2", "z3xz3.dot": "3:1,1", "z4xz2.dot": "2:2,1"}


def main() -> None:
    GOLDENS.mkdir(parents=True, exist_ok=True)
    for fname, spec in LATTICES.items():
        (GOLDENS / fname).write_text(export_lattice(spec, "adapted-basis", "dot"))
    doc = transfer_summary(catalog_group("D8"))
    (GOLDENS / "d8_transfer.json").write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    print(f"wrote {len(LATTICES) + 1} goldens to {GOLDENS}")


if __name__ == "__main__":
    main()
