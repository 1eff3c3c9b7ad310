from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from caplab.audits import complement_hypothesis_audit
from caplab.cli import main, transfer_summary
from caplab.export import export_lattice, lattice_data
from caplab.group_core import EnumerationBoundError, PGroupType
from caplab.harness import ReplayError, SuiteConfig, inject_fault, load_witness, replay, run_suite
from caplab.reports import CLAIMS, VERDICTS, ClaimReport, dumps, loads
from caplab.transfer_capitulation import catalog_group

GOLDENS = Path(__file__).parent / "goldens"
SMALL = dict(primes=[3], max_order=9, seeds=1)


@pytest.fixture(scope="module")
def small_run():
    return run_suite(SuiteConfig(**SMALL))


# -- report schema -----------------------------------------------------------------

json_scalars = st.one_of(st.integers(-10**6, 10**6), st.booleans(), st.text(max_size=8), st.none())
json_values = st.recursive(
    json_scalars, lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=5), c, max_size=3),
    max_leaves=8,
)
reports = st.builds(
    ClaimReport,
    claim=st.sampled_from(sorted(CLAIMS)),
    instance=st.dictionaries(st.text(max_size=6), json_scalars, max_size=4),
    verdict=st.sampled_from(VERDICTS),
    witness=st.one_of(st.none(), st.dictionaries(st.text(max_size=6), json_values, max_size=3)),
    detail=st.text(max_size=20),
)


@given(st.lists(reports, max_size=5), st.dictionaries(st.text(max_size=5), json_scalars, max_size=3))
def test_report_round_trip(rs, meta):
    text = dumps(rs, meta)
    meta2, rs2 = loads(text)
    assert rs2 == rs and meta2 == meta
    assert dumps(rs2, meta2) == text


def test_unknown_claim_or_verdict_rejected():
    with pytest.raises(ValueError):
        ClaimReport("XX1-nothing", {}, "pass")
    with pytest.raises(ValueError):
        ClaimReport("MY1-miyake", {}, "maybe")


def test_config_validation():
    for bad in (dict(primes=[]), dict(max_order=0), dict(jobs=0), dict(strategies=["nope"])):
        with pytest.raises(ValueError):
            SuiteConfig(**bad)
    cfg = SuiteConfig(**SMALL)
    assert cfg.meta()["seeds"] == 1 and "jobs" not in cfg.meta()


# -- suite behaviour -----------------------------------------------------------------


def test_small_suite_exit_and_witnesses(small_run):
    assert small_run.exit_code == 0
    assert not small_run.errors
    for r in small_run.reports:
        if r.verdict == "fail":
            assert r.witness, r
    assert json.loads(small_run.text())["meta"]["seeds"] == 1


def test_deterministic_and_parallel_identical(small_run, tmp_path):
    out = tmp_path / "par.json"
    par = run_suite(SuiteConfig(**SMALL, jobs=2, out=str(out)))
    assert par.text() == small_run.text() == out.read_text()


def test_fault_injection_flips_exit_code(small_run):
    flipped = inject_fault(small_run.reports, seed=7)
    changed = [(a, b) for a, b in zip(small_run.reports, flipped) if a != b]
    assert len(changed) == 1
    before, after = changed[0]
    assert before.status == "theorem" and before.verdict == "pass" and after.verdict == "fail"
    res = run_suite(SuiteConfig(**SMALL, inject_fault=7))
    assert res.exit_code == 1 and len(res.theorem_failures) == 1
    assert inject_fault(small_run.reports, seed=7) == flipped


def test_paper_failures_do_not_gate(small_run):
    assert any(r.status == "paper" and r.verdict == "fail" for r in small_run.reports)
    assert small_run.exit_code == 0


# -- replay -----------------------------------------------------------------------------


def _write(tmp_path, report: ClaimReport) -> Path:
    f = tmp_path / "witness.json"
    f.write_text(json.dumps(report.to_dict()))
    return f


def test_cc1_witness_replays(tmp_path):
    r = complement_hypothesis_audit("3:3,1")
    assert r.verdict == "fail" and r.witness["element"] == [3, 1]
    assert "hypothesis gap" in r.detail
    res = replay(load_witness(_write(tmp_path, r)))
    assert res.match and res.replayed.verdict == "fail"


def test_tampered_witness_flags_mismatch(tmp_path, capsys):
    r = complement_hypothesis_audit("3:3,1")
    tampered = ClaimReport(r.claim, r.instance, "fail", {**r.witness, "element": [1, 0]}, r.detail)
    f = _write(tmp_path, tampered)
    res = replay(load_witness(f))
    assert res.replayed.verdict == "pass" and not res.match
    assert main(["replay", str(f)]) == 1
    assert "mismatch" in capsys.readouterr().err


@pytest.mark.parametrize("text", ["", "   \n", "{}", "[1, 2]", "not json", '{"claim": "MY1-miyake"}'])
def test_malformed_witness_errors(tmp_path, text):
    f = tmp_path / "w.json"
    f.write_text(text)
    with pytest.raises(ReplayError):
        load_witness(f)
    assert main(["replay", str(f)]) == 2


def test_replay_from_suite_file(small_run, tmp_path):
    f = tmp_path / "suite.json"
    f.write_text(small_run.text())
    first = load_witness(f)
    assert first.verdict == "fail"
    assert replay(first).match
    for i, r in enumerate(small_run.reports):
        if r.verdict == "fail" and r.claim != first.claim:
            assert replay(load_witness(f, i)).match
            break


# -- export and goldens -------------------------------------------------------------------


@pytest.mark.parametrize("fname, spec", [("z9.dot", "3:2"), ("z3xz3.dot", "3:1,1"), ("z4xz2.dot", "2:2,1")])
def test_dot_goldens(fname, spec):
    assert export_lattice(spec, "adapted-basis", "dot") == (GOLDENS / fname).read_text()


def test_d8_transfer_golden():
    got = json.dumps(transfer_summary(catalog_group("D8")), sort_keys=True, indent=1) + "\n"
    assert got == (GOLDENS / "d8_transfer.json").read_text()


def test_lattice_shapes():
    d = lattice_data(PGroupType.parse("3:2"))
    assert len(d["subgroups"]) == len(d["fields"]) == 3 and len(d["psi"]) == 3
    assert all(e["verdict"] == "pass" for e in d["psi"])
    d = lattice_data(PGroupType.parse("3:1,1"))
    assert len(d["subgroups"]) == len(d["fields"]) == 6
    assert {e["verdict"] for e in d["psi"]} == {"pass", "fail"}
    d = json.loads(export_lattice("2:1,1", "adapted-basis", "json"))
    assert len(d["subgroups"]) == len(d["fields"]) == 5 and d["p2"] is True
    assert 'p2="true"' in export_lattice("2:1,1")


def test_lattice_bound():
    with pytest.raises(EnumerationBoundError):
        lattice_data(PGroupType.parse("2:1,1,1"), bound=4)


# -- CLI -----------------------------------------------------------------------------------


def test_cli_lattice_and_complement(capsys):
    assert main(["lattice", "3:2"]) == 0
    assert capsys.readouterr().out == (GOLDENS / "z9.dot").read_text()
    assert main(["complement", "3:3,1", "3,1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["complement_exists"] is False and out["height"] == 0 and not out["maximal_order"]
    assert main(["complement", "3:1,1", "1,0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["strategies"]["adapted-basis"]["complement"] == [[0, 1]]


def test_cli_orth_and_transfer(capsys):
    assert main(["orth", "3:1,1", "--strategy", "adapted-basis"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["strategies"]["adapted-basis"]["pairs"]) == 64
    assert main(["transfer", "Q8", "--delta", "derived"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["transfers"][0]["trivial"] is True


def test_cli_check(tmp_path, capsys):
    f = tmp_path / "r.json"
    assert main(["check", "--p", "2", "--max-order", "4", "--out", str(f)]) == 0
    assert "theorem failures: 0" in capsys.readouterr().err
    assert main(["check", "--p", "2", "--max-order", "4", "--out", str(f), "--inject-fault", "1"]) == 1


@pytest.mark.parametrize("argv", [["lattice", "9:1"], ["complement", "3:1,1", "x"], ["transfer", "nope.txt"]])
def test_cli_input_errors(argv, capsys):
    assert main(argv) == 2
    assert "caplab: error" in capsys.readouterr().err
