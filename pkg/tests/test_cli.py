"""Command-line interface: schemas, exit codes, round-trips, batch mode."""

import json
from pathlib import Path

import pytest

from dspkit.cli import main
from dspkit.report import parse_problem

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def numpy_backend(monkeypatch):
    monkeypatch.setenv("DSPKIT_BACKEND", "numpy")
    monkeypatch.delenv("DSPKIT_SEED", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    reports = [json.loads(line) for line in out.splitlines() if line]
    return code, reports


class TestInvariants:
    def test_size11(self, capsys):
        code, (report,) = run(capsys, "invariants", str(FIXTURES / "size11_invariants.json"))
        assert code == 0
        assert report["schema_version"] == "1"
        assert report["per_class"][0] == {"z": 23, "d": 98, "r": 8}

    def test_extra_case_kappa(self, capsys):
        code, (report,) = run(capsys, "invariants", str(FIXTURES / "extra_case.json"))
        assert code == 0
        assert report["kappa"] == 2

    def test_malformed_blocks_exit2(self, capsys):
        code = main(["invariants", str(FIXTURES / "invalid_blocks.json")])
        captured = capsys.readouterr()
        assert code == 2
        assert "positive" in captured.err


class TestDecide:
    def test_hypergeometric_trace(self, capsys):
        code, (report,) = run(
            capsys, "decide", str(FIXTURES / "hypergeometric_n2.json"), "--trace"
        )
        assert code == 0
        assert report["verdict"] == "solvable"
        assert report["trace"]["terminal_n"] == 1
        assert report["kappa"] == 2

    def test_odd_family_two_steps(self, capsys):
        code, (report,) = run(
            capsys, "decide", str(FIXTURES / "odd_family_n3.json"), "--trace"
        )
        assert report["verdict"] == "solvable"
        assert len(report["trace"]["steps"]) == 2

    def test_pair_not_solvable(self, capsys):
        code, (report,) = run(capsys, "decide", str(FIXTURES / "pair_n2.json"))
        assert code == 0
        assert report["verdict"] == "not_solvable"

    def test_weak_needs_distinct_entry(self, capsys):
        code, reports = run(capsys, "decide", str(FIXTURES / "special_a_k2.json"), "--weak")
        assert code == 3
        assert reports[0]["verdict"] == "not_applicable"

    def test_verdicts_carry_provenance(self, capsys):
        _, (report,) = run(capsys, "decide", str(FIXTURES / "hypergeometric_n2.json"))
        assert "criterion" in report["provenance"]


class TestGeneric:
    def test_example41_generic(self, capsys):
        code, (report,) = run(capsys, "generic", str(FIXTURES / "example41_generic.json"))
        assert code == 0
        assert report["generic"] is True
        assert report["gcd"]["xi_primitive"] is True
        assert report["relation"] is None

    def test_example41_nongeneric_witness(self, capsys):
        code, (report,) = run(capsys, "generic", str(FIXTURES / "example41_nongeneric.json"))
        assert report["generic"] is False
        assert report["relation"]["cardinality"] == 2
        assert report["relation"]["selections"] == [[2], [2], [2], [2]]

    def test_missing_eigenvalues_exit2(self, capsys):
        code = main(["generic", str(FIXTURES / "hypergeometric_n2.json")])
        captured = capsys.readouterr()
        assert code == 2
        assert "eigenvalue" in captured.err

    def test_relation_budget_exceeded_exit3(self, capsys, tmp_path):
        # size 17 is over the exact-enumeration cap
        n = 17
        problem = {
            "mode": "additive",
            "classes": [
                {"blocks": [[1]] * n, "eigenvalues": [str(i) for i in range(n)]},
                {"blocks": [[1]] * n, "eigenvalues": [str(-i) for i in range(n)]},
                {"blocks": [[1]] * n,
                 "eigenvalues": [str(i + 20) for i in range(n - 1)] + [str(-sum(range(20, 20 + n - 1)))]},
            ],
        }
        path = tmp_path / "big.json"
        path.write_text(json.dumps(problem))
        code, (report,) = run(capsys, "generic", str(path))
        assert code == 3
        assert report["relation"]["status"] == "resource_exceeded"


class TestClassify:
    def test_special_d(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "special_d_k2.json"))
        assert report["special_case"] == {"kind": "special_d", "k": 2}
        assert report["unipotent_verdicts"]["weak_dsp"] == "not_solvable"
        assert report["kappa"] == 0

    def test_almost_d_modes(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "almost_d_k2.json"))
        assert report["unipotent_verdicts"]["dsp"] == "not_solvable"
        assert report["unipotent_verdicts"]["weak_dsp"] == "solvable"
        _, (report_mult,) = run(capsys, "classify", str(FIXTURES / "almost_d_k2_mult.json"))
        assert report_mult["unipotent_verdicts"]["dsp"] == "unknown"

    def test_good_n9(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "good_n9.json"))
        assert report["good"] is True
        assert report["special_diagonal"] == {"status": "needs_eigenvalues"}

    def test_good_n9_assigned_not_special(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "good_n9_assigned.json"))
        assert report["good"] is True
        assert report["special_diagonal"]["weak_verdict"] == "unknown"
        assert "witness" not in report["special_diagonal"]

    def test_special_diagonal_witness(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "special_diagonal_n2.json"))
        sd = report["special_diagonal"]
        assert sd["weak_verdict"] == "not_solvable"
        assert sd["witness"]["n1"] == 2

    def test_kappa_not_two_reported(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "special_a_k2.json"))
        assert report["special_diagonal"] == {"status": "kappa_not_two"}

    def test_rigid_fixture(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "extra_case.json"))
        assert report["rigid_family"] == "extra_case"

    def test_example41_weak_kappa0(self, capsys):
        _, (report,) = run(capsys, "classify", str(FIXTURES / "example41_generic.json"))
        assert report["weak_kappa0"]["verdict"] == "solvable"
        _, (report2,) = run(capsys, "classify", str(FIXTURES / "example41_nongeneric.json"))
        assert report2["weak_kappa0"]["verdict"] == "not_solvable"


class TestRealize:
    def test_s1_warm_start(self, capsys):
        code, (report,) = run(
            capsys,
            "realize",
            str(FIXTURES / "strata_n2.json"),
            "--warm-start",
            str(FIXTURES / "s1_conjugators.json"),
            "--restarts",
            "1",
        )
        assert code == 0
        assert report["found"] and report["certified"]
        assert report["residual"] < 1e-12
        assert report["burnside_dim"] < 4
        assert report["centralizer_nullity"] == 1

    def test_s0_warm_start(self, capsys):
        code, (report,) = run(
            capsys,
            "realize",
            str(FIXTURES / "strata_n2.json"),
            "--warm-start",
            str(FIXTURES / "s0_conjugators.json"),
            "--restarts",
            "1",
        )
        assert report["centralizer_nullity"] == 2

    def test_pair_found_false_exit0(self, capsys):
        code, (report,) = run(
            capsys,
            "realize",
            str(FIXTURES / "pair_n2.json"),
            "--restarts",
            "3",
            "--iters",
            "40",
        )
        assert code == 0
        assert report["found"] is False

    def test_hypergeometric_certified(self, capsys):
        code, (report,) = run(
            capsys,
            "realize",
            str(FIXTURES / "hypergeometric_n2_generic.json"),
            "--restarts",
            "20",
            "--seed",
            "2",
        )
        assert report["found"] and report["certified"]
        assert report["irreducible"] is True
        assert len(report["matrices"]) == 3
        assert len(report["matrices"][0][0][0]) == 2  # [re, im] pairs

    def test_env_seed_override(self, capsys, monkeypatch):
        monkeypatch.setenv("DSPKIT_SEED", "123")
        _, (report,) = run(
            capsys,
            "realize",
            str(FIXTURES / "pair_n2.json"),
            "--restarts",
            "1",
            "--iters",
            "5",
            "--seed",
            "7",
        )
        assert report["budget"]["seed"] == 123


class TestEnumerateRigid:
    def test_n2(self, capsys):
        code, (report,) = run(capsys, "enumerate-rigid", "--n", "2", "--p", "2")
        assert code == 0
        assert report["count"] == 1
        assert report["tuples"][0]["rigid_family"] == "hypergeometric"

    def test_n1_trivial(self, capsys):
        _, (report,) = run(capsys, "enumerate-rigid", "--n", "1")
        assert report["count"] == 1
        assert report["tuples"][0]["multiplicities"] == [[1], [1], [1]]

    def test_n6_contains_table_families(self, capsys):
        _, (report,) = run(capsys, "enumerate-rigid", "--n", "6", "--p", "2")
        with_distinct = [
            t for t in report["tuples"] if [1, 1, 1, 1, 1, 1] in t["multiplicities"]
        ]
        families = sorted(t["rigid_family"] for t in with_distinct)
        assert families == ["even_family", "extra_case", "hypergeometric"]


class TestRoundTripAndBatch:
    @pytest.mark.parametrize(
        "name",
        [
            "size11_invariants.json",
            "example41_generic.json",
            "good_n9_assigned.json",
            "strata_n2.json",
        ],
    )
    def test_echo_reparses_identically(self, capsys, name):
        _, (report,) = run(capsys, "invariants", str(FIXTURES / name))
        with open(FIXTURES / name) as fh:
            original = parse_problem(json.load(fh))
        echoed = parse_problem(report["input"])
        assert echoed.tuple == original.tuple
        assert echoed.mode == original.mode
        if original.specs is not None:
            assert echoed.specs == original.specs

    def test_batch_directory(self, capsys, tmp_path):
        for name in ("hypergeometric_n2.json", "extra_case.json", "odd_family_n3.json"):
            (tmp_path / name).write_text((FIXTURES / name).read_text())
        code, reports = run(capsys, "decide", str(tmp_path))
        assert code == 0
        assert len(reports) == 3
        assert all(r["verdict"] == "solvable" for r in reports)
        paths = [r["input_path"] for r in reports]
        assert paths == sorted(paths)

    def test_batch_parallel_same_output(self, capsys, tmp_path):
        for name in ("hypergeometric_n2.json", "extra_case.json"):
            (tmp_path / name).write_text((FIXTURES / name).read_text())
        _, serial = run(capsys, "decide", str(tmp_path))
        _, parallel = run(capsys, "decide", str(tmp_path), "--jobs", "3")
        assert serial == parallel

    def test_batch_mixed_applicability(self, capsys, tmp_path):
        (tmp_path / "a_hyper.json").write_text(
            (FIXTURES / "hypergeometric_n2.json").read_text()
        )
        (tmp_path / "b_special.json").write_text((FIXTURES / "special_a_k2.json").read_text())
        code, reports = run(capsys, "decide", str(tmp_path), "--weak")
        assert code == 3
        assert reports[0]["verdict"] == "solvable"
        assert reports[1]["verdict"] == "not_applicable"
        assert reports[1]["input_path"].endswith("b_special.json")

    def test_empty_batch_exit2(self, capsys, tmp_path):
        code = main(["decide", str(tmp_path)])
        assert code == 2

    def test_not_json_exit2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert main(["decide", str(bad)]) == 2
