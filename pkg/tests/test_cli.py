"""Command line driver: exit codes, output contracts, reproducibility."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tropgen.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDim:
    def test_linear_r2_n4(self, capsys):
        code, out, _ = run(capsys, "dim", str(CORPUS / "linear_r2_n4"))
        assert code == 0 and "dim = 2" in out

    def test_point(self, capsys):
        code, out, _ = run(capsys, "dim", str(CORPUS / "point"))
        assert code == 0 and "dim = 0" in out

    def test_hypersurface(self, capsys):
        code, out, _ = run(capsys, "dim", str(CORPUS / "hypersurface_n3"))
        assert code == 0 and "dim = 2" in out

    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad"
        bad.write_text("vars: 2\nx1 + @\n")
        code, _, err = run(capsys, "dim", str(bad))
        assert code == 2 and "error" in err

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run(capsys, "dim", "/nonexistent/ideal")
        assert code == 2

    def test_improper_ideal_exit_3(self, capsys, tmp_path):
        unit = tmp_path / "unit"
        unit.write_text("vars: 2\n1 + x1 - x1\n")
        code, _, err = run(capsys, "dim", str(unit))
        assert code == 3


class TestMember:
    def test_inside(self, capsys, tmp_path):
        f = tmp_path / "lin"
        f.write_text("vars: 3\nx1 + x2 + x3\n")
        code, out, _ = run(capsys, "member", str(f), "-w", "0,0,0")
        assert code == 0 and "true" in out

    def test_outside_with_certificate(self, capsys, tmp_path):
        f = tmp_path / "lin"
        f.write_text("vars: 3\nx1 + x2 + x3\n")
        code, out, _ = run(capsys, "member", str(f), "-w=-1,0,0")
        assert code == 0 and "false" in out
        assert "certificate monomial: x1" in out

    def test_monomial_certificate(self, capsys):
        code, out, _ = run(capsys, "member", str(CORPUS / "monomial_x1x2"),
                           "-w", "3,1")
        assert code == 0 and "false" in out
        assert "x1*x2" in out

    def test_weight_length_mismatch(self, capsys):
        code, _, _ = run(capsys, "member", str(CORPUS / "monomial_x1x2"),
                         "-w", "1,2,3")
        assert code == 2

    def test_json_output(self, capsys, tmp_path):
        f = tmp_path / "lin"
        f.write_text("vars: 2\nx1 + x2\n")
        code, out, _ = run(capsys, "member", str(f), "-w", "0,1", "--json")
        data = json.loads(out)
        assert data["member"] is False
        assert data["certificate"] == [1, 0]
        assert data["seed"] == 1


class TestGeneric:
    def test_monomial_x1x2(self, capsys):
        code, out, _ = run(capsys, "generic", str(CORPUS / "monomial_x1x2"),
                           "--trials", "2", "--grid", "2")
        assert code == 0
        assert "skeleton equality with W_2^1: PASS" in out

    def test_point_empty(self, capsys):
        code, out, _ = run(capsys, "generic", str(CORPUS / "point"),
                           "--trials", "2", "--grid", "2")
        assert code == 0 and "empty" in out


class TestFan:
    def test_wn_counts(self, capsys):
        code, out, _ = run(capsys, "fan", "wn", "--n", "3")
        assert code == 0 and "7 cones" in out

    def test_wn_skeleton(self, capsys):
        code, out, _ = run(capsys, "fan", "wn", "--n", "4", "--skeleton", "2",
                           "--json")
        data = json.loads(out)
        assert len(data["cones"]) == 5  # 4 of dim 2 and 1 of dim 1
        assert sum(1 for c in data["cones"] if len(c["label"]) == 3) == 4

    def test_fan_json_deterministic(self, capsys):
        _, out1, _ = run(capsys, "fan", "wn", "--n", "3", "--json")
        _, out2, _ = run(capsys, "fan", "wn", "--n", "3", "--json")
        assert out1 == out2

    def test_groebner_fan_principal_is_w3(self, capsys):
        code, out, _ = run(capsys, "fan", "groebner",
                           str(CORPUS / "principal_n3_generic"), "--json")
        assert code == 0
        data = json.loads(out)
        assert len(data["cones"]) == 3

    def test_budget_exit_5(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("TROPGEN_BUDGET", "1")
        f = tmp_path / "quad"
        f.write_text("vars: 3\nx1*x2 + x2*x3 + x1*x3\n")
        code, _, err = run(capsys, "fan", "groebner", str(f))
        assert code == 5


class TestLinear:
    def test_report(self, capsys):
        code, out, _ = run(capsys, "linear", str(CORPUS / "linear_r2_n4.matrix"),
                           "--trials", "2", "--grid", "1")
        assert code == 0 and "rank = 2, dim = 2" in out

    def test_cone_at_weight(self, capsys):
        code, out, _ = run(capsys, "linear", str(CORPUS / "linear_r1_n3.matrix"),
                           "-w", "0,1,2", "--json")
        data = json.loads(out)
        assert data["cone"]["inequalities"] == [[1, -1, 0], [1, 0, -1]]


class TestPrincipal:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "principal",
                           str(CORPUS / "principal_n3_generic"),
                           "--trials", "2", "--grid", "2")
        assert code == 0 and "PASS" in out

    def test_rejects_non_principal(self, capsys):
        code, _, _ = run(capsys, "principal", str(CORPUS / "point"))
        assert code == 2


class TestVerifyCorpus:
    def test_quick_subset(self, capsys):
        code, out, _ = run(capsys, "verify-corpus", str(CORPUS),
                           "--criteria", "1,3,7")
        assert code == 0
        assert out.count("PASS") == 3

    def test_json_reproducible(self, capsys):
        _, out1, _ = run(capsys, "verify-corpus", str(CORPUS), "--criteria",
                         "3,7", "--json")
        _, out2, _ = run(capsys, "verify-corpus", str(CORPUS), "--criteria",
                         "3,7", "--json")
        assert out1 == out2
        data = json.loads(out1)
        assert data["all_passed"] is True
        assert data["version"]

    def test_empty_corpus_exit_2(self, capsys, tmp_path):
        (tmp_path / "manifest.json").write_text('{"ideals": {}}')
        code, _, _ = run(capsys, "verify-corpus", str(tmp_path))
        assert code == 2

    def test_tampered_manifest_fails(self, capsys, tmp_path):
        # negative control: mislabel a dimension and expect a FAIL
        import shutil

        for name in ["manifest.json", "hypersurface_n3"]:
            shutil.copy(CORPUS / name, tmp_path / name)
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        manifest["ideals"] = {
            k: v for k, v in manifest["ideals"].items()
            if k == "hypersurface_n3"}
        manifest["ideals"]["hypersurface_n3"]["dim"] = 1
        # pad with copies so the count precondition is satisfied
        for i in range(11):
            alias = f"hypersurface_n3_copy{i}"
            shutil.copy(CORPUS / "hypersurface_n3", tmp_path / alias)
            manifest["ideals"][alias] = dict(
                manifest["ideals"]["hypersurface_n3"], dim=2)
        (tmp_path / "manifest.json").write_text(json.dumps(manifest))
        code, out, _ = run(capsys, "verify-corpus", str(tmp_path),
                           "--criteria", "2", "--trials", "1", "--grid", "1")
        assert code == 1
        assert "FAIL" in out and "hypersurface_n3" in out

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify-corpus", str(CORPUS), "--criteria",
                           "7", "--json", "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["all_passed"] is True


class TestConsoleScript:
    def test_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "tropgen.cli", "fan",
                               "wn", "--n", "2"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "3 cones" in proc.stdout
