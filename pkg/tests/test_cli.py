import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from lame_bands.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main
from lame_bands.potentials import PotentialSpec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestExitCodes:
    def test_ok(self, capsys):
        assert run(capsys, "sample", "--n", "3")[0] == EXIT_OK

    def test_comparison_failure(self, capsys):
        code, out, _ = run(capsys, "band-edges", "--ode-tol", "1e-3", "--compare-tol", "1e-12")
        assert code == EXIT_VERIFY_FAILED
        assert all(r["passed"] == "false" for r in rows(out))

    @pytest.mark.parametrize("argv", [
        ["band-edges", "--m", "1.5"],
        ["sample", "--family", "pt", "--beta", "0"],
        ["band-edges", "--family", "nope"],
        ["sample", "--spec", "/nonexistent/spec.json"],
    ])
    def test_usage(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == EXIT_USAGE and err

    def test_numerical(self, capsys):
        code, _, err = run(capsys, "sample", "--family", "pt", "--a", "1", "--beta", "1e-12", "--n", "5")
        assert code == EXIT_NUMERICAL and "pole" in err

    def test_catalog_miss_suggests_numeric(self, capsys):
        code, _, err = run(capsys, "band-edges", "--a", "2.5", "--mode", "analytic")
        assert code == EXIT_USAGE and "--mode numeric" in err


class TestOutput:
    def test_csv_is_deterministic(self, capsys):
        argv = ["band-edges", "--a", "2", "--m", "0.5"]
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first
        # Floats use 15 significant digits.
        assert "1.26794919243112," in first

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "v.csv"
        code, out, _ = run(capsys, "sample", "--n", "4", "-o", str(target))
        assert code == EXIT_OK and out == ""
        assert len(rows(target.read_text())) == 4

    def test_sample_spans_one_period(self, capsys):
        data = rows(run(capsys, "sample", "--m", "0.5", "--n", "3")[1])
        assert float(data[-1]["x"]) == pytest.approx(2 * 1.8540746773013719, abs=1e-13)
        assert float(data[1]["re_v"]) == pytest.approx(3.0, abs=1e-13)


class TestBandEdges:
    def test_lame_both_modes_agree(self, capsys):
        code, out, _ = run(capsys, "band-edges", "--a", "2", "--m", "0.5")
        data = rows(out)
        assert code == EXIT_OK and len(data) == 5
        assert max(float(r["abs_diff"]) for r in data) < 1e-7
        assert [float(r["analytic"]) for r in data] == pytest.approx(
            [3 - np.sqrt(3), 1.5, 3.0, 4.5, 3 + np.sqrt(3)], abs=1e-13)

    def test_assoc_lame_json(self, capsys):
        code, out, _ = run(capsys, "band-edges", "--family", "assoc_lame", "--a", "2", "--b", "1",
                           "--m", "0.5", "--format", "json")
        payload = json.loads(out)
        assert code == EXIT_OK and payload["passed"]
        assert PotentialSpec.from_dict(payload["spec"]) == PotentialSpec.assoc_lame(2, 1, 0.5)
        assert payload["rows"][0]["analytic"] == pytest.approx(2.0, abs=1e-14)

    def test_free_particle(self, capsys):
        code, out, _ = run(capsys, "band-edges", "--a", "0", "--mode", "numeric", "--e-max", "5")
        data = rows(out)
        assert code == EXIT_OK
        assert float(data[0]["energy"]) == pytest.approx(0.0, abs=1e-9)
        assert all(r["degenerate"] == "true" for r in data[1:])

    def test_spec_from_file_and_stdin(self, capsys, tmp_path):
        spec = PotentialSpec.assoc_lame(2, 1, 0.5)
        path = tmp_path / "spec.json"
        path.write_text(spec.to_json())
        from_file = run(capsys, "band-edges", "--spec", str(path), "--mode", "analytic")[1]
        proc = subprocess.run([sys.executable, "-m", "lame_bands.cli", "band-edges", "--spec", "-",
                               "--mode", "analytic"], input=spec.to_json(), capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == from_file


class TestVerify:
    def test_duality(self, capsys):
        code, out, _ = run(capsys, "verify", "duality", "--a", "2", "--m", "0.3")
        payload = json.loads(out)
        assert code == EXIT_OK and payload["passed"]

    def test_susy_reports_non_self_isospectral(self, capsys):
        code, out, _ = run(capsys, "verify", "susy", "--a", "2", "--m", "0.8")
        report = json.loads(out)["reports"][0]
        assert code == EXIT_OK
        assert report["details"]["self_isospectral"] is False

    def test_dsg(self, capsys):
        code, out, _ = run(capsys, "verify", "dsg", "--a", "3", "--b", "1.0")
        assert code == EXIT_OK and json.loads(out)["passed"]

    def test_csv_columns(self, capsys):
        out = run(capsys, "verify", "landen", "--a", "1", "--m", "0.5", "--format", "csv")[1]
        data = rows(out)
        assert list(data[0]) == ["suite", "relation_id", "max_abs_error", "passed", "error"]
        assert all(r["passed"] == "true" for r in data)

    def test_failure_exit(self, capsys):
        code = run(capsys, "verify", "duality", "--a", "2", "--m", "0.3", "--relation-tol", "1e-20")[0]
        assert code == EXIT_VERIFY_FAILED


class TestDispersionAndElliptic:
    def test_pt_dispersion_columns(self, capsys):
        code, out, _ = run(capsys, "dispersion", "--family", "pt", "--a", "1", "--m", "0.5", "--n", "3")
        data = rows(out)
        assert code == EXIT_OK
        assert list(data[0]) == ["energy", "re_delta", "im_delta", "re_k", "im_k", "in_gap",
                                 "analytic_k", "abs_diff"]
        assert max(float(r["abs_diff"]) for r in data) < 1e-6

    def test_lame_dispersion_flags_gaps(self, capsys):
        data = rows(run(capsys, "dispersion", "--a", "1", "--m", "0.5", "--e-min", "0.2", "--e-max", "1.2",
                        "--n", "3")[1])
        assert [r["in_gap"] for r in data] == ["true", "false", "true"]

    def test_elliptic_eval(self, capsys):
        data = rows(run(capsys, "elliptic", "eval", "--u", "0,1", "--m", "0.5")[1])
        assert float(data[1]["sn"]) == pytest.approx(0.80300182489564388764, abs=1e-14)
        assert float(data[0]["K"]) == pytest.approx(1.8540746773013719184, abs=1e-14)
