import io
import json
import subprocess
import sys

import pytest

from krphase.cli import RunConfig, default_grid, main
from krphase.invariants import KRClassVector


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text) if text.strip() else None


class TestCompute:
    def test_d2_m1(self):
        code, data = run_json("compute", "--d", "2", "--m", "1")
        assert code == 0
        assert abs(data["strong"]) == 1
        assert data["weak1"] == {"[1]": 0, "[2]": 0}
        assert data["weak2"] == {"[1,2]": 0}
        assert data["degree"]["rounded"] == -data["strong"]
        assert data["discrepancies"] == []

    def test_d1_below(self):
        code, data = run_json("compute", "--d", "1", "--m", "-5")
        assert code == 0
        assert data["strong"] == 0 and data["weak1"] == {"[1]": 1}

    def test_d3_above(self):
        code, data = run_json("compute", "--d", "3", "--m", "7")
        assert code == 0
        assert data["strong"] == 0
        assert not any(data["weak1"].values()) and not any(data["weak2"].values())

    def test_round_trip(self):
        _, data = run_json("compute", "--d", "3", "--m", "-0.5", "--axes", "1,3")
        v = KRClassVector.from_dict(data)
        assert v.axes == (1, 3)
        assert json.loads(v.to_json()) == {k: data[k] for k in v.to_dict()}

    def test_reals_are_strings(self):
        _, data = run_json("compute", "--d", "2", "--m", "0.5")
        assert data["m"] == "0.5"
        assert isinstance(data["degree"]["raw"], str)

    def test_extra_b(self):
        code, data = run_json("compute", "--d", "3", "--m", "0", "--extra-b", "1")
        assert code == 0
        assert data["coefficient"] == "Z2" and data["degree"] is None

    def test_table_format(self):
        code, text = run("compute", "--d", "1", "--m", "0.5", "--format", "table")
        assert code == 0 and "strong" in text


class TestExitCodes:
    def test_gap_closed(self):
        assert run("compute", "--d", "2", "--m", "2")[0] == 2
        assert run("compute", "--d", "3", "--m", "1", "--axes", "2")[0] == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ("compute", "--d", "2"),
            ("compute", "--d", "0", "--m", "0.5"),
            ("compute", "--d", "2", "--m", "0.5", "--axes", "3"),
            ("compute", "--d", "2", "--m", "0.5", "--grid", "33"),
            ("compute", "--d", "2", "--m", "0.5", "--extra-b", "3"),
            ("frobnicate",),
            ("classify", "--a", "0", "--b", "0"),
        ],
    )
    def test_usage(self, argv):
        assert run(*argv)[0] == 1

    def test_discrepancy(self):
        code, data = run_json("check", "--tol", "1e-30")
        assert code == 3
        assert data["failed"] is not None

    def test_compute_discrepancy(self, monkeypatch, capsys):
        import krphase.cli as cli

        monkeypatch.setattr(cli, "closed_form", lambda d, m: KRClassVector(d, m, 99))
        code, data = run_json("compute", "--d", "2", "--m", "1")
        assert code == 3
        assert data["discrepancies"]
        assert "discrepancy:" in capsys.readouterr().err

    def test_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "krphase", "gap", "--d", "2", "--m", "2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["in_closing_set"] is True


class TestGap:
    def test_closing(self):
        code, data = run_json("gap", "--d", "2", "--m", "0")
        assert code == 0
        assert data["gap"] == "0.0"
        assert data["status"] == "m in closing set"
        assert data["closing_set"] == [-2, 0, 2]

    def test_trivial(self):
        _, data = run_json("gap", "--d", "1", "--m", "0")
        assert float(data["gap"]) == pytest.approx(2.0, abs=1e-12)

    def test_positive(self):
        _, data = run_json("gap", "--d", "3", "--m", "1.5", "--grid", "64")
        assert float(data["gap"]) > 0 and data["status"] == "gapped"


class TestClassify:
    def test_1_0(self):
        _, data = run_json("classify", "--a", "1", "--b", "0")
        assert (data["j"], data["theta_role"], data["theta_sq"]) == (0, "time-reversal", 1)

    def test_3_0(self):
        _, data = run_json("classify", "--a", "3", "--b", "0")
        assert (data["j"], data["theta_role"], data["theta_sq"]) == (6, "particle-hole", -1)

    def test_0_4(self):
        _, data = run_json("classify", "--a", "0", "--b", "4", "--cartan")
        assert (data["j"], data["theta_sq"], data["chiral"], data["xi_theta_sq"]) == (5, -1, True, -1)
        assert data["cartan_label"] == "CII"


class TestCheck:
    def test_default(self):
        code, data = run_json("check")
        assert code == 0
        assert data["failed"] is None
        assert [s["suite"] for s in data["suites"]] == [
            "clifford-relations",
            "bloch-identities",
            "gap-closing-set",
            "oracle-vs-enumeration",
            "symmetry-table",
        ]

    def test_max_d_4(self):
        assert run("check", "--max-d", "4")[0] == 0


def test_run_config():
    assert RunConfig("gap", d=3).grid_n == default_grid(3) == 64
    assert default_grid(2) == 128
    with pytest.raises(ValueError):
        RunConfig("gap", d=2, grid_n=3)
