import io

import pandas as pd
import pytest

from GQ.algebra.named import heisenberg, so3
from GQ.cli import main
from GQ.utils.config import DEFAULT_TOL, config

PERTURBED_SO3 = {
    "name": "so(3) perturbed",
    "basis": ["J1", "J2", "J3"],
    "brackets": [
        ["J1", "J2", [["J3", 1.0], ["J1", 0.1]]],
        ["J2", "J3", [["J1", 1.0]]],
        ["J3", "J1", [["J2", 1.0]]],
    ],
}


@pytest.fixture
def run(tmp_path):
    def invoke(*argv):
        return main(list(argv) + ["--logging.dir", str(tmp_path / "logs")])

    return invoke


def _read(path):
    return pd.read_csv(path)


def test_check_so3(run, algebra_file, capsys):
    assert run("check", "--input", algebra_file(so3())) == 0
    out = capsys.readouterr().out
    assert "semisimple: true" in out
    assert "center: 0" in out


def test_check_heisenberg(run, algebra_file, capsys):
    assert run("check", "--input", algebra_file(heisenberg(1))) == 0
    out = capsys.readouterr().out
    assert "semisimple: false" in out
    assert "center: 1" in out


def test_check_writes_csv(run, algebra_file, tmp_path):
    out = tmp_path / "check.csv"
    assert run("check", "--input", algebra_file(so3()), "--out", str(out)) == 0
    frame = _read(out)
    assert frame["killing_rank"].iloc[0] == 3
    assert frame["jacobi_defect"].iloc[0] == 0.0


def test_check_jacobi_failure_exits_1(run, algebra_file):
    assert run("check", "--input", algebra_file(PERTURBED_SO3)) == 1


def test_check_malformed_file_exits_2(run, algebra_file, capsys):
    assert run("check", "--input", algebra_file("{ this is not json")) == 2
    assert "error" in capsys.readouterr().err


def test_check_missing_file_exits_2(run, tmp_path):
    assert run("check", "--input", str(tmp_path / "missing.json")) == 2


def test_check_needs_input(run):
    assert run("check") == 2


def test_unknown_command_exits_2(run):
    assert run("frobnicate") == 2


def test_contract_segal(run, tmp_path):
    out = tmp_path / "segal.csv"
    assert run("contract", "--path", "segal", "--samples", "9", "--out", str(out)) == 0
    frame = _read(out)
    assert len(frame) == 9
    assert list(frame["killing_rank"]) == [0] + [3] * 8


def test_contract_boson_has_regulator_column(run, tmp_path):
    out = tmp_path / "boson.csv"
    assert run("contract", "--path", "boson", "--modes", "2", "--samples", "5", "--out", str(out)) == 0
    frame = _read(out)
    assert "regulator" in frame.columns
    assert frame["regulator"].iloc[-1] > 0


def test_contract_one_sample_exits_2(run):
    assert run("contract", "--samples", "1") == 2


def test_contract_unknown_path_exits_2(run):
    assert run("contract", "--path", "torus") == 2


def test_oscillator(run, tmp_path):
    out = tmp_path / "osc.csv"
    assert run("oscillator", "--two-l", "32", "64", "128", "256", "--k", "4", "--out", str(out)) == 0
    frame = _read(out)
    assert len(frame) == 4
    assert frame["spacing"].tolist() == pytest.approx([1.0] * 4)


def test_oscillator_range_violation_exits_2(run):
    assert run("oscillator", "--two-l", "0") == 2


def test_quantify_fermions(run, tmp_path):
    out = tmp_path / "fermions.csv"
    assert run("quantify", "--sigma=-", "--modes", "3", "--out", str(out)) == 0
    frame = _read(out)
    assert list(frame.columns) == ["sigma", "cutoff", "indices", "re", "im"]
    assert len(frame) == 3**2 + 3**4


def test_quantify_bosons_and_free(run, tmp_path):
    assert run("quantify", "--sigma=+", "--modes", "2", "--cutoff", "4", "--out", str(tmp_path / "b.csv")) == 0
    assert run("quantify", "--sigma=0", "--modes", "2", "--cutoff", "4", "--out", str(tmp_path / "f.csv")) == 0


def test_stime_compact(run, tmp_path):
    out = tmp_path / "stime.csv"
    assert run("stime", "--k", "2", "--out", str(out)) == 0
    frame = _read(out)
    relations = frame["relation"].tolist()
    assert "lambda2_ratio" in relations
    assert "[x,p]" in relations
    assert frame.loc[frame["relation"] == "lambda2_ratio", "norm"].iloc[0] == pytest.approx(3.0)


def test_stime_reports_cross_term_without_gating(run, tmp_path):
    out = tmp_path / "stime.csv"
    assert run("stime", "--k", "2", "--out", str(out)) == 0
    frame = _read(out).set_index("relation")
    assert frame.loc["lambda2_cross_term", "small_param"] == "report"
    assert frame.loc["lambda2_cross_term", "norm"] == pytest.approx(-8.0)
    assert frame.loc["lambda2_mixed_xy", "norm"] <= 1e-9


def test_unwritable_log_dir_exits_2(algebra_file, tmp_path, capsys):
    blocker = tmp_path / "not_a_dir"
    blocker.write_text("", encoding="utf-8")
    code = main(["check", "--input", algebra_file(so3()), "--logging.dir", str(blocker / "logs")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_segal_rejects_spacetime_signature(run):
    assert run("contract", "--path", "segal", "--signature", "5-1") == 2


def test_casimir_irrep(run, algebra_file, capsys, tmp_path):
    out = tmp_path / "casimir.csv"
    assert run("casimir", "--input", algebra_file(so3()), "--two-l", "6", "--out", str(out)) == 0
    assert "centrality_defect" in capsys.readouterr().out
    frame = _read(out).set_index("quantity")
    assert frame.loc["rep_dim", "value"] == 7
    assert frame.loc["casimir_block_0", "value"] == pytest.approx(6.0)


def test_casimir_adjoint(run, algebra_file):
    assert run("casimir", "--input", algebra_file(so3())) == 0


def test_casimir_singular_killing_exits_2(run, algebra_file):
    assert run("casimir", "--input", algebra_file(heisenberg(1))) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["contract", "--path", "stime", "--signature", "5-1", "--samples", "5"],
        ["oscillator", "--two-l", "16", "32"],
        ["quantify", "--sigma=0", "--modes", "2", "--cutoff", "3"],
    ],
)
def test_csv_output_is_deterministic(run, tmp_path, argv):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*argv, "--seed", "7", "--out", str(first)) == 0
    assert run(*argv, "--seed", "7", "--out", str(second)) == 0
    assert first.read_bytes() == second.read_bytes()


def test_csv_to_stdout(run, capsys):
    assert run("oscillator", "--two-l", "16") == 0
    text = capsys.readouterr().out
    assert pd.read_csv(io.StringIO(text))["l"].tolist() == [8.0]


def test_events_log(run, tmp_path):
    assert run("oscillator", "--two-l", "16") == 0
    log = (tmp_path / "logs" / "events.log").read_text(encoding="utf-8")
    assert "oscillator exit=0" in log


def test_tolerance_from_environment(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("GQ_TOL", raising=False)
    assert config(["contract"]).tol == DEFAULT_TOL
    monkeypatch.setenv("GQ_TOL", "1e-3")
    assert config(["contract"]).tol == 1e-3
    assert config(["contract", "--tol", "1e-6"]).tol == 1e-6


def test_tolerance_from_dotenv(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("GQ_TOL", raising=False)
    (tmp_path / ".env").write_text("GQ_TOL=2e-4\n", encoding="utf-8")
    try:
        assert config(["contract"]).tol == 2e-4
    finally:
        monkeypatch.delenv("GQ_TOL", raising=False)


def test_bad_tolerance_exits_2(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("GQ_TOL", "tiny")
    assert main(["contract", "--logging.dont_save_events"]) == 2


def test_tolerance_flag_moves_the_verdict(run, algebra_file):
    assert run("check", "--input", algebra_file(so3()), "--tol", "1e-300") == 0
    assert run("check", "--input", algebra_file(PERTURBED_SO3), "--tol", "0.5") == 0
