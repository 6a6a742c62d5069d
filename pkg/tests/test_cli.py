import csv
import io
import json

import pytest

from kafourier.cli import DEFAULT_CONFIG, RunConfig, main, run_sweep

SMALL = {
    "params": [[1, 0.5, 2.0], [1, -3.0, 2.0]],
    "families": ["unitarity", "hy", "paley", "multiplier"],
    "p_grid": [1.5],
    "pq_grid": [[1.5, 3.0]],
    "hyp_b": [],
    "n_basis": 24,
    "opnorm_samples": 8,
}


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_check_params(capsys):
    code, out, _ = _run(capsys, "check-params", "--k", "0.5", "--a", "2")
    assert code == 0 and json.loads(out)["admissible"] is True
    code, out, _ = _run(capsys, "check-params", "--k", "-2", "--a", "2")
    assert code == 0 and json.loads(out)["admissible"] is False


def test_measure(capsys):
    code, out, _ = _run(capsys, "measure", "--k", "0.5", "--a", "2", "--psi", "indicator:R=1",
                        "--t", "0.5")
    d = json.loads(out)
    assert code == 0 and d["measure"] == pytest.approx(1.0)


def test_oscillator(capsys, tmp_path):
    path = tmp_path / "D.csv"
    code, out, _ = _run(capsys, "oscillator", "--k", "0", "--a", "2", "--n", "8",
                        "--dump-matrix", str(path))
    assert code == 0
    assert json.loads(out)["eigvals"][0] == pytest.approx(-1.0)
    assert len(_csv(path.read_text())) == 9


def test_transform_round_trip(capsys, tmp_path):
    fwd = tmp_path / "f.csv"
    code, _, err = _run(capsys, "transform", "--k", "0.5", "--a", "2", "--n", "16",
                        "--output", str(fwd))
    assert code == 0 and json.loads(err)["projection_residual"] < 1e-10
    rows = _csv(fwd.read_text())
    assert rows[0] == ["node", "re", "im"]
    # 17 significant digits
    assert all(len(v.replace("-", "").replace(".", "").split("e")[0]) <= 17 for v in rows[1])
    back = tmp_path / "b.csv"
    code, _, _ = _run(capsys, "transform", "--k", "0.5", "--a", "2", "--n", "16",
                      "--input", str(fwd), "--inverse", "--output", str(back))
    assert code == 0


def test_kernel(capsys):
    code, out, _ = _run(capsys, "kernel", "--k", "0", "--a", "2", "--xi", "0.5", "--x", "1",
                        "--extrapolate", "--normalized")
    d = json.loads(out)
    assert code == 0 and d["abs"] == pytest.approx(1.0, abs=1e-2)


def test_verify_and_bound_and_opnorm(capsys):
    code, out, _ = _run(capsys, "verify", "--k", "0.5", "--a", "2", "--n", "16",
                        "--which", "paley", "--p", "1.5")
    assert code == 0 and _csv(out)[0] == ["tuple", "lhs", "rhs_core", "ratio"]
    code, out, _ = _run(capsys, "verify", "--k", "0.5", "--a", "2", "--n", "16",
                        "--which", "hyp", "--p", "1.5")
    assert code == 2
    code, out, _ = _run(capsys, "bound", "--k", "0.5", "--a", "2", "--h", "one",
                        "--p", "2", "--q", "2")
    assert code == 0 and json.loads(out)["finite"] is False
    code, out, _ = _run(capsys, "opnorm", "--k", "0.5", "--a", "2", "--n", "16",
                        "--h", "indicator:R=1", "--p", "2", "--q", "2", "--samples", "8")
    assert code == 0 and json.loads(out)["max_ratio"] <= 1 + 1e-6


def test_heat_and_wave(capsys, tmp_path):
    diag = tmp_path / "d.json"
    code, out, _ = _run(capsys, "heat", "--k", "0", "--a", "2", "--n", "64",
                        "--n-time", "32", "--diagnostics", str(diag))
    assert code == 0
    assert json.loads(diag.read_text())["guaranteed"] is True
    assert _csv(out)[0] == ["t", "norm_l2"] and len(_csv(out)) == 34
    code, out, err = _run(capsys, "wave", "--k", "0", "--a", "2", "--n", "64", "--n-time", "32",
                          "--u1", "basis:n=2,scale=0.01")
    assert code == 0 and json.loads(err)["kind"] == "wave"


def test_heat_beyond_tstar(capsys):
    code, _, err = _run(capsys, "heat", "--k", "0", "--a", "2", "--n", "32", "--T", "100",
                        "--n-time", "8")
    assert code == 2 and "BeyondExistenceTime" in err


def test_inadmissible_params_exit_code(capsys):
    code, _, err = _run(capsys, "transform", "--k", "-3", "--a", "2")
    assert code == 2 and "error" in err


def test_sweep_deterministic(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL))
    outs = []
    for name, workers in (("one", "1"), ("two", "2")):
        out = tmp_path / name
        code, text, _ = _run(capsys, "sweep", "--config", str(cfg), "--out", str(out),
                             "--workers", workers)
        assert code == 0
        outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outs[0] == outs[1]
    summary = json.loads(outs[0]["summary.json"])
    # the inadmissible parameter set is isolated as errors, not a crash
    assert summary["errors"] and summary["case_total"] > summary["pass_total"]
    assert all(e.startswith("InadmissibleParams") for e in summary["errors"].values())
    assert all("k=-3" in key for key in summary["errors"])


def test_sweep_empty_config(tmp_path):
    bundle = run_sweep(RunConfig.from_dict({"params": [], "families": []}))
    assert bundle["summary"]["case_total"] == 0 and bundle["rows"] == {}


@pytest.mark.parametrize("content", ["{not json", json.dumps({"bogus_key": 1}),
                                     json.dumps({"params": "nope"})])
def test_sweep_bad_config(capsys, tmp_path, content):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    code, _, err = _run(capsys, "sweep", "--config", str(cfg), "--out", str(tmp_path / "o"))
    assert code == 2 and err.startswith("error")


def test_sweep_missing_config(capsys, tmp_path):
    code, _, _ = _run(capsys, "sweep", "--config", str(tmp_path / "none.json"))
    assert code == 2


def test_dump_default(capsys):
    code, out, _ = _run(capsys, "sweep", "--dump-default")
    assert code == 0 and json.loads(out) == json.loads(json.dumps(DEFAULT_CONFIG))
