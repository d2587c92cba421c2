import json
import math
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "robustsimplex"]


def run_cli(*args, check=False):
    proc = subprocess.run(
        [*CLI, *args], capture_output=True, text=True, timeout=120
    )
    if check:
        assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture()
def hdc_spec_file(tmp_path):
    spec = {
        "model": "hdc",
        "epsilon": 0.2,
        "reference": {"k": 4, "entries": [0.25, 0.25, 0.25, 0.25]},
        "contaminant": {"k": 4, "entries": [1.0, 0.0, 0.0, 0.0]},
    }
    path = tmp_path / "hdc.json"
    path.write_text(json.dumps(spec))
    return path


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def test_simulate_deterministic(hdc_spec_file):
    a = run_cli("simulate", "--spec", str(hdc_spec_file), "--n", "100", "--seed", "7", check=True)
    b = run_cli("simulate", "--spec", str(hdc_spec_file), "--n", "100", "--seed", "7", check=True)
    assert a.stdout == b.stdout
    payload = json.loads(a.stdout)
    assert payload["n"] == 100
    assert len(payload["outlier_indices"]) == 20
    assert payload["seed"] == 7


def test_simulate_out_file(hdc_spec_file, tmp_path):
    out = tmp_path / "sample.json"
    proc = run_cli(
        "simulate", "--spec", str(hdc_spec_file), "--n", "10", "--seed", "1",
        "--out", str(out), check=True,
    )
    assert proc.stdout == ""
    assert json.loads(out.read_text())["n"] == 10


def test_simulate_bad_epsilon_exit_2(tmp_path):
    spec = {
        "model": "hc",
        "epsilon": 0.7,
        "reference": {"k": 2, "entries": [0.5, 0.5]},
        "contaminant": {"k": 2, "entries": [1.0, 0.0]},
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spec))
    proc = run_cli("simulate", "--spec", str(path), "--n", "10")
    assert proc.returncode == 2
    assert "epsilon" in proc.stderr


def test_simulate_zero_n_exit_2(hdc_spec_file):
    proc = run_cli("simulate", "--spec", str(hdc_spec_file), "--n", "0")
    assert proc.returncode == 2


def test_simulate_missing_file_exit_2():
    proc = run_cli("simulate", "--spec", "/nonexistent.json", "--n", "5")
    assert proc.returncode == 2


def test_simulate_rejects_csv_format(hdc_spec_file):
    proc = run_cli("simulate", "--spec", str(hdc_spec_file), "--n", "5", "--format", "csv")
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------


@pytest.fixture()
def tiny_sample_file(tmp_path):
    sample = {
        "n": 2,
        "k": 2,
        "observations": [[1.0, 0.0], [0.0, 1.0]],
        "outlier_indices": None,
        "seed": None,
    }
    path = tmp_path / "sample.json"
    path.write_text(json.dumps(sample))
    return path


def test_estimate_with_truth(tiny_sample_file, tmp_path):
    truth = tmp_path / "truth.json"
    truth.write_text(json.dumps({"k": 2, "entries": [0.5, 0.5]}))
    proc = run_cli("estimate", "--sample", str(tiny_sample_file), "--truth", str(truth), check=True)
    report = json.loads(proc.stdout)
    assert report["mean"]["entries"] == [0.5, 0.5]
    for key in ("tv", "hellinger", "l2", "linf", "wasserstein"):
        assert report["distances"][key] == 0.0


def test_estimate_without_truth(tiny_sample_file):
    proc = run_cli("estimate", "--sample", str(tiny_sample_file), check=True)
    report = json.loads(proc.stdout)
    assert "distances" not in report
    assert report["support_size"] == 2


def test_estimate_dimension_mismatch_exit_2(tiny_sample_file, tmp_path):
    truth = tmp_path / "truth3.json"
    truth.write_text(json.dumps({"k": 3, "entries": [0.5, 0.25, 0.25]}))
    proc = run_cli("estimate", "--sample", str(tiny_sample_file), "--truth", str(truth))
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# confidence
# ---------------------------------------------------------------------------


def test_confidence_l2_example():
    proc = run_cli(
        "confidence", "--n", "100", "--s", "1", "--epsilon", "0",
        "--delta", str(math.exp(-1.0)), "--kind", "l2", check=True,
    )
    report = json.loads(proc.stdout)
    assert report["kind"] == "l2"
    assert abs(report["radius"] - 0.2) < 1e-12
    assert report["s_source"] == "given"


def test_confidence_tv_example():
    proc = run_cli(
        "confidence", "--n", "100", "--s", "10", "--epsilon", "0.05",
        "--delta", "0.05", "--kind", "tv", check=True,
    )
    assert abs(json.loads(proc.stdout)["radius"] - 0.661) < 5e-4


def test_confidence_from_sample(tiny_sample_file):
    proc = run_cli(
        "confidence", "--n", "100", "--epsilon", "0", "--delta", "0.1",
        "--kind", "tv", "--from-sample", str(tiny_sample_file), check=True,
    )
    report = json.loads(proc.stdout)
    assert report["s"] == 2
    assert report["s_source"] == "sample_support"


def test_confidence_formats_agree():
    args = ["confidence", "--n", "100", "--s", "10", "--epsilon", "0.05",
            "--delta", "0.05", "--kind", "tv"]
    js = json.loads(run_cli(*args, "--format", "json", check=True).stdout)
    csv_lines = run_cli(*args, "--format", "csv", check=True).stdout.splitlines()
    header, row = csv_lines[0].split(","), csv_lines[1].split(",")
    record = dict(zip(header, row))
    assert record["kind"] == js["kind"]
    for field in ("radius", "epsilon", "delta"):
        assert float(record[field]) == pytest.approx(js[field], rel=1e-11)
    assert int(record["n"]) == js["n"] and int(record["s"]) == js["s"]


def test_confidence_bad_delta_exit_2():
    proc = run_cli("confidence", "--n", "10", "--s", "1", "--epsilon", "0",
                   "--delta", "1.5", "--kind", "tv")
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# experiment
# ---------------------------------------------------------------------------


@pytest.fixture()
def plan_file(tmp_path):
    plan = {
        "spec": {
            "model": "hc",
            "epsilon": 0.2,
            "reference": {"k": 4, "entries": [0.25, 0.25, 0.25, 0.25]},
            "contaminant": {"k": 4, "entries": [1.0, 0.0, 0.0, 0.0]},
        },
        "sweep": {"axis": "n", "values": [20]},
        "trials": 1,
        "distances": ["tv", "l2"],
        "root_seed": 9,
    }
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(plan))
    return path


def test_experiment_row_per_distance(plan_file):
    proc = run_cli("experiment", "--plan", str(plan_file), check=True)
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "sweep_axis,sweep_value,distance,mean_error,q05,q95,trials,mc_stderr"
    assert len(lines) == 3
    assert lines[1].startswith("n,20,tv,")
    assert lines[2].startswith("n,20,l2,")


def test_experiment_reruns_identical(plan_file):
    a = run_cli("experiment", "--plan", str(plan_file), check=True)
    b = run_cli("experiment", "--plan", str(plan_file), check=True)
    assert a.stdout == b.stdout


def test_experiment_thread_count_invariant(plan_file):
    a = run_cli("experiment", "--plan", str(plan_file), "--threads", "1", check=True)
    b = run_cli("experiment", "--plan", str(plan_file), "--threads", "8", check=True)
    assert a.stdout == b.stdout


def test_experiment_formats_agree(plan_file):
    csv_out = run_cli("experiment", "--plan", str(plan_file), check=True).stdout
    js = json.loads(
        run_cli("experiment", "--plan", str(plan_file), "--format", "json", check=True).stdout
    )
    csv_rows = csv_out.strip().splitlines()[1:]
    assert len(csv_rows) == len(js["rows"])
    for line, row in zip(csv_rows, js["rows"]):
        fields = line.split(",")
        assert fields[2] == row["distance"]
        assert float(fields[3]) == pytest.approx(row["mean_error"], rel=1e-11)
        assert float(fields[7]) == pytest.approx(row["mc_stderr"], rel=1e-11, abs=1e-15)


def test_experiment_trials_override(plan_file):
    proc = run_cli("experiment", "--plan", str(plan_file), "--trials", "3", check=True)
    for line in proc.stdout.strip().splitlines()[1:]:
        assert line.split(",")[6] == "3"


def test_experiment_invalid_axis_exit_2(plan_file, tmp_path):
    plan = json.loads(plan_file.read_text())
    plan["sweep"]["axis"] = "dimension"
    bad = tmp_path / "bad_plan.json"
    bad.write_text(json.dumps(plan))
    proc = run_cli("experiment", "--plan", str(bad))
    assert proc.returncode == 2
    assert "axis" in proc.stderr


# ---------------------------------------------------------------------------
# rates
# ---------------------------------------------------------------------------


def test_rates_exact_power_law(tmp_path):
    lines = ["sweep_axis,sweep_value,distance,mean_error,q05,q95,trials,mc_stderr"]
    for n in (10, 100, 1000):
        err = 2.0 * n ** -0.5
        lines.append(f"n,{n},tv,{err!r},{err!r},{err!r},1,0")
    csv_path = tmp_path / "rows.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    proc = run_cli("rates", "--csv", str(csv_path), "--distance", "tv", "--axis", "n", check=True)
    report = json.loads(proc.stdout)
    assert abs(report["slope"] + 0.5) < 1e-9
    assert report["points"] == 3


def test_rates_insufficient_points_exit_2(tmp_path):
    csv_path = tmp_path / "rows.csv"
    csv_path.write_text(
        "sweep_axis,sweep_value,distance,mean_error,q05,q95,trials,mc_stderr\n"
        "n,10,tv,0.5,0.5,0.5,1,0\n"
    )
    proc = run_cli("rates", "--csv", str(csv_path), "--distance", "tv", "--axis", "n")
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# ingest
# ---------------------------------------------------------------------------


def test_ingest_profile(tmp_path):
    f1 = tmp_path / "a.txt"
    f1.write_text("One two. Three!")
    f2 = tmp_path / "b.txt"
    f2.write_text("Four five six seven.")
    proc = run_cli("ingest", "--k", "10", str(f1), str(f2), check=True)
    profile = json.loads(proc.stdout)
    assert profile["name"] == "a"
    assert profile["total_sentences"] == 3
    assert profile["counts"][0] == 1
    assert profile["counts"][1] == 1
    assert profile["counts"][3] == 1


def test_ingest_reports_bad_bytes_on_stderr(tmp_path):
    f1 = tmp_path / "weird.txt"
    f1.write_bytes(b"Hello \xff world. Bye.")
    proc = run_cli("ingest", "--k", "5", "--name", "weird", str(f1), check=True)
    assert "invalid UTF-8" in proc.stderr
    assert json.loads(proc.stdout)["name"] == "weird"


def test_ingest_empty_exit_2(tmp_path):
    f1 = tmp_path / "empty.txt"
    f1.write_text("")
    proc = run_cli("ingest", str(f1))
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# parser behavior
# ---------------------------------------------------------------------------


def test_unknown_subcommand_exit_2():
    assert run_cli("frobnicate").returncode == 2


def test_missing_required_flag_exit_2():
    assert run_cli("simulate", "--n", "5").returncode == 2
