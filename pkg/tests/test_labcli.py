import csv
import json
import math
import os

import pytest

from pathlab.labcli import (
    ExperimentConfig,
    SummaryStats,
    build_config,
    load_config_file,
    main,
)


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# cov scaling smoke\n"
        "experiment = cov_scaling\n"
        "seed = 11\n"
        "t = 100,200\n"
        "ell = 4\n",
        encoding="utf-8")
    config = build_config(load_config_file(str(cfg)), {"trials": 7})
    assert config.experiment == "cov_scaling"
    assert config.master_seed == 11
    assert config.t_list == (100, 200)
    assert config.ell_list == (4,)
    assert config.trials == 7  # flag wins over file default


def test_config_rejects_unknown_key():
    with pytest.raises(ValueError, match="unknown config key"):
        build_config({"tt": "5"}, {})


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="nope")
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(threads=0)
    with pytest.raises(ValueError):
        ExperimentConfig(fmt="xml")


def test_summary_stats():
    s = SummaryStats.from_values([1.0, 2.0, 3.0, 4.0, 5.0],
                                 tail={"tail_1": (3.0, 1.0)})
    assert s.n_obs == 5
    assert s.mean == 3.0
    assert s.vmin == 1.0 and s.vmax == 5.0
    assert s.q50 == 3.0
    assert s.tail_freq["tail_1"] == pytest.approx(2 / 5)  # 1 and 5 exceed


def run_cli(args):
    return main(args)


def test_cov_scaling_end_to_end(tmp_path):
    out = str(tmp_path / "lab")
    rc = run_cli(["--experiment", "cov_scaling", "--seed", "3",
                  "--trials", "8", "--t", "200,400", "--ell", "4,8",
                  "--out", out])
    assert rc == 0
    with open(os.path.join(out, "records.csv"), newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["experiment", "seed", "trial", "t", "ell",
                       "metric", "value"]
    body = rows[1:]
    assert len(body) == 2 * 2 * 8 * 2  # cells x trials x {cov, ratio}
    assert {r[5] for r in body} == {"cov", "ratio"}
    summary = json.loads(read(os.path.join(out, "summary.json")))
    assert summary["all_passed"] is True
    assert "ratio_spread_le_2.5" in summary["predicates"]
    assert os.path.exists(os.path.join(out, "plot_ratio_ell4.csv"))
    assert os.path.exists(os.path.join(out, "plot_ratio_ell8.csv"))


def test_determinism_across_threads(tmp_path):
    args = ["--experiment", "cov_scaling", "--seed", "42", "--trials", "6",
            "--t", "300", "--ell", "4,8"]
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    assert run_cli(args + ["--out", a, "--threads", "1"]) == 0
    assert run_cli(args + ["--out", b, "--threads", "3"]) == 0
    for name in ("records.csv", "summary.json", "plot_ratio_ell4.csv"):
        assert read(os.path.join(a, name)) == read(os.path.join(b, name))


def test_rerun_same_seed_is_byte_identical(tmp_path):
    args = ["--experiment", "adaptive", "--seed", "5", "--trials", "4",
            "--n", "400", "--eps", "0.3,0.4"]
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    run_cli(args + ["--out", a])
    run_cli(args + ["--out", b])
    for name in ("records.csv", "summary.json", "plot_adaptive.csv"):
        assert read(os.path.join(a, name)) == read(os.path.join(b, name))


def test_census_run_fits_constants(tmp_path):
    out = str(tmp_path / "census")
    rc = run_cli(["--experiment", "census", "--seed", "1", "--t", "4,5,6",
                  "--m", "1,2,3", "--samples", "4000", "--out", out])
    assert rc == 0
    summary = json.loads(read(os.path.join(out, "summary.json")))
    consts = summary["cells"]["constants"]
    for key in ("c1", "C1", "c2", "C2"):
        assert key in consts and consts[key] > 0
    assert summary["predicates"]["known_exact_cells"]["passed"]


def test_gnp_run(tmp_path):
    out = str(tmp_path / "gnp")
    rc = run_cli(["--experiment", "gnp", "--seed", "2", "--trials", "3",
                  "--n", "20000", "--eps", "0.3", "--delta", "1.0",
                  "--out", out])
    assert rc == 0
    with open(os.path.join(out, "records.csv"), newline="") as fh:
        rows = list(csv.reader(fh))
    metrics = {r[6] for r in rows[1:]}
    assert {"giant_size", "second_size", "two_core_size",
            "total_lower", "total_upper"} <= metrics


def test_structured_format(tmp_path):
    out = str(tmp_path / "js")
    rc = run_cli(["--experiment", "cov_scaling", "--seed", "3",
                  "--trials", "3", "--t", "100", "--ell", "4",
                  "--format", "structured", "--out", out])
    assert rc == 0
    rows = json.loads(read(os.path.join(out, "records.json")))
    assert len(rows) == 6
    assert rows[0]["experiment"] == "cov_scaling"
    assert set(rows[0]) == {"experiment", "seed", "trial", "t", "ell",
                            "metric", "value"}


def test_failing_predicate_exits_1(tmp_path, capsys):
    # ell=16 paths cannot exist in 20-vertex trees: mean ratio is 0 and
    # the spread check cannot hold
    out = str(tmp_path / "bad")
    rc = run_cli(["--experiment", "cov_scaling", "--seed", "1",
                  "--trials", "4", "--t", "20", "--ell", "16",
                  "--out", out])
    assert rc == 1
    assert "FAIL cov_scaling.ratio_spread_le_2.5" in capsys.readouterr().out


def test_budget_refusal_exits_2(tmp_path, capsys):
    out = str(tmp_path / "huge")
    rc = run_cli(["--experiment", "cov_scaling", "--seed", "1",
                  "--trials", "1", "--t", "200000", "--ell", "4",
                  "--out", out])
    assert rc == 2
    assert "refused" in capsys.readouterr().err
    assert not os.path.exists(os.path.join(out, "records.csv"))
