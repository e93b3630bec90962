import math

import pytest

from ktrees import analytic
from ktrees.errors import InvalidArgument
from ktrees.experiments import (
    COLUMNS,
    ExperimentConfig,
    OutputError,
    emit_csv,
    read_csv,
    relative_error,
    run_core_experiment,
    run_density_check,
    run_experiment,
    run_rank_experiment,
    run_structure_experiment,
    run_weight_experiment,
)
from ktrees.graph import WeightDistribution


def trial_rows(records):
    return [r for r in records if r.trial >= 0]


def summary_rows(records):
    return [r for r in records if r.trial < 0]


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(kind="nope", n=10, k=2),
        dict(kind="weight", n=10, k=2, trials=0),
        dict(kind="weight", n=1, k=2),
        dict(kind="weight", n=30000, k=2),
        dict(kind="rank", n=10, k=2, degree_grid=(3.0, 1.0)),
        dict(kind="rank", n=10, k=2),
        dict(kind="rank", n=10, k=1, degree_grid=(1.0,)),
        dict(kind="process", n=10, k=2),
        dict(kind="process", n=10, k=2, checkpoints=(5, 2)),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(InvalidArgument):
            ExperimentConfig(**kwargs)

    def test_large_override(self):
        assert ExperimentConfig("weight", 30000, 2, allow_large=True).n == 30000

    def test_kind_mismatch(self):
        with pytest.raises(InvalidArgument):
            run_weight_experiment(ExperimentConfig("rank", 10, 2, degree_grid=(1.0,)))


class TestRuns:
    def test_weight_records(self):
        cfg = ExperimentConfig("weight", 60, 2, trials=3, seed=4)
        recs = run_weight_experiment(cfg)
        rows, summ = trial_rows(recs), summary_rows(recs)
        assert [r.trial for r in rows] == [0, 1, 2]
        assert len(summ) == 1
        pred = analytic.limit_weight(2, 1.0)
        assert all(r.predicted == pred for r in recs)
        mean = sum(r.empirical for r in rows) / 3
        assert summ[0].empirical == pytest.approx(mean)
        assert summ[0].rel_error == pytest.approx(relative_error(mean, pred))
        assert summ[0].std > 0

    def test_weight_distribution_slope(self):
        cfg = ExperimentConfig("weight", 40, 1, trials=1, seed=1,
                               distribution=WeightDistribution("exponential", 4.0))
        rec = trial_rows(run_experiment(cfg))[0]
        assert rec.predicted == analytic.limit_weight(1, 4.0)

    def test_structure_small_n(self):
        cfg = ExperimentConfig("structure", 8, 2, trials=2, seed=3, degree_grid=(1.0, 5.0))
        recs = run_structure_experiment(cfg)
        assert len(trial_rows(recs)) == 2 * 2 * 2
        for r in recs:
            assert not math.isnan(r.empirical) and r.empirical >= 0

    def test_rank_below_threshold_is_exact(self):
        cfg = ExperimentConfig("rank", 300, 2, trials=2, seed=2, degree_grid=(1.5,))
        for r in trial_rows(run_rank_experiment(cfg)):
            assert r.empirical <= 2 * (300 - 1) / 300
            assert r.predicted == 0.75

    def test_core_nested(self):
        cfg = ExperimentConfig("core", 400, 2, trials=2, seed=6, degree_grid=(2.0, 6.0))
        recs = trial_rows(run_core_experiment(cfg))
        by = {(r.trial, r.d, r.metric): r.empirical for r in recs}
        for (t, d, metric), val in by.items():
            if metric == "core_fraction":
                assert by[(t, d, "next_core_fraction")] <= val

    def test_density_default_grid(self):
        cfg = ExperimentConfig("density", 300, 2, trials=2, seed=8)
        recs = trial_rows(run_density_check(cfg))
        assert all(r.d == analytic.deep_threshold(2) for r in recs)
        assert all(r.empirical >= 0 for r in recs)

    def test_process(self):
        cfg = ExperimentConfig("process", 100, 2, trials=2, seed=1, checkpoints=(0, 100, 300))
        recs = trial_rows(run_experiment(cfg))
        assert {r.metric for r in recs} == {"rank_density", "largest_fraction", "core_fraction"}

    def test_determinism_and_workers(self, tmp_path):
        cfg = ExperimentConfig("rank", 200, 2, trials=3, seed=5, degree_grid=(2.0, 5.0))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_experiment(cfg), a)
        par = ExperimentConfig("rank", 200, 2, trials=3, seed=5, degree_grid=(2.0, 5.0), workers=2)
        emit_csv(run_experiment(par), b)
        assert a.read_bytes() == b.read_bytes()

    def test_trials_use_distinct_streams(self):
        cfg = ExperimentConfig("weight", 50, 1, trials=4, seed=0)
        vals = [r.empirical for r in trial_rows(run_experiment(cfg))]
        assert len(set(vals)) == 4

    def test_prediction_matches_direct_call(self):
        cfg = ExperimentConfig("structure", 50, 2, trials=1, seed=0, degree_grid=(3.0, 6.0))
        for r in trial_rows(run_experiment(cfg)):
            if r.metric == "largest_fraction":
                assert r.predicted == analytic.beta(2, r.d)


class TestCSV:
    def test_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv([], path)
        assert path.read_text() == ",".join(COLUMNS) + "\n"

    def test_roundtrip(self, tmp_path):
        cfg = ExperimentConfig("weight", 30, 1, trials=2, seed=3)
        recs = run_experiment(cfg)
        path = tmp_path / "w.csv"
        emit_csv(recs, path)
        back = read_csv(path)
        assert len(back) == len(recs)
        for row, rec in zip(back, recs):
            assert row["metric"] == rec.metric and int(row["trial"]) == rec.trial
            assert float(row["empirical"]) == pytest.approx(rec.empirical, abs=1e-10)
            assert float(row["predicted"]) == pytest.approx(rec.predicted, abs=1e-10)

    def test_io_error(self, tmp_path):
        with pytest.raises(OutputError, match="missing"):
            emit_csv([], tmp_path / "missing" / "x.csv")
