"""Monte-Carlo experiments pairing empirical statistics with analytic predictions.

Each trial draws from its own stream ``stream(seed, trial, cell)``, so the
records depend only on the configuration, never on scheduling.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import analytic
from .deep import DeepPartition
from .errors import InvalidArgument, KTreesError
from .graph import WeightDistribution, gen_gnm, gen_gnp, gen_weighted_complete, kcore
from .matroid import ForestFamily
from .solver import min_weight_union, run_process
from .streams import stream

KINDS = ("weight", "structure", "rank", "core", "density", "process")
MAX_N = 20000


class OutputError(KTreesError, OSError):
    """Writing results failed."""


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    n: int
    k: int
    trials: int = 10
    seed: int = 0
    distribution: WeightDistribution = field(default_factory=WeightDistribution)
    degree_grid: tuple[float, ...] = ()
    checkpoints: tuple[int, ...] = ()
    output: str | None = None
    workers: int = 1
    allow_large: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise InvalidArgument(f"trials must be >= 1, got {self.trials}")
        if self.n < 2:
            raise InvalidArgument(f"n must be >= 2, got {self.n}")
        if self.n > MAX_N and not self.allow_large:
            raise InvalidArgument(f"n={self.n} exceeds {MAX_N}; pass allow_large to override")
        if self.k < 1:
            raise InvalidArgument(f"k must be >= 1, got {self.k}")
        if self.seed < 0:
            raise InvalidArgument(f"seed must be non-negative, got {self.seed}")
        grid = tuple(float(d) for d in self.degree_grid)
        if list(grid) != sorted(grid) or any(d < 0 for d in grid):
            raise InvalidArgument("degree grid must be non-negative and sorted ascending")
        object.__setattr__(self, "degree_grid", grid)
        marks = tuple(int(m) for m in self.checkpoints)
        if list(marks) != sorted(marks):
            raise InvalidArgument("checkpoints must be sorted ascending")
        object.__setattr__(self, "checkpoints", marks)
        if self.kind in ("structure", "rank", "core") and not grid:
            raise InvalidArgument(f"{self.kind} experiments need a degree grid")
        if self.kind in ("rank", "density") and self.k < 2:
            raise InvalidArgument(f"{self.kind} predictions need k >= 2")
        if self.kind == "process" and not marks:
            raise InvalidArgument("process experiments need checkpoints")


@dataclass(frozen=True)
class ExperimentRecord:
    """One row of output.

    Trial rows have ``trial >= 0`` and ``std`` NaN.  Summary rows have
    ``trial = -1``, the trial mean in ``empirical`` and the sample standard
    deviation in ``std``.
    """

    kind: str
    n: int
    k: int
    seed: int
    trial: int
    d: float
    metric: str
    empirical: float
    predicted: float
    rel_error: float
    std: float = math.nan
    status: str = "ok"


COLUMNS = tuple(f.name for f in fields(ExperimentRecord))


def relative_error(emp: float, pred: float) -> float:
    return abs(emp - pred) / max(abs(pred), 1e-12)


def _record(cfg, trial, d, metric, emp, pred, status="ok"):
    return ExperimentRecord(cfg.kind, cfg.n, cfg.k, cfg.seed, trial, d, metric,
                            float(emp), float(pred), relative_error(emp, pred), math.nan, status)


def _m_for(n: int, d: float) -> int:
    return min(int(math.floor(d * n / 2.0)), n * (n - 1) // 2)


def _deep_partition(n: int, k: int, g) -> tuple[DeepPartition, int]:
    fam = ForestFamily(n, k)
    for eid, (u, v) in enumerate(g.edges.tolist()):
        fam.try_insert(u, v, eid)
    return DeepPartition.from_labels(k, fam.component_labels()), fam.rank


def _lam_or_zero(k: int, d: float) -> float:
    try:
        return analytic.lambda_root(k, d)
    except KTreesError:
        return 0.0


# ------------------------------------------------------------------ trials


def _weight_trial(cfg: ExperimentConfig, trial: int) -> list[ExperimentRecord]:
    pred = analytic.limit_weight(cfg.k, cfg.distribution.slope)
    wg = gen_weighted_complete(cfg.n, cfg.distribution, stream(cfg.seed, trial))
    sol = min_weight_union(wg, cfg.k)
    status = "ok" if sol.feasible else "failed"
    return [_record(cfg, trial, math.nan, "total_weight", sol.total_weight, pred, status)]


def _structure_trial(cfg, trial):
    out = []
    for j, d in enumerate(cfg.degree_grid):
        g = gen_gnm(cfg.n, _m_for(cfg.n, d), stream(cfg.seed, trial, j))
        part, _ = _deep_partition(cfg.n, cfg.k, g)
        b = analytic.beta(cfg.k, d)
        out.append(_record(cfg, trial, d, "largest_fraction", part.largest / cfg.n, b))
        out.append(_record(cfg, trial, d, "nontrivial_count", len(part.nontrivial),
                           1.0 if b > 0 else 0.0))
    return out


def _rank_trial(cfg, trial):
    out = []
    for j, d in enumerate(cfg.degree_grid):
        g = gen_gnm(cfg.n, _m_for(cfg.n, d), stream(cfg.seed, trial, j))
        _, rank = _deep_partition(cfg.n, cfg.k, g)
        out.append(_record(cfg, trial, d, "rank_density", rank / cfg.n,
                           analytic.rank_density(cfg.k, d)))
    return out


def _core_trial(cfg, trial):
    out = []
    kappa = cfg.k + 1
    for j, d in enumerate(cfg.degree_grid):
        g = gen_gnp(cfg.n, min(d / cfg.n, 1.0), stream(cfg.seed, trial, j))
        core = kcore(g, kappa)
        lam = _lam_or_zero(kappa, d)
        frac = analytic.pois_tail(kappa, lam)
        dens = analytic.truncated_mean(kappa, lam) if lam > 0 else 0.0
        out.append(_record(cfg, trial, d, "core_fraction", core.size / cfg.n, frac))
        out.append(_record(cfg, trial, d, "core_density", core.density, dens))
        nxt = kcore(g, kappa + 1)
        lam2 = _lam_or_zero(kappa + 1, d)
        out.append(_record(cfg, trial, d, "next_core_fraction", nxt.size / cfg.n,
                           analytic.pois_tail(kappa + 1, lam2)))
    return out


def _density_trial(cfg, trial):
    grid = cfg.degree_grid or (analytic.deep_threshold(cfg.k),)
    out = []
    for j, d in enumerate(grid):
        g = gen_gnm(cfg.n, _m_for(cfg.n, d), stream(cfg.seed, trial, j))
        _, rank = _deep_partition(cfg.n, cfg.k, g)
        out.append(_record(cfg, trial, d, "deficit", (g.m - rank) / cfg.n, 0.0))
    return out


def _process_trial(cfg, trial):
    trace = run_process(cfg.n, cfg.k, cfg.checkpoints, int(stream(cfg.seed, trial).integers(2**63)))
    out = []
    for cp in trace.checkpoints:
        d = 2.0 * cp.m / cfg.n
        if cfg.k >= 2:
            out.append(_record(cfg, trial, d, "rank_density", cp.rank / cfg.n,
                               analytic.rank_density(cfg.k, d)))
        out.append(_record(cfg, trial, d, "largest_fraction",
                           cp.largest_nontrivial_component / cfg.n, analytic.beta(cfg.k, d)))
        lam = _lam_or_zero(cfg.k + 1, d)
        out.append(_record(cfg, trial, d, "core_fraction", cp.core_size / cfg.n,
                           analytic.pois_tail(cfg.k + 1, lam)))
    return out


_TRIALS = {
    "weight": _weight_trial,
    "structure": _structure_trial,
    "rank": _rank_trial,
    "core": _core_trial,
    "density": _density_trial,
    "process": _process_trial,
}


def _run_one(args):
    cfg, trial = args
    return _TRIALS[cfg.kind](cfg, trial)


def summarize(cfg: ExperimentConfig, rows: list[ExperimentRecord]) -> list[ExperimentRecord]:
    """One summary row per (d, metric) cell, in first-appearance order."""
    cells: dict[tuple, list[ExperimentRecord]] = {}
    for r in rows:
        if r.status == "ok":
            cells.setdefault((r.d if not math.isnan(r.d) else None, r.metric), []).append(r)
    out = []
    for (d, metric), group in cells.items():
        vals = np.array([r.empirical for r in group])
        mean = float(vals.mean())
        std = float(vals.std(ddof=1)) if len(vals) > 1 else math.nan
        pred = group[0].predicted
        out.append(ExperimentRecord(cfg.kind, cfg.n, cfg.k, cfg.seed, -1,
                                    math.nan if d is None else d, metric, mean, pred,
                                    relative_error(mean, pred), std, "summary"))
    return out


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """Per-trial rows in trial order followed by the summary rows."""
    tasks = [(cfg, t) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_one, tasks))
    else:
        chunks = [_run_one(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    return rows + summarize(cfg, rows)


def _check_kind(cfg, kind):
    if cfg.kind != kind:
        raise InvalidArgument(f"expected a {kind} config, got {cfg.kind}")
    return run_experiment(cfg)


def run_weight_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    return _check_kind(cfg, "weight")


def run_structure_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    return _check_kind(cfg, "structure")


def run_rank_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    return _check_kind(cfg, "rank")


def run_core_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    return _check_kind(cfg, "core")


def run_density_check(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """Dependent-edge deficit ``(|E| - rank) / n`` on G(n, dn/2); the grid defaults to ``[d*_k]``."""
    return _check_kind(cfg, "density")


# --------------------------------------------------------------------- CSV


def _fmt(value) -> str:
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.10f}"
    return str(value)


def format_rows(records) -> list[list[str]]:
    return [[_fmt(getattr(r, c)) for c in COLUMNS] for r in records]


def emit_csv(records, path) -> None:
    """Write records under a header row, floats with 10 decimals."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS)
            writer.writerows(format_rows(records))
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


PROCESS_COLUMNS = ("m", "rank", "largest_nontrivial_component", "nontrivial_component_count",
                   "core_size", "core_edges")


def emit_process_csv(trace, path) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(PROCESS_COLUMNS)
            for cp in trace.checkpoints:
                writer.writerow([getattr(cp, c) for c in PROCESS_COLUMNS])
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
