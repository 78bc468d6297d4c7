from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ptrbf.core.config import get_settings
from ptrbf.core.errors import DegenerateVarianceError, PtRbfError, UnsupportedSchemeError
from ptrbf.domain.models.dataset import Dataset
from ptrbf.domain.models.moment_report import MomentEstimate
from ptrbf.domain.models.network import NetworkDims, PtRbfNetwork
from ptrbf.domain.models.run_record import RunRecord
from ptrbf.infrastructure import storage
from ptrbf.schemas.config import (
    DatasetConfig,
    DumpConfig,
    ExperimentConfig,
    InitSettings,
    Scheme,
    StatsConfig,
    TrainConfig,
)
from ptrbf.schemas.reports import CellResult, CellStatus, ComparisonReport, MomentRow, SchemeSummary
from ptrbf.services.cplx import Rng, complex_variance
from ptrbf.services.init import apply_normalization, initialize, normalize_dataset, normalize_symbols
from ptrbf.services.stats_lab import mc_estimate
from ptrbf.services.task_gen import gen_dataset, qam_alphabet, split_dataset
from ptrbf.services.training import (
    default_rates,
    epochs_to_threshold,
    mean_curve_db,
    steady_state_db,
    train,
)
from ptrbf.services.worker_pool import get_pool

logger = logging.getLogger(__name__)

# data root.child(0, run), init root.child(1, run, scheme), shuffle root.child(2, run)
DATA_STREAM, INIT_STREAM, SHUFFLE_STREAM = 0, 1, 2
PARAMETER_CLASSES = ("weights", "bias", "centers", "variances")

CURVE_COLUMNS = ["scheme", "run", "epoch", "train_mse_db", "val_mse_db"]
SUMMARY_COLUMNS = [
    "scheme",
    "runs",
    "final_train_mse_db",
    "final_val_mse_db",
    "steady_state_db",
    "epochs_to_threshold",
]
CELL_COLUMNS = [
    "scheme",
    "run",
    "status",
    "reason",
    "final_train_mse_db",
    "final_val_mse_db",
    "epochs_to_threshold",
]
MOMENT_COLUMNS = list(MomentRow.model_fields)
CONVENTION_COLUMNS = [
    "quantity",
    "monte_carlo",
    "closed_total",
    "closed_component",
    "ratio_total",
    "ratio_component",
    "matched",
]


def arch_label(neurons: list[int]) -> str:
    return "-".join(str(n) for n in neurons)


def scheme_key(scheme: Scheme) -> int:
    return list(Scheme).index(Scheme(scheme))


def config_hash(config: ExperimentConfig | StatsConfig | DumpConfig) -> str:
    payload = json.dumps(config.model_dump(mode="json"), sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass
class PreparedData:
    train: Dataset
    validation: Dataset | None
    constellation: np.ndarray


def normalizes(scheme: Scheme) -> bool:
    return Scheme(scheme) == Scheme.proposed


def _alphabet(dataset: Dataset, order: int) -> np.ndarray:
    return dataset.alphabet if dataset.alphabet is not None else qam_alphabet(order).symbols


def prepare_data(
    dataset_config: DatasetConfig,
    n_train: int,
    init: InitSettings,
    rng: Rng,
    scheme: Scheme = Scheme.proposed,
) -> PreparedData:
    """Only the proposed scheme normalizes; validation reuses the training statistics."""
    dataset = gen_dataset(dataset_config, rng)
    train_set, val_set = split_dataset(dataset, n_train)
    alphabet = _alphabet(dataset, dataset_config.order)
    if not normalizes(scheme):
        return PreparedData(train=train_set, validation=val_set, constellation=alphabet.copy())
    train_set, stats = normalize_dataset(train_set, init.spec_for(scheme, dataset_config.order))
    val_set = apply_normalization(val_set, stats)
    return PreparedData(train=train_set, validation=val_set, constellation=normalize_symbols(alphabet, stats))


def _prepare_run(config: ExperimentConfig, run: int, root: Rng, scheme: Scheme) -> PreparedData:
    return prepare_data(
        config.dataset_config(config.seed), config.train_count, config.init, root.child(DATA_STREAM, run), scheme
    )


def init_network(
    neurons: list[int],
    scheme: Scheme,
    init: InitSettings,
    order: int,
    data: PreparedData,
    rng: Rng,
) -> PtRbfNetwork:
    dims = NetworkDims.from_architecture(data.train.n_inputs, neurons, data.train.n_outputs)
    spec = init.spec_for(scheme, order)
    return initialize(dims, spec, rng, inputs=data.train.inputs, constellation=data.constellation)


def _train_config(config: ExperimentConfig, scheme: Scheme, depth: int) -> TrainConfig:
    rates = config.rates if config.rates is not None else default_rates(scheme, depth)
    return TrainConfig(epochs=config.epochs, rates=rates, shuffle_seed=config.seed)


@dataclass
class CellOutcome:
    cell: CellResult
    record: RunRecord | None = None
    network: PtRbfNetwork | None = None


def run_cell(config: ExperimentConfig, neurons: list[int], scheme: Scheme, run: int, threshold_db: float) -> CellOutcome:
    label = arch_label(neurons)
    root = Rng(config.seed)
    try:
        data = _prepare_run(config, run, root, scheme)
        net = init_network(
            neurons, scheme, config.init, config.order, data, root.child(INIT_STREAM, run, scheme_key(scheme))
        )
        net, record = train(
            net,
            data.train,
            _train_config(config, scheme, len(neurons)),
            validation=data.validation,
            rng=root.child(SHUFFLE_STREAM, run),
        )
    except (UnsupportedSchemeError, DegenerateVarianceError) as exc:
        logger.info("cell skipped arch=%s scheme=%s run=%d reason=%s", label, scheme.value, run, exc)
        return CellOutcome(
            CellResult(architecture=label, scheme=scheme.value, run=run, status=CellStatus.skipped, reason=str(exc))
        )
    except PtRbfError as exc:
        logger.warning("cell failed arch=%s scheme=%s run=%d error=%s", label, scheme.value, run, exc)
        return CellOutcome(
            CellResult(architecture=label, scheme=scheme.value, run=run, status=CellStatus.failed, reason=str(exc))
        )

    final_train = record.train_mse_db[-1] if record.train_mse_db else None
    final_val = record.val_mse_db[-1] if record.val_mse_db else None
    logger.info(
        "cell done arch=%s scheme=%s run=%d final_mse_db=%s wall_s=%.2f",
        label,
        scheme.value,
        run,
        "-" if final_train is None else f"{final_train:.3f}",
        record.wall_time_s,
    )
    cell = CellResult(
        architecture=label,
        scheme=scheme.value,
        run=run,
        status=CellStatus.completed,
        final_train_mse_db=final_train,
        final_val_mse_db=final_val,
        epochs_to_threshold=epochs_to_threshold(record.train_mse_db, threshold_db),
    )
    return CellOutcome(cell=cell, record=record, network=net)


def _summarize(label: str, scheme: Scheme, outcomes: list[CellOutcome], threshold_db: float, tail: int) -> SchemeSummary:
    records = [o.record for o in outcomes if o.record is not None and o.record.epochs > 0]
    summary = SchemeSummary(architecture=label, scheme=scheme.value, runs=len(records))
    if not records:
        return summary
    train_curve = mean_curve_db([r.train_mse_db for r in records])
    val_curve = mean_curve_db([r.val_mse_db for r in records if r.val_mse_db])
    summary.mean_train_curve_db = train_curve
    summary.mean_val_curve_db = val_curve
    summary.final_train_mse_db = train_curve[-1]
    summary.final_val_mse_db = val_curve[-1] if val_curve else None
    summary.steady_state_db = steady_state_db(train_curve, tail)
    summary.epochs_to_threshold = epochs_to_threshold(train_curve, threshold_db)
    return summary


def write_comparison(out_dir: Path, report: ComparisonReport, outcomes: list[CellOutcome]) -> None:
    for label in dict.fromkeys(cell.architecture for cell in report.cells):
        arch_dir = out_dir / label
        curve_rows = []
        for outcome in outcomes:
            if outcome.cell.architecture != label or outcome.record is None:
                continue
            record = outcome.record
            for epoch, train_db in enumerate(record.train_mse_db, start=1):
                val_db = record.val_mse_db[epoch - 1] if epoch <= len(record.val_mse_db) else None
                curve_rows.append([outcome.cell.scheme, outcome.cell.run, epoch, train_db, val_db])
        storage.write_rows(arch_dir / "curves.csv", CURVE_COLUMNS, curve_rows)
        storage.write_rows(
            arch_dir / "summary.csv",
            SUMMARY_COLUMNS,
            (
                [s.scheme, s.runs, s.final_train_mse_db, s.final_val_mse_db, s.steady_state_db, s.epochs_to_threshold]
                for s in report.summaries
                if s.architecture == label
            ),
        )
        storage.write_rows(
            arch_dir / "cells.csv",
            CELL_COLUMNS,
            (
                [c.scheme, c.run, c.status.value, c.reason, c.final_train_mse_db, c.final_val_mse_db, c.epochs_to_threshold]
                for c in report.cells
                if c.architecture == label
            ),
        )
    storage.write_json(out_dir / "report.json", report.model_dump(mode="json"))


def run_comparison(
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    threads: int | None = None,
) -> ComparisonReport:
    settings = get_settings()
    threshold_db = config.mse_threshold_db if config.mse_threshold_db is not None else settings.mse_threshold_db
    jobs = [
        (neurons, scheme, run)
        for neurons in config.architectures
        for scheme in config.schemes
        for run in range(config.runs)
    ]
    logger.info("compare start cells=%d architectures=%d runs=%d", len(jobs), len(config.architectures), config.runs)
    pool = get_pool(threads if threads is not None else (config.threads or settings.threads))
    outcomes = pool.map(lambda job: run_cell(config, job[0], job[1], job[2], threshold_db), jobs)

    report = ComparisonReport(config_hash=config_hash(config), threshold_db=threshold_db)
    report.cells = [o.cell for o in outcomes]
    for neurons in config.architectures:
        label = arch_label(neurons)
        for scheme in config.schemes:
            mine = [o for o in outcomes if o.cell.architecture == label and o.cell.scheme == scheme.value]
            report.summaries.append(_summarize(label, scheme, mine, threshold_db, config.steady_state_tail))

    if out_dir is not None:
        write_comparison(Path(out_dir), report, outcomes)
    failed = sum(1 for c in report.cells if c.status == CellStatus.failed)
    skipped = sum(1 for c in report.cells if c.status == CellStatus.skipped)
    logger.info("compare done cells=%d skipped=%d failed=%d", len(report.cells), skipped, failed)
    return report


def run_train(config: ExperimentConfig, out_dir: str | Path | None = None, run: int = 0) -> CellOutcome:
    """First architecture, first scheme, one run."""
    settings = get_settings()
    threshold_db = config.mse_threshold_db if config.mse_threshold_db is not None else settings.mse_threshold_db
    outcome = run_cell(config, config.architectures[0], config.schemes[0], run, threshold_db)
    if out_dir is not None and outcome.record is not None:
        out_dir = Path(out_dir)
        storage.write_run_record(out_dir / "curve.csv", outcome.record)
        if outcome.network is not None:
            storage.save_network(out_dir / "network.json", outcome.network, scheme=outcome.cell.scheme, seed=config.seed)
    return outcome


def moment_rows(estimate: MomentEstimate) -> list[MomentRow]:
    rows = []
    for report in estimate.reports:
        closed, mc = complex(report.closed_form), complex(report.monte_carlo)
        rows.append(
            MomentRow(
                quantity=report.quantity,
                closed_form_re=closed.real,
                closed_form_im=closed.imag,
                monte_carlo_re=mc.real,
                monte_carlo_im=mc.imag,
                samples=report.samples,
                deviation=report.deviation,
                tolerance=report.tolerance,
                stderr=report.stderr,
                passed=report.passed,
            )
        )
    return rows


def run_validate_stats(
    config: StatsConfig,
    out_dir: str | Path | None = None,
    threads: int | None = None,
) -> MomentEstimate:
    estimate = mc_estimate(config, Rng(config.seed), threads if threads is not None else config.threads)
    if out_dir is not None:
        out_dir = Path(out_dir)
        storage.write_rows(
            out_dir / "moments.csv",
            MOMENT_COLUMNS,
            ([getattr(row, c) for c in MOMENT_COLUMNS] for row in moment_rows(estimate)),
        )
        storage.write_rows(
            out_dir / "conventions.csv",
            CONVENTION_COLUMNS,
            (
                [p.quantity, p.monte_carlo, p.closed_total, p.closed_component, p.ratio_total, p.ratio_component, p.matched]
                for p in estimate.checks
            ),
        )
    return estimate


def parameter_histograms(net: PtRbfNetwork, bins: int) -> dict[str, list[list]]:
    """Rows (layer, part, bin_left, bin_right, count) per parameter class."""
    tables: dict[str, list[list]] = {name: [] for name in PARAMETER_CLASSES}
    for index, layer in enumerate(net.layers, start=1):
        for name in PARAMETER_CLASSES:
            values = getattr(layer, name).ravel()
            for part, data in (("re", values.real), ("im", values.imag)):
                counts, edges = np.histogram(data, bins=bins)
                for k, count in enumerate(counts):
                    tables[name].append([index, part, float(edges[k]), float(edges[k + 1]), int(count)])
    return tables


def parameter_stats(net: PtRbfNetwork) -> list[list]:
    rows = []
    for index, layer in enumerate(net.layers, start=1):
        for name in PARAMETER_CLASSES:
            values = getattr(layer, name).ravel()
            mean = complex(np.mean(values))
            rows.append([index, name, mean.real, mean.imag, complex_variance(values)])
    return rows


def dump_init(config: DumpConfig, out_dir: str | Path | None = None) -> PtRbfNetwork:
    root = Rng(config.seed)
    dataset = gen_dataset(config.dataset, root.child(DATA_STREAM, 0))
    alphabet = _alphabet(dataset, config.dataset.order)
    if normalizes(config.scheme):
        dataset, stats = normalize_dataset(dataset, config.init.spec_for(config.scheme, config.dataset.order))
        alphabet = normalize_symbols(alphabet, stats)
    data = PreparedData(train=dataset, validation=None, constellation=alphabet)
    net = init_network(
        config.architecture,
        config.scheme,
        config.init,
        config.dataset.order,
        data,
        root.child(INIT_STREAM, 0, scheme_key(config.scheme)),
    )
    if out_dir is not None:
        out_dir = Path(out_dir)
        storage.save_network(out_dir / "network.json", net, scheme=config.scheme.value, seed=config.seed)
        for name, rows in parameter_histograms(net, config.bins).items():
            storage.write_rows(out_dir / f"hist_{name}.csv", ["layer", "part", "bin_left", "bin_right", "count"], rows)
        storage.write_rows(
            out_dir / "param_stats.csv", ["layer", "class", "mean_re", "mean_im", "variance"], parameter_stats(net)
        )
    logger.info("init dumped scheme=%s architecture=%s", config.scheme.value, arch_label(config.architecture))
    return net


def run_gen_data(config: DatasetConfig, out_path: str | Path | None = None) -> Dataset:
    dataset = gen_dataset(config)
    if out_path is not None:
        storage.save_dataset(out_path, dataset)
    return dataset
