"""File persistence: JSON documents and CSV tables.

Floats go through ``repr`` (csv and json both use it), so every table and
document written here reads back bit-exactly.
"""
from __future__ import annotations

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from ptrbf.core.errors import ConfigError, DimensionError, StorageError
from ptrbf.domain.models.dataset import Dataset, DatasetMeta
from ptrbf.domain.models.network import PtRbfNetwork
from ptrbf.domain.models.run_record import RunRecord
from ptrbf.schemas.network_doc import NetworkDocument

logger = logging.getLogger(__name__)

DATASET_HEADER = "# ptrbf-dataset v1 "
RUN_RECORD_COLUMNS = ["epoch", "train_mse_db", "val_mse_db"]

M = TypeVar("M", bound=BaseModel)


def _ensure_parent(path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise StorageError(str(path.parent), exc.strerror or str(exc)) from exc


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    _ensure_parent(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise StorageError(str(path), exc.strerror or str(exc)) from exc
    return path


def read_text(path: str | Path) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StorageError(str(path), exc.strerror or str(exc)) from exc


def write_json(path: str | Path, payload: Any) -> Path:
    return write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_json(path: str | Path) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StorageError(str(path), f"invalid JSON: {exc}") from exc


def read_config(path: str | Path, model: type[M]) -> M:
    payload = read_json(path)
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


# networks


def save_network(path: str | Path, net: PtRbfNetwork, scheme: str | None = None, seed: int | None = None) -> Path:
    doc = NetworkDocument.from_network(net, scheme=scheme, seed=seed)
    out = write_text(path, json.dumps(doc.model_dump(mode="json")) + "\n")
    logger.debug("network saved path=%s depth=%d", out, net.depth)
    return out


def load_network(path: str | Path) -> PtRbfNetwork:
    payload = read_json(path)
    try:
        doc = NetworkDocument.model_validate(payload)
    except ValidationError as exc:
        raise StorageError(str(path), f"not a network document: {exc}") from exc
    try:
        return doc.to_network()
    except (DimensionError, ValueError) as exc:
        raise StorageError(str(path), str(exc)) from exc


# CSV tables


def write_rows(path: str | Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    _ensure_parent(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow(["" if value is None else value for value in row])
    except OSError as exc:
        raise StorageError(str(path), exc.strerror or str(exc)) from exc
    return path


def read_rows(path: str | Path) -> list[dict[str, str]]:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            lines = [line for line in fh if not line.startswith("#")]
    except OSError as exc:
        raise StorageError(str(path), exc.strerror or str(exc)) from exc
    return list(csv.DictReader(lines))


def write_run_record(path: str | Path, record: RunRecord) -> Path:
    rows = []
    for epoch, train_db in enumerate(record.train_mse_db, start=1):
        val_db = record.val_mse_db[epoch - 1] if epoch <= len(record.val_mse_db) else None
        rows.append([epoch, train_db, val_db])
    return write_rows(path, RUN_RECORD_COLUMNS, rows)


def read_run_record(path: str | Path) -> RunRecord:
    record = RunRecord()
    for row in read_rows(path):
        record.train_mse_db.append(float(row["train_mse_db"]))
        if row["val_mse_db"]:
            record.val_mse_db.append(float(row["val_mse_db"]))
    return record


# datasets


def _complex_columns(prefix: str, width: int) -> list[str]:
    return [f"{prefix}{i}_{part}" for i in range(width) for part in ("re", "im")]


def _interleave(values: np.ndarray) -> np.ndarray:
    out = np.empty((values.shape[0], 2 * values.shape[1]), dtype=np.float64)
    out[:, 0::2] = values.real
    out[:, 1::2] = values.imag
    return out


def save_dataset(path: str | Path, dataset: Dataset) -> Path:
    meta = {
        "seed": dataset.meta.seed,
        "ebn0_db": dataset.meta.ebn0_db,
        "order": dataset.meta.order,
        "channel": dataset.meta.channel,
        "coherence": dataset.meta.coherence,
        "inputs": dataset.n_inputs,
        "outputs": dataset.n_outputs,
    }
    if dataset.channels is not None:
        meta["channels_shape"] = list(dataset.channels.shape)
        meta["channels_re"] = [float(x) for x in dataset.channels.real.ravel()]
        meta["channels_im"] = [float(x) for x in dataset.channels.imag.ravel()]
    if dataset.alphabet is not None:
        meta["alphabet_re"] = [float(x) for x in dataset.alphabet.real]
        meta["alphabet_im"] = [float(x) for x in dataset.alphabet.imag]
    columns = _complex_columns("x", dataset.n_inputs) + _complex_columns("d", dataset.n_outputs)
    table = np.hstack([_interleave(dataset.inputs), _interleave(dataset.targets)])
    path = Path(path)
    _ensure_parent(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            fh.write(DATASET_HEADER + json.dumps(meta) + "\n")
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(table.tolist())
    except OSError as exc:
        raise StorageError(str(path), exc.strerror or str(exc)) from exc
    logger.info("dataset saved path=%s count=%d", path, len(dataset))
    return path


def _complex(re: list[float], im: list[float]) -> np.ndarray:
    out = np.empty(len(re), dtype=np.complex128)
    out.real = re
    out.imag = im
    return out


def _deinterleave(table: np.ndarray) -> np.ndarray:
    out = np.empty((table.shape[0], table.shape[1] // 2), dtype=np.complex128)
    out.real = table[:, 0::2]
    out.imag = table[:, 1::2]
    return out


def load_dataset(path: str | Path) -> Dataset:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            header = fh.readline()
            if not header.startswith(DATASET_HEADER):
                raise StorageError(str(path), "missing ptrbf-dataset header")
            meta = json.loads(header[len(DATASET_HEADER):])
            reader = csv.reader(fh)
            next(reader)
            table = np.asarray([[float(v) for v in row] for row in reader if row], dtype=np.float64)
    except OSError as exc:
        raise StorageError(str(path), exc.strerror or str(exc)) from exc
    except (json.JSONDecodeError, ValueError, StopIteration) as exc:
        raise StorageError(str(path), f"malformed dataset: {exc}") from exc

    n_in, n_out = int(meta["inputs"]), int(meta["outputs"])
    if table.ndim != 2 or table.shape[1] != 2 * (n_in + n_out):
        raise StorageError(str(path), f"expected {2 * (n_in + n_out)} columns")
    inputs = _deinterleave(table[:, : 2 * n_in])
    targets = _deinterleave(table[:, 2 * n_in :])
    channels = None
    if "channels_shape" in meta:
        channels = _complex(meta["channels_re"], meta["channels_im"]).reshape(meta["channels_shape"])
    alphabet = None
    if "alphabet_re" in meta:
        alphabet = _complex(meta["alphabet_re"], meta["alphabet_im"])
    return Dataset(
        inputs=inputs,
        targets=targets,
        meta=DatasetMeta(
            seed=meta.get("seed"),
            ebn0_db=meta.get("ebn0_db"),
            order=meta.get("order"),
            channel=meta.get("channel"),
            coherence=meta.get("coherence"),
        ),
        channels=channels,
        alphabet=alphabet,
    )
