import json

import numpy as np
import pytest

from ptrbf.core.errors import ConfigError, StorageError
from ptrbf.domain.models.run_record import RunRecord
from ptrbf.infrastructure import storage
from ptrbf.schemas.config import DatasetConfig, ExperimentConfig
from ptrbf.services.task_gen import gen_dataset


def test_network_round_trip_is_bit_exact(tmp_path, make_network):
    net = make_network(5, 6, [8, 3, 4, 2])
    net.layers[0].bias[0] = complex(1.0, -0.0)
    path = storage.save_network(tmp_path / "net.json", net, scheme="proposed", seed=5)
    loaded = storage.load_network(path)
    assert loaded.identical(net)
    assert np.signbit(loaded.layers[0].bias[0].imag)
    assert json.loads(path.read_text())["format"] == "ptrbf-network"


def test_network_with_inconsistent_dims_is_rejected(tmp_path, make_network):
    path = storage.save_network(tmp_path / "net.json", make_network(1, 4, [5, 2]))
    payload = json.loads(path.read_text())
    payload["dims"]["neurons"] = [6]
    path.write_text(json.dumps(payload))
    with pytest.raises(StorageError):
        storage.load_network(path)


def test_dataset_round_trip_is_bit_exact(tmp_path):
    dataset = gen_dataset(DatasetConfig(count=25, seed=2, coherence=10))
    path = storage.save_dataset(tmp_path / "data.csv", dataset)
    assert path.read_text().startswith("# ptrbf-dataset v1 ")
    loaded = storage.load_dataset(path)
    assert np.array_equal(loaded.inputs, dataset.inputs)
    assert np.array_equal(loaded.targets, dataset.targets)
    assert np.array_equal(loaded.channels, dataset.channels)
    assert np.array_equal(loaded.alphabet, dataset.alphabet)
    assert loaded.meta == dataset.meta


def test_dataset_csv_columns(tmp_path):
    path = storage.save_dataset(tmp_path / "data.csv", gen_dataset(DatasetConfig(count=3)))
    rows = storage.read_rows(path)
    assert len(rows) == 3
    assert list(rows[0])[:2] == ["x0_re", "x0_im"]
    assert list(rows[0])[-2:] == ["d3_re", "d3_im"]
    assert len(rows[0]) == 2 * (16 + 4)


def test_dataset_without_header_is_rejected(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("x0_re,x0_im\n1,2\n")
    with pytest.raises(StorageError):
        storage.load_dataset(path)


def test_run_record_round_trip(tmp_path):
    record = RunRecord(train_mse_db=[-1.5, -3.25, 0.1 + 0.2], val_mse_db=[-1.0, -2.0, -2.5])
    loaded = storage.read_run_record(storage.write_run_record(tmp_path / "curve.csv", record))
    assert loaded.same_curves(record)


def test_run_record_without_validation(tmp_path):
    record = RunRecord(train_mse_db=[-1.0, -2.0])
    path = storage.write_run_record(tmp_path / "curve.csv", record)
    assert storage.read_rows(path)[0]["val_mse_db"] == ""
    assert storage.read_run_record(path).val_mse_db == []


def test_rows_round_trip(tmp_path):
    path = storage.write_rows(tmp_path / "t.csv", ["a", "b"], [[1, None], [2.5, "x"]])
    assert storage.read_rows(path) == [{"a": "1", "b": ""}, {"a": "2.5", "b": "x"}]


def test_missing_file_names_the_path(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(StorageError) as info:
        storage.read_json(missing)
    assert info.value.path == str(missing)
    assert str(missing) in str(info.value)


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"version": 1, "epochz": 3}))
    with pytest.raises(ConfigError):
        storage.read_config(path, ExperimentConfig)


def test_config_rejects_other_versions(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"version": 2}))
    with pytest.raises(ConfigError):
        storage.read_config(path, ExperimentConfig)


def test_config_loads(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"version": 1, "architectures": [[48, 16]], "epochs": 3, "schemes": ["random"]}))
    config = storage.read_config(path, ExperimentConfig)
    assert config.architectures == [[48, 16]]
    assert config.schemes[0].value == "random"


def test_invalid_json_is_a_storage_error(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{not json")
    with pytest.raises(StorageError):
        storage.read_config(path, ExperimentConfig)
