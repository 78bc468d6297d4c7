import json

import pytest

from ptrbf.cli.router import build_parser
from ptrbf.infrastructure import storage
from ptrbf.main import main


def write_config(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def compare_config(tmp_path):
    return write_config(
        tmp_path / "compare.json",
        {
            "version": 1,
            "architectures": [[6]],
            "schemes": ["proposed", "kmeans"],
            "epochs": 1,
            "train_count": 30,
            "val_count": 10,
            "runs": 1,
        },
    )


def test_parser_lists_every_command():
    parser = build_parser()
    for command in ("train", "compare", "validate-stats", "init-dump", "gen-data"):
        args = parser.parse_args([command])
        assert args.command == command


def test_gen_data(tmp_path, capsys):
    assert main(["gen-data", "--count", "12", "--seed", "4", "--out", str(tmp_path)]) == 0
    dataset = storage.load_dataset(tmp_path / "dataset.csv")
    assert len(dataset) == 12
    assert dataset.meta.seed == 4
    assert "12 instances" in capsys.readouterr().out


def test_compare(tmp_path, compare_config, capsys):
    out = tmp_path / "out"
    assert main(["compare", "--config", compare_config, "--out", str(out), "--threads", "2"]) == 0
    assert (out / "6" / "curves.csv").exists()
    assert (out / "report.json").exists()
    printed = capsys.readouterr().out
    assert "proposed" in printed and "kmeans" in printed


def test_seed_flag_overrides_config(tmp_path, compare_config):
    main(["compare", "--config", compare_config, "--seed", "1", "--out", str(tmp_path / "a")])
    main(["compare", "--config", compare_config, "--seed", "2", "--out", str(tmp_path / "b")])
    a = (tmp_path / "a" / "6" / "curves.csv").read_bytes()
    b = (tmp_path / "b" / "6" / "curves.csv").read_bytes()
    assert a != b


def test_train(tmp_path, compare_config):
    assert main(["train", "--config", compare_config, "--out", str(tmp_path)]) == 0
    assert storage.read_run_record(tmp_path / "curve.csv").epochs == 1
    assert storage.load_network(tmp_path / "network.json").depth == 1


def test_unknown_key_exits_with_2(tmp_path, capsys):
    config = write_config(tmp_path / "bad.json", {"version": 1, "epoch": 3})
    assert main(["compare", "--config", config, "--out", str(tmp_path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_missing_config_exits_with_2(tmp_path):
    assert main(["train", "--config", str(tmp_path / "absent.json")]) == 2


def test_init_dump(tmp_path):
    config = write_config(
        tmp_path / "dump.json",
        {"version": 1, "architecture": [8, 4], "scheme": "random", "dataset": {"count": 50}, "bins": 4},
    )
    assert main(["init-dump", "--config", config, "--out", str(tmp_path / "dump")]) == 0
    assert storage.load_network(tmp_path / "dump" / "network.json").depth == 2
    assert len(storage.read_rows(tmp_path / "dump" / "param_stats.csv")) == 8


def test_validate_stats(tmp_path):
    code = main(["validate-stats", "--trials", "10000", "--threads", "2", "--out", str(tmp_path)])
    assert code in (0, 1)
    assert len(storage.read_rows(tmp_path / "moments.csv")) == 3
    assert len(storage.read_rows(tmp_path / "conventions.csv")) == 2


def test_too_few_trials_exits_with_2(tmp_path):
    assert main(["validate-stats", "--trials", "100", "--out", str(tmp_path)]) == 2
