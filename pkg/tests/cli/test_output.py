# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import json
from pathlib import Path

import pytest

from anchorsim.cli.ensemble import ensemble, run
from anchorsim.cli.errors import ArtifactError, InvalidCombinationError
from anchorsim.cli.output import read_artifact, render, write_artifact
from anchorsim.cli.schemas import ExperimentConfig


def _config(tmp_path, fmt="json", **kwargs):
    fields = dict(subcommand="thresholds", params={"h": [1.0, 0.5]})
    fields.update(kwargs)
    return ExperimentConfig(format=fmt, out=str(tmp_path / f"artifact.{fmt}"), **fields)


def test_json_round_trip(tmp_path):
    config = _config(tmp_path)
    results = ensemble(config)
    write_artifact(config, results)
    parsed, payload = read_artifact(config.out)
    assert parsed == config
    assert payload == results.model_dump(mode="json")


def test_csv_round_trip(tmp_path):
    config = _config(tmp_path, "csv")
    results = ensemble(config)
    write_artifact(config, results)
    parsed, payload = read_artifact(config.out)
    assert parsed == config
    assert payload["columns"] == results.columns
    assert payload["summary"] == results.summary
    assert [row["h"] for row in payload["rows"]] == ["1.0", "0.5"]


def test_named_records_round_trip(tmp_path):
    config = _config(tmp_path, subcommand="gw", params={"probs": "0.25,0,0.75", "trials": 200})
    results = ensemble(config)
    write_artifact(config, results)
    raw = json.loads(Path(config.out).read_text())
    assert "results" not in raw
    assert raw["size_tail"] == results.model_dump(mode="json")["rows"]
    parsed, payload = read_artifact(config.out)
    assert parsed == config
    assert payload == results.model_dump(mode="json")


def test_render_is_stable(tmp_path):
    config = _config(tmp_path)
    assert render(config, ensemble(config)) == render(config, ensemble(config, workers=2))


def test_run_writes_the_artifact(tmp_path):
    config = _config(tmp_path)
    assert run(config) == 0
    assert read_artifact(config.out)[0] == config


def test_unreadable_artifact(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("not an artifact")
    with pytest.raises(ArtifactError):
        read_artifact(path)
    path.write_text("# config: {}\n")
    with pytest.raises(ArtifactError):
        read_artifact(path)


def test_family_is_required(tmp_path):
    config = _config(tmp_path, subcommand="expansion", params={"max_size": 2})
    with pytest.raises(InvalidCombinationError):
        ensemble(config)


def test_dist_needs_the_lamplighter(tmp_path):
    config = _config(
        tmp_path, subcommand="dist", family={"family": "lattice", "d": 1}, params={"radius": 2}
    )
    with pytest.raises(InvalidCombinationError):
        ensemble(config)


def test_worker_count_is_checked(tmp_path):
    with pytest.raises(ValueError):
        ensemble(_config(tmp_path), workers=0)
