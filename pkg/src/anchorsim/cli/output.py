# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
JSON and CSV artifacts.

A JSON artifact is one object ``{"config": ..., "results": ...}`` with sorted
keys, except for the subcommands in RECORD_KEYS: their records sit under the
named key next to the summary values, e.g. ``{config, checkpoints, resampled_trials}``
for ``walk``. A CSV artifact starts with ``# config: <json>`` and ``# summary: <json>``
lines, then a header row and one row per result record. Nothing
time-dependent is written, so equal configs give equal files.
"""
import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Tuple

import click

from anchorsim import logger
from anchorsim.cli.errors import ArtifactError
from anchorsim.cli.schemas import ExperimentConfig, Results

log = logger.get_logger(__name__)

CONFIG_PREFIX = "# config: "
SUMMARY_PREFIX = "# summary: "
RECORD_KEYS = {"walk": "checkpoints", "gw": "size_tail"}


def _dumps(payload: Any, indent: int = None) -> str:
    return json.dumps(payload, sort_keys=True, indent=indent)


def render(config: ExperimentConfig, results: Results) -> str:
    if config.format == "json":
        payload = {"config": config.model_dump(mode="json")}
        dumped = results.model_dump(mode="json")
        key = RECORD_KEYS.get(config.subcommand)
        if key is None:
            payload["results"] = dumped
        else:
            payload.update(dumped["summary"])
            payload["columns"] = dumped["columns"]
            payload[key] = dumped["rows"]
        return _dumps(payload, indent=2) + "\n"

    buffer = io.StringIO()
    buffer.write(CONFIG_PREFIX + _dumps(config.model_dump(mode="json")) + "\n")
    buffer.write(SUMMARY_PREFIX + _dumps(results.model_dump(mode="json")["summary"]) + "\n")
    writer = csv.DictWriter(buffer, fieldnames=results.columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(results.rows)
    return buffer.getvalue()


def write_artifact(config: ExperimentConfig, results: Results) -> None:
    text = render(config, results)
    if config.out == "-":
        click.echo(text, nl=False)
        return
    path = Path(config.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.debug(f"Wrote {len(text)} characters to {path}")


def _read_csv(text: str) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    lines = text.splitlines()
    if len(lines) < 3 or not lines[1].startswith(SUMMARY_PREFIX):
        raise ArtifactError("CSV artifact lacks the summary line")
    config = json.loads(lines[0][len(CONFIG_PREFIX):])
    summary = json.loads(lines[1][len(SUMMARY_PREFIX):])
    reader = csv.DictReader(lines[2:])
    rows = list(reader)
    return config, {"columns": list(reader.fieldnames or []), "rows": rows, "summary": summary}


def read_artifact(path) -> Tuple[ExperimentConfig, Dict[str, Any]]:
    """
    Parse an artifact back into the config that produced it and its results.

    CSV cells come back as strings; JSON values keep their types.
    """
    text = Path(path).read_text()
    try:
        if text.startswith(CONFIG_PREFIX):
            config, results = _read_csv(text)
        else:
            payload = json.loads(text)
            config = payload.pop("config")
            key = RECORD_KEYS.get(config["subcommand"])
            if key is None:
                results = payload["results"]
            else:
                rows = payload.pop(key)
                results = {"columns": payload.pop("columns"), "rows": rows, "summary": payload}
        return ExperimentConfig.model_validate(config), results
    except (ValueError, KeyError, TypeError) as e:
        err_msg = "Cannot parse artifact {}: {}".format(path, e)
        log.error(err_msg)
        raise ArtifactError(err_msg) from e
