"""Bundled data files: the JSON schema of the compute report."""

import json
from importlib import resources


def load_report_schema() -> dict:
    """The JSON schema that every `compute --format json` report satisfies."""
    source = resources.files(__package__).joinpath("report_schema.json")
    return json.loads(source.read_text(encoding="utf-8"))
