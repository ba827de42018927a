"""JSON schemas for the ``--format json`` payload of each CLI command."""

import json
from importlib import resources

COMMANDS = ("varpi", "product", "clover", "moments", "verify", "report")


def load_schema(command: str) -> dict:
    if command not in COMMANDS:
        raise KeyError(f"no schema for command {command!r}")
    text = resources.files(__name__).joinpath(f"{command}.json").read_text(encoding="utf-8")
    return json.loads(text)
