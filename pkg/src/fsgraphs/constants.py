"""Length-budget constants for the constructive solvers.

Defaults ship in data/constants.json and are rewritten by ``fsgraphs bench``.
FS_CONSTANTS points at an alternative file.
"""
import json
import os
from pathlib import Path

DEFAULT_PATH = Path(__file__).with_name("data") / "constants.json"


def constants_path() -> Path:
    env = os.environ.get("FS_CONSTANTS")
    return Path(env) if env else DEFAULT_PATH


def load_constants(path=None) -> dict:
    p = Path(path) if path else constants_path()
    with open(p) as fh:
        data = json.load(fh)
    return data


def get(name: str) -> float:
    return load_constants()[name]


def save_constants(values: dict, path=None):
    p = Path(path) if path else constants_path()
    with open(p, "w") as fh:
        json.dump(values, fh, indent=2, sort_keys=True)
        fh.write("\n")
