"""
Writes command results: JSON documents, or a command's table as CSV or
aligned text.
"""
import json
import sys
import typing as tp
from dataclasses import dataclass

import numpy as np
import pandas as pd

FORMATS = ("json", "csv", "table")


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


@dataclass
class CommandResult:
    """
    What a subcommand produced. `ok` is False when a verification failed.
    """

    document: tp.Dict[str, tp.Any]
    table: tp.Optional[pd.DataFrame] = None
    ok: bool = True


def render(result: CommandResult, fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format '{fmt}'")
    if fmt == "json" or result.table is None:
        return json.dumps(_plain(result.document), indent=2) + "\n"
    if fmt == "csv":
        return result.table.to_csv(index=False)
    return result.table.to_string(index=False) + "\n"


def emit(result: CommandResult, fmt: str, output: str = None):
    text = render(result, fmt)
    if output:
        with open(output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
