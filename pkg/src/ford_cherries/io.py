"""CSV and JSON writers shared by the command line and the campaign runner."""

import csv
import json
from pathlib import Path
from typing import IO, Any, Iterable, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

Target = Union[str, Path, IO[str]]

# parameter columns print in shortest round-trip form, measured values with 17 significant digits
PARAMETER_COLUMNS = frozenset({"alpha"})


def format_value(value: Any, column: Optional[str] = None) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value) + 0.0
        if column in PARAMETER_COLUMNS:
            return np.format_float_positional(value, trim="-")
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def write_csv(target: Target, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a header and rows; ``target`` is a path or an open text stream."""

    def emit(stream: IO[str]) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(value, column) for value, column in zip(row, columns)])

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="", encoding="utf-8") as stream:
            emit(stream)
    else:
        emit(target)


def _plain(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return json.loads(payload.model_dump_json())
    if isinstance(payload, dict):
        return {str(key): _plain(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_plain(value) for value in payload]
    if isinstance(payload, np.ndarray):
        return _plain(payload.tolist())
    if isinstance(payload, (np.integer, np.bool_)):
        return payload.item()
    if isinstance(payload, (float, np.floating)):
        return float(payload) + 0.0
    return payload


def dump_json(payload: Any, target: Optional[Target] = None) -> str:
    """Serialize with sorted keys and two-space indentation; also write to ``target`` if given."""
    text = json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    elif target is not None:
        target.write(text)
    return text
