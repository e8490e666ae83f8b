"""File formats shared by the library and the command line.

Measure (JSON)::

    {"n": 2, "k": 3, "points": [[0.0, 1.0], [2.0, 0.5], [1.0, 1.0]]}

Measure (CSV): one point per row, ``n`` columns, optional header row.

Group (JSON)::

    {"n": 2, "elements": [{"rotation": [[1, 0], [0, 1]], "translation": [0, 0]}, ...]}

Point (JSON): a bare list ``[x_1, ..., x_n]`` or ``{"point": [...]}``.
"""

import csv
import json
from pathlib import Path

import numpy as np

from .measures import EmpiricalMeasure
from .orbit import FiniteIsometryGroup

__all__ = [
    "InputError",
    "measure_to_dict",
    "measure_from_dict",
    "load_measure",
    "save_measure",
    "load_measure_list",
    "load_group",
    "load_point",
]


class InputError(ValueError):
    """A file could not be read or does not follow its format."""


def _read_json(path):
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 at byte offset {exc.start}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise InputError(
            f"{path}: malformed JSON at byte offset {offset} "
            f"(line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc


def measure_to_dict(alpha):
    return {"n": alpha.n, "k": alpha.k, "points": alpha.points.tolist()}


def measure_from_dict(data, source="measure"):
    if not isinstance(data, dict):
        raise InputError(f"{source}: expected an object with n, k, points")
    missing = [key for key in ("n", "k", "points") if key not in data]
    if missing:
        raise InputError(f"{source}: missing field(s) {', '.join(missing)}")
    try:
        pts = np.array(data["points"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: points are not a numeric array") from exc
    if pts.ndim != 2:
        raise InputError(f"{source}: points must be a list of equal-length coordinate lists")
    if pts.shape[0] != data["k"]:
        raise InputError(f"{source}: field k = {data['k']} but {pts.shape[0]} points given")
    if pts.shape[1] != data["n"]:
        raise InputError(f"{source}: field n = {data['n']} but points have {pts.shape[1]} coordinates")
    try:
        return EmpiricalMeasure(pts)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _load_csv(path):
    try:
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from exc
    if not rows:
        raise InputError(f"{path}: no points")
    try:
        [float(c) for c in rows[0]]
    except ValueError:
        rows = rows[1:]  # header
    try:
        pts = np.array([[float(c) for c in row] for row in rows])
    except ValueError as exc:
        raise InputError(f"{path}: non-numeric entry ({exc})") from exc
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise InputError(f"{path}: rows must all have the same number of columns")
    return EmpiricalMeasure(pts)


def load_measure(path):
    """Read a measure from ``.json`` or ``.csv`` (by extension)."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    return measure_from_dict(_read_json(path), str(path))


def save_measure(alpha, path):
    Path(path).write_text(json.dumps(measure_to_dict(alpha)) + "\n")


def load_measure_list(path):
    """Read a JSON list of measures (or ``{"measures": [...]}``)."""
    data = _read_json(path)
    if isinstance(data, dict) and "measures" in data:
        data = data["measures"]
    if not isinstance(data, list) or not data:
        raise InputError(f"{path}: expected a non-empty JSON list of measures")
    return [measure_from_dict(d, f"{path}[{i}]") for i, d in enumerate(data)]


def load_group(path):
    data = _read_json(path)
    try:
        return FiniteIsometryGroup.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed group ({exc!r})") from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_point(path):
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("point")
    try:
        x = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: point is not numeric") from exc
    if x.ndim != 1 or x.size == 0:
        raise InputError(f"{path}: expected a flat list of coordinates")
    return x
