# -*- coding: utf-8 -*-
"""
Deterministic JSON/CSV writers and run manifests.

Floats are written with 17 significant digits and JSON keys are sorted, so equal
inputs produce equal bytes.
"""

import csv
import hashlib
import io
import json
import math
import os
import platform
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..exceptions import ArtifactError


def format_float(value: float) -> str:
    """17 significant digits; non-finite values as JSON-style names."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    text = format(value, ".17g")
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def to_plain(obj: Any) -> Any:
    """Convert numpy scalars and arrays, complex numbers, enums and tuples to JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    return obj


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(key)}: {_encode(obj[key], indent, level + 1)}" for key in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, float):
        return format_float(obj)
    return json.dumps(obj)


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialize to deterministic JSON text with a trailing newline."""
    return _encode(to_plain(obj), indent, 0) + "\n"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: str) -> str:
    """
    SHA-256 of a file's content.

    Raises:
        ArtifactError: If the file cannot be read
    """
    try:
        with open(path, "rb") as handle:
            return sha256_bytes(handle.read())
    except OSError as e:
        raise ArtifactError(f"Failed to hash {path}: {str(e)}")


def _write(path: str, data: bytes) -> str:
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "wb") as handle:
            handle.write(data)
    except OSError as e:
        raise ArtifactError(f"Failed to write {path}: {str(e)}")
    return sha256_bytes(data)


def write_json(path: str, obj: Any) -> str:
    """Write deterministic JSON; returns the content SHA-256."""
    return _write(path, dumps(obj).encode("utf-8"))


def write_csv(path: str, rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """
    Write rows as CSV with a header; floats with 17 significant digits.

    Returns:
        str: Content SHA-256
    """
    if columns is None:
        columns = sorted({key for row in rows for key in row})
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for key in columns:
            value = to_plain(row.get(key, ""))
            cells.append(format_float(value) if isinstance(value, float) else value)
        writer.writerow(cells)
    return _write(path, buffer.getvalue().encode("utf-8"))


def library_versions() -> Dict[str, str]:
    """Versions recorded in manifests."""
    import reportlab
    import scipy

    from .. import __version__

    return {
        "composition_lab": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "reportlab": reportlab.Version,
    }


def write_manifest(path: str, config: Dict[str, Any], seed: int, outputs: Iterable[str], wall_time: float) -> str:
    """
    Write the run manifest: config and its hash, seed, versions, wall time and the
    SHA-256 of every output file.

    Returns:
        str: Manifest SHA-256
    """
    config_text = dumps(config)
    manifest = {
        "config": config,
        "config_sha256": sha256_bytes(config_text.encode("utf-8")),
        "seed": seed,
        "versions": library_versions(),
        "wall_time_seconds": wall_time,
        "outputs": {os.path.basename(p): sha256_file(p) for p in sorted(outputs)},
    }
    return write_json(path, manifest)
