"""
Artifact writers: atomic CSV / JSON files and the run manifest

Files are written to a temporary sibling and renamed into place, so a reader
never sees a half-written artifact. Everything except the manifest's
created_at field is a pure function of the run parameters.
"""

import csv
import io
import json
import logging
import os
import platform
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Union

import numpy as np
import psutil

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
FORMATS = ("csv", "json")


def atomic_write_text(path: PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug(f"Wrote {path}")


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_table(
    path: PathLike,
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    fmt: str = "csv",
) -> None:
    """Rows as CSV (with header) or as a JSON list of objects"""
    if fmt == "csv":
        atomic_write_text(path, render_csv(header, rows))
    elif fmt == "json":
        records = [dict(zip(header, row)) for row in rows]
        atomic_write_text(path, json.dumps(records, indent=2, ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")


def format_score(value: float) -> str:
    return f"{value:.{config.SCORE_DECIMALS}f}"


# =====================================================
# RUN MANIFEST
# =====================================================
def build_manifest(
    command: str,
    parameters: Mapping[str, Any],
    timings: Mapping[str, float],
    outputs: Sequence[str],
    extra: Optional[Mapping[str, Any]] = None,
) -> Dict[str, Any]:
    process = psutil.Process()
    manifest = {
        "command": command,
        "parameters": dict(parameters),
        "timings_seconds": {name: round(seconds, 3) for name, seconds in timings.items()},
        "outputs": list(outputs),
        "versions": {
            "cks": config.VERSION,
            "python": platform.python_version(),
            "numpy": np.__version__,
        },
        "system": {
            "platform": platform.platform(),
            "cpu_count": psutil.cpu_count(logical=True),
            "rss_bytes": process.memory_info().rss,
        },
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(extra)
    return manifest


def manifest_path(output: PathLike) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def write_manifest(output: PathLike, manifest: Mapping[str, Any]) -> Path:
    path = manifest_path(output)
    atomic_write_text(path, json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
    return path
