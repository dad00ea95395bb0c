"""Spectrum files.

CSV: header ``delta,transmission,model`` and one row per grid point.
JSON: object with ``detunings``, ``transmission``, ``model`` and
``params_snapshot``.  Floats are written with ``repr`` (shortest string that
round-trips), so reading a file back gives the identical spectrum.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

from .spectrum import Spectrum

CSV_HEADER = ("delta", "transmission", "model")


def spectrum_to_text(s: Spectrum, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for d, t in zip(s.detunings.tolist(), s.transmission.tolist()):
            w.writerow((repr(d), repr(t), s.model))
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "detunings": s.detunings.tolist(),
            "transmission": s.transmission.tolist(),
            "model": s.model,
            "params_snapshot": s.params_snapshot,
        }
        return json.dumps(doc, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_spectrum(s: Spectrum, fmt: str, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(spectrum_to_text(s, fmt))
    return path


def read_spectrum(path, params_snapshot: dict | None = None) -> Spectrum:
    """Load a spectrum written by :func:`emit_spectrum`.

    CSV files carry no parameter snapshot; pass one in if it is needed.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        doc = json.loads(text)
        return Spectrum(doc["detunings"], doc["transmission"], doc["model"], doc["params_snapshot"])
    rows = list(csv.reader(io.StringIO(text)))
    if tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"{path}: unexpected header {rows[0]}")
    models = {r[2] for r in rows[1:]}
    if len(models) != 1:
        raise ValueError(f"{path}: expected exactly one model, found {sorted(models)}")
    return Spectrum(
        [float(r[0]) for r in rows[1:]],
        [float(r[1]) for r in rows[1:]],
        models.pop(),
        params_snapshot or {},
    )


def write_all(files: dict) -> None:
    """Write ``{path: text}`` so that either every file lands or none does."""
    staged = []
    done = []
    try:
        for path, text in files.items():
            path = Path(path)
            fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
            staged.append(tmp)
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        for tmp, path in zip(staged, files):
            os.replace(tmp, path)
            done.append(Path(path))
    except OSError:
        for tmp in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        for path in done:
            path.unlink(missing_ok=True)
        raise
