"""Raster files, regions and CSV output.

Canonical raster format: raw little-endian float64 in row-major order, with a
JSON sidecar next to it (``<path>.json``)::

    {"format": 1, "rows": R, "cols": C, "dtype": "f64", "order": "row-major"}

Rasters may also be read from a CSV file: an optional ``# format=1`` comment,
a header line naming the columns, then one line of pixel values per raster
row.

CSV output always starts with a ``# format=1`` comment followed by the
header. Floats are written with ``repr`` so that they round-trip exactly and
never depend on the locale.
"""

from dataclasses import dataclass
import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .errors import (
    DimensionMismatchError,
    MissingSidecarError,
    NegativeValueError,
    RasterError,
    RegionError,
    SidecarFormatError,
)

__all__ = [
    "FORMAT_VERSION",
    "RegionSpec",
    "sidecar_path",
    "read_raster",
    "write_raster",
    "write_raster_csv",
    "write_pgm_preview",
    "format_csv",
    "write_csv",
    "read_csv",
]

FORMAT_VERSION = 1


@dataclass(frozen=True)
class RegionSpec:
    """Rectangular region: column offset, row offset, width and height in pixels."""

    x0: int
    y0: int
    width: int
    height: int

    @classmethod
    def parse(cls, text):
        """Parse ``"x0,y0,w,h"``."""
        try:
            x0, y0, w, h = (int(p) for p in text.split(","))
        except ValueError:
            raise RegionError(f"region must be x0,y0,w,h, got {text!r}") from None
        return cls(x0, y0, w, h)

    def extract(self, raster):
        raster = np.asarray(raster)
        rows, cols = raster.shape
        if (
            self.x0 < 0 or self.y0 < 0 or self.width < 1 or self.height < 1
            or self.x0 + self.width > cols or self.y0 + self.height > rows
        ):
            raise RegionError(
                f"region {self} does not fit inside a {rows}x{cols} raster"
            )
        return raster[self.y0:self.y0 + self.height, self.x0:self.x0 + self.width]

    @property
    def size(self):
        return self.width * self.height


def sidecar_path(path):
    path = Path(path)
    return path.with_name(path.name + ".json")


def _validate(values):
    if not np.all(np.isfinite(values)):
        raise RasterError("raster contains non-finite values")
    if np.any(values < 0):
        raise NegativeValueError("raster contains negative intensities")
    return values


def read_raster(path):
    """Read a raster as a 2-D float64 array.

    Files ending in ``.csv`` are parsed as CSV; anything else is raw float64
    with a JSON sidecar.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _read_raster_csv(path)
    side = sidecar_path(path)
    if not side.exists():
        raise MissingSidecarError(f"no sidecar {side} for {path}")
    try:
        meta = json.loads(side.read_text())
        rows, cols = int(meta["rows"]), int(meta["cols"])
    except (ValueError, KeyError, TypeError) as exc:
        raise SidecarFormatError(f"cannot parse sidecar {side}: {exc}") from None
    if meta.get("dtype", "f64") != "f64" or meta.get("order", "row-major") != "row-major":
        raise SidecarFormatError("only dtype f64 in row-major order is supported")
    if int(meta.get("format", FORMAT_VERSION)) != FORMAT_VERSION:
        raise SidecarFormatError(f"unsupported format version {meta.get('format')}")
    raw = path.read_bytes()
    if rows < 0 or cols < 0 or len(raw) != 8 * rows * cols:
        raise DimensionMismatchError(
            f"sidecar says {rows}x{cols} = {rows * cols} pixels, file holds {len(raw) / 8:g}"
        )
    values = np.frombuffer(raw, dtype="<f8").astype(float).reshape(rows, cols)
    return _validate(values)


def _read_raster_csv(path):
    lines = [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise DimensionMismatchError(f"{path} holds no raster rows")
    reader = csv.reader(lines)
    header = next(reader)
    rows = [r for r in reader]
    if not rows or any(len(r) != len(header) for r in rows):
        raise DimensionMismatchError(f"{path}: every row must have {len(header)} values")
    try:
        values = np.array(rows, dtype=float)
    except ValueError as exc:
        raise RasterError(f"{path}: {exc}") from None
    return _validate(values)


def write_raster(raster, path):
    """Write raw float64 data plus the JSON sidecar."""
    values = np.asarray(raster, dtype="<f8")
    if values.ndim != 2:
        raise RasterError("raster must be 2-D")
    path = Path(path)
    path.write_bytes(np.ascontiguousarray(values).tobytes())
    meta = {
        "format": FORMAT_VERSION,
        "rows": values.shape[0],
        "cols": values.shape[1],
        "dtype": "f64",
        "order": "row-major",
    }
    sidecar_path(path).write_text(json.dumps(meta) + "\n")


def write_raster_csv(raster, path):
    values = np.asarray(raster, dtype=float)
    header = [f"c{j}" for j in range(values.shape[1])]
    write_csv(path, header, values.tolist())


def write_pgm_preview(raster, path, clip_percentile=99.0):
    """16-bit binary PGM, linear from 0 to the clip percentile."""
    values = np.asarray(raster, dtype=float)
    top = float(np.percentile(values, clip_percentile))
    if top > 0:
        q = np.clip(values, 0.0, top) / top * 65535.0
    else:
        q = np.zeros_like(values)
    q = np.rint(q).astype(">u2")
    rows, cols = values.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n65535\n".encode("ascii"))
        fh.write(q.tobytes())


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def format_csv(header, rows):
    buf = _io.StringIO()
    buf.write(f"# format={FORMAT_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([_cell(v) for v in r])
    return buf.getvalue()


def write_csv(path, header, rows):
    text = format_csv(header, rows)
    if path is None or str(path) == "-":
        return text
    Path(path).write_text(text)
    return text


def read_csv(path_or_text):
    """Parse CSV written by :func:`format_csv` into ``(header, rows)`` of strings."""
    text = path_or_text
    if isinstance(path_or_text, Path) or "\n" not in str(path_or_text):
        text = Path(path_or_text).read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    return header, [r for r in reader]
