"""Plain-text and PGM serialization of the package's result types.

All writers are deterministic (fixed formats, fixed ordering) and atomic:
content goes to a temporary file in the destination directory and is moved
into place with os.replace, so readers never observe a partial file.

Formats
-------
coefficients : CSV  "n,d_n"                      17 significant digits
time series  : CSV  "t_over_Trev,re,im" (complex)
               or   "t_over_Trev,value" (real)   12 significant digits
carpet CSV   : first row "t_over_Trev" + x values, then one row per time
carpet PGM   : binary P5, maxval 255, density scaled linearly to 0..255,
               rows ordered by increasing time downward
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from .coherent import CoefficientSet
from .dynamics import CarpetRaster, TimeSeries

__all__ = [
    "write_coefficients_csv",
    "read_coefficients_csv",
    "write_timeseries_csv",
    "write_snapshot_csv",
    "write_carpet_csv",
    "write_carpet_pgm",
]

_COEFF_FMT = "%.16e"
_SERIES_FMT = "%.11e"


def _atomic_write(path, data: bytes):
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_coefficients_csv(cs: CoefficientSet, path):
    lines = ["n,d_n"]
    for n, d in enumerate(cs.coeffs):
        lines.append(f"{n:d},{_COEFF_FMT % d}")
    _atomic_write(path, ("\n".join(lines) + "\n").encode())


def read_coefficients_csv(path):
    """Inverse of write_coefficients_csv: arrays (n, d_n)."""
    raw = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    n = raw[:, 0].astype(int)
    if not np.array_equal(n, np.arange(n.size)):
        raise ValueError("coefficient rows must be consecutive from n = 0")
    return n, raw[:, 1]


def write_timeseries_csv(ts: TimeSeries, path):
    values = np.asarray(ts.values)
    lines = []
    if np.iscomplexobj(values):
        lines.append("t_over_Trev,re,im")
        for t, v in zip(ts.times, values):
            lines.append(f"{_SERIES_FMT % t},{_SERIES_FMT % v.real},{_SERIES_FMT % v.imag}")
    else:
        lines.append("t_over_Trev,value")
        for t, v in zip(ts.times, values):
            lines.append(f"{_SERIES_FMT % t},{_SERIES_FMT % v}")
    _atomic_write(path, ("\n".join(lines) + "\n").encode())


def write_snapshot_csv(x: np.ndarray, densities, labels, path):
    """Density snapshots as columns over a common position axis.

    labels name the snapshot columns (times in revival units).
    """
    header = "x," + ",".join(f"t_over_Trev={_SERIES_FMT % t}" for t in labels)
    cols = [np.asarray(x)] + [np.asarray(d) for d in densities]
    lines = [header]
    for row in zip(*cols):
        lines.append(",".join(_SERIES_FMT % v for v in row))
    _atomic_write(path, ("\n".join(lines) + "\n").encode())


def write_carpet_csv(raster: CarpetRaster, path):
    header = "t_over_Trev," + ",".join(_SERIES_FMT % x for x in raster.physical)
    lines = [header]
    for t, row in zip(raster.times, raster.density):
        lines.append(_SERIES_FMT % t + "," + ",".join(_SERIES_FMT % v for v in row))
    _atomic_write(path, ("\n".join(lines) + "\n").encode())


def write_carpet_pgm(raster: CarpetRaster, path):
    """Binary PGM (P5) of the raster, density scaled linearly onto 0..255."""
    d = raster.density
    order = np.argsort(raster.times, kind="stable")
    d = d[order]
    peak = float(d.max())
    scale = 255.0 / peak if peak > 0.0 else 0.0
    pixels = np.clip(np.rint(d * scale), 0, 255).astype(np.uint8)
    header = f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode()
    _atomic_write(path, header + pixels.tobytes())
