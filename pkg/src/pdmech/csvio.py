"""CSV export/import of :class:`~pdmech.trajectories.Trajectory`.

Values are written with 17 significant digits so that a round trip is
exact; NaN becomes an empty field.
"""

import csv
import io
import math

import numpy as np

from .trajectories import COLUMNS, Trajectory


def _fmt(value):
    value = float(value)
    return "" if math.isnan(value) else format(value, ".17g")


def write_trajectory_csv(trajectory, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    cols = [getattr(trajectory, name) for name in COLUMNS]
    for row in zip(*cols):
        writer.writerow([_fmt(v) for v in row])


def trajectory_to_csv(trajectory):
    buf = io.StringIO()
    write_trajectory_csv(trajectory, buf)
    return buf.getvalue()


def read_trajectory_csv(stream):
    reader = csv.reader(stream)
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = [[math.nan if f == "" else float(f) for f in row] for row in reader]
    data = np.array(rows, dtype=float).reshape(len(rows), len(COLUMNS))
    return Trajectory(**{name: data[:, i].copy() for i, name in enumerate(COLUMNS)})
