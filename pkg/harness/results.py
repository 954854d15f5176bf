#!/usr/bin/env python3
"""
Sweep results and their emission
One PointResult per (grid value, curve). emit_results writes the CSV table,
the JSON run manifest and optionally a static SVG chart. Files are written to
a temp name and renamed into place.
"""

import csv
import hashlib
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from scipy.stats import norm

CSV_COLUMNS = [
    "grid_value", "trials", "block_errors", "bler", "bler_lo", "bler_hi", "qber",
    "mean_iters", "curve", "grid_value_fd", "logical_failures",
]


def wilson_interval(errors: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion"""
    if trials <= 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2.0))
    phat = errors / trials
    denom = 1.0 + z * z / trials
    centre = (phat + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4.0 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class PointResult:
    grid_value: float
    curve: str
    trials: int
    block_errors: int
    residual_weight: int
    iterations: int
    logical_failures: int
    n: int

    @property
    def bler(self) -> float:
        return self.block_errors / self.trials if self.trials else 0.0

    @property
    def interval(self) -> Tuple[float, float]:
        return wilson_interval(self.block_errors, self.trials)

    @property
    def qber(self) -> float:
        """Residual non-identity positions on failed and logically wrong blocks, per qubit per trial"""
        return self.residual_weight / (self.n * self.trials) if self.trials else 0.0

    @property
    def mean_iters(self) -> float:
        return self.iterations / self.trials if self.trials else 0.0


@dataclass
class SweepResult:
    kind: str
    curves: List[str]
    points: List[PointResult] = field(default_factory=list)
    grid_is_flip_probability: bool = False
    config: Dict[str, Any] = field(default_factory=dict)
    master_seed: int = 0
    code_text: str = ""
    wall_time: float = 0.0
    host: Dict[str, Any] = field(default_factory=dict)
    decisions: Dict[str, Any] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)

    def curve(self, name: str) -> List[PointResult]:
        return [p for p in self.points if p.curve == name]

    def point(self, name: str, grid_value: float) -> Optional[PointResult]:
        for p in self.points:
            if p.curve == name and p.grid_value == grid_value:
                return p
        return None

    def ordered_points(self) -> List[PointResult]:
        """Curve rows in arm order, points in grid order within a curve"""
        return [p for name in self.curves for p in self.points if p.curve == name]


def git_blob_hash(text: str) -> str:
    """sha1 of the text framed as a git blob"""
    data = text.encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def format_csv(result: SweepResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for p in result.ordered_points():
        lo, hi = p.interval
        fd = repr(4.0 * p.grid_value / 3.0) if result.grid_is_flip_probability else ""
        writer.writerow([
            repr(float(p.grid_value)), p.trials, p.block_errors, repr(p.bler), repr(lo), repr(hi),
            repr(p.qber), repr(p.mean_iters), p.curve, fd, p.logical_failures,
        ])
    return buffer.getvalue()


def build_manifest(result: SweepResult) -> Dict[str, Any]:
    from version_info import get_version

    return {
        "kind": result.kind,
        "version": get_version(),
        "master_seed": result.master_seed,
        "config": result.config,
        "code_hash": git_blob_hash(result.code_text) if result.code_text else None,
        "wall_time_seconds": round(result.wall_time, 3),
        "host": result.host,
        "decisions": result.decisions,
        "extras": result.extras,
        "curves": result.curves,
    }


def _atomic_write(path: str, text: str):
    temp_file = path + ".tmp"
    try:
        with open(temp_file, "w") as f:
            f.write(text)
        os.replace(temp_file, path)
    except OSError:
        if os.path.exists(temp_file):
            os.remove(temp_file)
        raise


def render_svg(result: SweepResult, path: str, x_label: str = "grid value"):
    """Log-scale BLER against grid value, one line per curve"""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for name in result.curves:
        points = [p for p in result.curve(name) if p.block_errors > 0]
        if not points:
            continue
        xs = [p.grid_value for p in points]
        ys = [p.bler for p in points]
        lows = [p.bler - p.interval[0] for p in points]
        highs = [p.interval[1] - p.bler for p in points]
        ax.errorbar(xs, ys, yerr=[lows, highs], marker="o", capsize=3, label=name)
    ax.set_yscale("log")
    ax.set_xlabel(x_label)
    ax.set_ylabel("BLER")
    ax.grid(True, which="both", alpha=0.3)
    for label, value in result.extras.get("markers", {}).items():
        ax.axvline(value, linestyle="--", color="gray", alpha=0.7)
        ax.annotate(label, (value, 1.0), xycoords=("data", "axes fraction"),
                    rotation=90, va="top", fontsize=8)
    if result.curves:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_results(result: SweepResult, out_dir: str, name: str, svg: bool = False,
                 x_label: str = "grid value") -> List[str]:
    """Write <name>.csv, <name>.manifest.json and optionally <name>.svg; returns the paths"""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    manifest_path = os.path.join(out_dir, f"{name}.manifest.json")
    _atomic_write(csv_path, format_csv(result))
    _atomic_write(manifest_path, json.dumps(build_manifest(result), indent=2, sort_keys=True) + "\n")
    written = [csv_path, manifest_path]
    if svg:
        svg_path = os.path.join(out_dir, f"{name}.svg")
        render_svg(result, svg_path, x_label=x_label)
        written.append(svg_path)
    return written


def write_table(rows: Sequence[Dict[str, float]], columns: Sequence[str], path: str):
    """Write plain dict rows as CSV (used by the fisher table)"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(row[c]) for c in columns])
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    _atomic_write(path, buffer.getvalue())
