"""Render figures from zhangmap CSV files.

Schema validation happens before any drawing; rendering is deterministic
(Agg backend, fixed dpi, no timestamps in the PNG metadata), so the same
CSV and spec always produce a byte-identical image.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

HEATMAP = "heatmap"
CURVE = "curve"
BIFURCATION = "bifurcation"
ORBITTRACE = "orbittrace"
KINDS = (HEATMAP, CURVE, BIFURCATION, ORBITTRACE)

SCHEMAS = {
    HEATMAP: ["c", "alpha", "lambda", "regime"],
    CURVE: ["param", "lambda", "status"],
    BIFURCATION: ["param", "x"],
    ORBITTRACE: ["n", "x"],
}

LOG_DECADES = 6.0  # auto log-scale threshold for bifurcation/orbit data


class PlotsError(Exception):
    """Base class for rendering errors."""


class SchemaMismatch(PlotsError):
    """CSV header does not match the declared figure kind."""


class EmptyInput(PlotsError):
    """CSV contains a header but no data rows."""


@dataclass
class FigureSpec:
    kind: str
    input_csv: str
    output_image: str
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaMismatch(f"unknown figure kind {self.kind!r}")


def _read_csv(spec: FigureSpec) -> tuple[list[str], list[list[str]]]:
    with open(spec.input_csv, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaMismatch(f"{spec.input_csv}: no header row")
    header, data = rows[0], rows[1:]
    expect = SCHEMAS[spec.kind]
    if header != expect:
        raise SchemaMismatch(
            f"{spec.input_csv}: header {header} does not match the "
            f"{spec.kind} schema {expect}")
    if not data:
        raise EmptyInput(f"{spec.input_csv}: header only, nothing to plot")
    return header, data


def _spans_decades(values: np.ndarray) -> bool:
    mags = np.abs(values[np.isfinite(values)])
    mags = mags[mags > 0]
    if mags.size == 0:
        return False
    return math.log10(mags.max() / mags.min()) > LOG_DECADES


def _new_axes(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(8.0, 5.0), dpi=120)
    if spec.title:
        ax.set_title(spec.title)
    return fig, ax


def _finish(fig, spec: FigureSpec):
    fig.tight_layout()
    # strip Software metadata so rebuilt matplotlib versions aside, the
    # same environment always produces identical bytes
    fig.savefig(spec.output_image, metadata={"Software": None}
                if spec.output_image.endswith(".png") else None)
    plt.close(fig)


def _render_heatmap(spec: FigureSpec, data: list[list[str]]):
    cs = sorted({float(r[0]) for r in data})
    alphas = sorted({float(r[1]) for r in data})
    ci = {v: i for i, v in enumerate(cs)}
    ai = {v: i for i, v in enumerate(alphas)}
    lam = np.full((len(cs), len(alphas)), np.nan)
    for r in data:
        lam[ci[float(r[0])], ai[float(r[1])]] = float(r[2])
    fig, ax = _new_axes(spec)
    mesh = ax.pcolormesh(alphas, cs, lam, shading="nearest", cmap="RdBu_r")
    fig.colorbar(mesh, ax=ax, label="lambda")
    ax.set_xlabel(spec.xlabel or "alpha")
    ax.set_ylabel(spec.ylabel or "c")
    _finish(fig, spec)


def _render_curve(spec: FigureSpec, data: list[list[str]]):
    param = np.array([float(r[0]) for r in data])
    lam = np.array([float(r[1]) for r in data])
    fig, ax = _new_axes(spec)
    ok = np.isfinite(lam)
    ax.plot(param[ok], lam[ok], lw=1.0, color="#1f4e9c")
    ax.axhline(0.0, color="0.5", lw=0.7)
    ax.set_xlabel(spec.xlabel or "parameter")
    ax.set_ylabel(spec.ylabel or "lambda")
    _finish(fig, spec)


def _render_bifurcation(spec: FigureSpec, data: list[list[str]]):
    param = np.array([float(r[0]) for r in data])
    x = np.array([float(r[1]) for r in data])
    fig, ax = _new_axes(spec)
    if _spans_decades(x) and np.all(x[np.isfinite(x)] > 0):
        ax.set_yscale("log")
    ax.plot(param, x, ",", color="black", markersize=0.5)
    ax.set_xlabel(spec.xlabel or "parameter")
    ax.set_ylabel(spec.ylabel or "x")
    _finish(fig, spec)


def _render_orbittrace(spec: FigureSpec, data: list[list[str]]):
    n = np.array([float(r[0]) for r in data])
    x = np.array([float(r[1]) for r in data])
    fig, ax = _new_axes(spec)
    if _spans_decades(x):
        # |x| on log scale, sign carried by marker color
        pos = x > 0
        ax.set_yscale("log")
        ax.plot(n[pos], np.abs(x[pos]), ".", color="#1f4e9c", markersize=3,
                label="x > 0")
        if (~pos).any():
            ax.plot(n[~pos], np.abs(x[~pos]), ".", color="#c23b22",
                    markersize=3, label="x <= 0")
            ax.legend(loc="best")
        ax.set_ylabel(spec.ylabel or "|x_n|")
    else:
        ax.plot(n, x, "-", lw=0.8, color="#1f4e9c")
        ax.set_ylabel(spec.ylabel or "x_n")
    ax.set_xlabel(spec.xlabel or "n")
    _finish(fig, spec)


_RENDERERS = {
    HEATMAP: _render_heatmap,
    CURVE: _render_curve,
    BIFURCATION: _render_bifurcation,
    ORBITTRACE: _render_orbittrace,
}


def render(spec: FigureSpec) -> str:
    """Validate the CSV against the kind's schema, then draw.

    Returns the output path.  SchemaMismatch/EmptyInput are raised before
    any figure object is created, so a failed render writes nothing.
    """
    if not os.path.exists(spec.input_csv):
        raise SchemaMismatch(f"{spec.input_csv}: no such file")
    _, data = _read_csv(spec)
    _RENDERERS[spec.kind](spec, data)
    return spec.output_image
