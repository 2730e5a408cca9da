"""Deterministic CSV and SVG serialization.

CSV files are written byte-identically for identical inputs: UTF-8, LF line
endings, ``.`` decimal separator, ``%.17g`` floats (round-trip exact for
IEEE doubles), mandatory header row.  Writes go through a temp file + rename
so readers never observe a partial file.
"""

from __future__ import annotations

import os
import tempfile
from typing import Iterable, Sequence

import numpy as np

__all__ = ["format_float", "write_csv", "write_svg_polyline"]


def format_float(x) -> str:
    """Shortest round-trip decimal form of a float, C-locale style."""
    if isinstance(x, (np.floating,)):
        x = float(x)
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_csv(path: str, header: Sequence[str], columns: Sequence[Iterable]) -> None:
    """Write columns of equal length under ``header``.

    Column values that are floats are rendered with :func:`format_float`;
    anything else via ``str``.
    """
    cols = [list(c) for c in columns]
    if len(cols) != len(header):
        raise ValueError(f"{len(header)} header fields for {len(cols)} columns")
    n = len(cols[0]) if cols else 0
    for c in cols:
        if len(c) != n:
            raise ValueError("ragged columns")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(format_float(c[i]) for c in cols))
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_svg_polyline(
    path: str,
    x,
    y,
    width: int = 720,
    height: int = 420,
    margin: int = 48,
    title: str = "",
    x_label: str = "",
    y_label: str = "",
) -> None:
    """Minimal standalone SVG line plot — one polyline, axes box, labels.

    Intended for quick visual checks without a plotting stack; not a
    publication renderer.  Non-finite points are dropped.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.isfinite(x) & np.isfinite(y)
    x, y = x[keep], y[keep]
    if x.size == 0:
        raise ValueError("nothing finite to plot")
    x0, x1 = float(np.min(x)), float(np.max(x))
    y0, y1 = float(np.min(y)), float(np.max(y))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    iw = width - 2 * margin
    ih = height - 2 * margin

    def sx(v):
        return margin + iw * (v - x0) / (x1 - x0)

    def sy(v):
        return height - margin - ih * (v - y0) / (y1 - y0)

    pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{iw}" height="{ih}" '
        'fill="none" stroke="#888" stroke-width="1"/>',
        f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.2"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:.0f}" y="{margin / 2 + 5:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{_esc(title)}</text>'
        )
    if x_label:
        parts.append(
            f'<text x="{width / 2:.0f}" y="{height - 10}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{_esc(x_label)}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="14" y="{height / 2:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 14 {height / 2:.0f})">{_esc(y_label)}</text>'
        )
    for tick, label in ((x0, format_float(x0)), (x1, format_float(x1))):
        parts.append(
            f'<text x="{sx(tick):.0f}" y="{height - margin + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{_esc(_short(label))}</text>'
        )
    for tick in (y0 + pad, y1 - pad):
        parts.append(
            f'<text x="{margin - 4}" y="{sy(tick) + 3:.0f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_esc(_short(format_float(tick)))}</text>'
        )
    parts.append("</svg>")
    _atomic_write_text(path, "\n".join(parts) + "\n")


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _short(s: str) -> str:
    try:
        return f"{float(s):.4g}"
    except ValueError:
        return s
