"""Barcode reports: delimited table plus a rendered figure."""
from __future__ import annotations

import csv
from pathlib import Path as FsPath

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .decomposition import IntervalBarcode

__all__ = ["barcode_rows", "write_barcode_csv", "barcode_figure", "write_barcode_report"]


def barcode_rows(barcode: IntervalBarcode) -> list[tuple[int, int, int]]:
    """(start, end, multiplicity) rows sorted by interval."""
    return [(a, b, m) for (a, b), m in barcode.bars()]


def write_barcode_csv(barcode: IntervalBarcode, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["start", "end", "multiplicity"])
        writer.writerows(barcode_rows(barcode))


def barcode_figure(barcode: IntervalBarcode, path=None, title: str | None = None):
    """Draw the barcode as stacked horizontal bars over the chain positions.

    Saves to ``path`` when given (closing the figure), otherwise returns the
    open (figure, axes) pair.
    """
    fig, ax = plt.subplots(figsize=(6.0, 0.35 * max(4, barcode.total_bars()) + 0.8))
    y = 0
    for (a, b), mult in barcode.bars():
        for _ in range(mult):
            if a == b:
                ax.plot([a], [y], marker="o", color="C0", markersize=5)
            else:
                ax.hlines(y, a, b, color="C0", linewidth=3)
                ax.plot([a, b], [y, y], "|", color="C0", markersize=9)
            y += 1
    ax.set_xlim(0.5, barcode.n + 0.5)
    ax.set_ylim(-1, max(y, 1))
    ax.set_xticks(range(1, barcode.n + 1))
    ax.set_yticks([])
    ax.set_xlabel("chain position")
    ax.set_title(title or f"barcode ({barcode.total_bars()} bars, n={barcode.n})")
    ax.grid(axis="x", alpha=0.3)
    if path is None:
        return fig, ax
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return None


def write_barcode_report(barcode: IntervalBarcode, outdir, stem: str = "barcode",
                         title: str | None = None) -> dict[str, str]:
    """Write ``<stem>.csv`` and ``<stem>.png`` under ``outdir``; return their paths."""
    outdir = FsPath(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{stem}.csv"
    png_path = outdir / f"{stem}.png"
    write_barcode_csv(barcode, csv_path)
    barcode_figure(barcode, path=png_path, title=title)
    return {"csv": str(csv_path), "figure": str(png_path)}
