"""SVG root-plane figures: one scatter per solution.

Each figure shows the complex root plane with the real and imaginary axes,
dashed guides at the half-integer imaginary levels strings occupy, a dot per
root, and the half-integer quantum number next to each root (the exact
singular pair carries its combined number once, at the upper member).
Figures for a batch are emitted in catalogue order: descending real part of
the largest string.  The markup is hand-rolled SVG 1.1 with fixed decimal
formatting, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import os
import warnings
from xml.sax.saxutils import escape

from .classify import LabeledSolution

__all__ = ["solution_svg", "write_figures", "catalogue_order"]

_SIZE = 420.0
_MARGIN = 42.0


def _scale(roots: tuple[complex, ...]) -> float:
    extent = max(
        max(abs(z.real) for z in roots),
        max(abs(z.imag) for z in roots),
        0.75,
    )
    return extent * 1.2


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def solution_svg(labeled: LabeledSolution, title: str = "") -> str:
    """Standalone SVG document for one solution's root scatter."""
    sol = labeled.solution
    roots = sol.roots
    half = _SIZE / 2.0
    span = half - _MARGIN
    ext = _scale(roots)

    def X(re: float) -> float:
        return half + span * re / ext

    def Y(im: float) -> float:
        return half - span * im / ext

    out: list[str] = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(_SIZE)}" height="{_fmt(_SIZE)}" '
        f'viewBox="0 0 {_fmt(_SIZE)} {_fmt(_SIZE)}">'
    )
    out.append(f'<rect width="{_fmt(_SIZE)}" height="{_fmt(_SIZE)}" fill="white"/>')

    # dashed guides at the half-integer imaginary levels inside the frame
    level = 0.5
    while level < ext:
        for im in (level, -level):
            y = _fmt(Y(im))
            out.append(
                f'<line x1="{_fmt(_MARGIN)}" y1="{y}" x2="{_fmt(_SIZE - _MARGIN)}" '
                f'y2="{y}" stroke="#dddddd" stroke-dasharray="4,4"/>'
            )
        level += 0.5

    out.append(
        f'<line x1="{_fmt(_MARGIN)}" y1="{_fmt(half)}" '
        f'x2="{_fmt(_SIZE - _MARGIN)}" y2="{_fmt(half)}" stroke="#888888"/>'
    )
    out.append(
        f'<line x1="{_fmt(half)}" y1="{_fmt(_MARGIN)}" '
        f'x2="{_fmt(half)}" y2="{_fmt(_SIZE - _MARGIN)}" stroke="#888888"/>'
    )

    labels: list[str | None] = [
        None if v is None else str(v) for v in labeled.root_numbers
    ]
    if labeled.pair_number is not None:
        # the exact pair sits at indices 0 (+i/2) and 1 (-i/2)
        labels[0] = f"pair {labeled.pair_number}"

    for z, lab in zip(roots, labels):
        cx, cy = X(z.real), Y(z.imag)
        out.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4.5" fill="black"/>'
        )
        if lab is not None:
            out.append(
                f'<text x="{_fmt(cx + 8.0)}" y="{_fmt(cy - 6.0)}" '
                f'font-family="monospace" font-size="13">{escape(lab)}</text>'
            )

    header = title or (
        f"N={sol.N} kind={sol.kind} "
        f"nu=({','.join(str(p) for p in labeled.configuration)})"
    )
    out.append(
        f'<text x="{_fmt(10.0)}" y="{_fmt(22.0)}" font-family="monospace" '
        f'font-size="14">{escape(header)}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _largest_string_center(labeled: LabeledSolution) -> float:
    best = max(labeled.partition.strings, key=lambda S: (S.length, S.center))
    return best.center


def catalogue_order(items: list[LabeledSolution]) -> list[LabeledSolution]:
    """Descending real part of the largest string, ties by root tuple."""
    return sorted(
        items,
        key=lambda lab: (
            -_largest_string_center(lab),
            tuple((round(z.real, 9), round(z.imag, 9))
                  for z in lab.solution.roots),
        ),
    )


def write_figures(
    items: list[LabeledSolution],
    out_dir: str,
    configuration: tuple[int, ...] | None = None,
    prefix: str = "solution",
) -> list[str]:
    """One SVG per solution, catalogue-ordered; empty selection writes none."""
    chosen = [
        lab for lab in items
        if configuration is None or lab.configuration == tuple(configuration)
    ]
    if not chosen:
        warnings.warn(
            "figure selection is empty; no files written", stacklevel=2
        )
        return []
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    ordered = catalogue_order(chosen)
    width = max(3, len(str(len(ordered))))
    for i, lab in enumerate(ordered, start=1):
        title = (
            f"#{i}  N={lab.solution.N} "
            f"nu=({','.join(str(p) for p in lab.configuration)})"
        )
        path = os.path.join(out_dir, f"{prefix}_{i:0{width}d}.svg")
        with open(path, "w", encoding="ascii") as fh:
            fh.write(solution_svg(lab, title=title))
        paths.append(path)
    return paths
