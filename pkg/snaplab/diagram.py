"""
DOT rendering of space/time diagrams and cut lattices.

Space/time layout: one horizontal rail per region (r0 on top), events placed
at x = rt on their region's rail. Process edges are solid, region edges
dotted. A cut is drawn as one marker per region half a tick after the last
event it includes, joined by a dashed line. Positions are pinned (`pos` with
`!`), so render with `neato -n` or `fdp`.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .causality import lattice_edges
from .model import Computation, Cut, EventKind, Snapshot, Time

RAIL_SPACING = 1.0


def _y(r: int) -> float:
    # `or` turns -0.0 into 0.0
    return -r * RAIL_SPACING or 0.0


def _pos(x: float, y: float) -> str:
    return f'pos="{x:g},{y:g}!"'


def cut_positions(comp: Computation, cut: Cut) -> list[Time]:
    """Per region, the rt of the last event of cut on it (0 if none)."""
    last = [0] * comp.region_count
    for e in comp.events:
        if e.id in cut:
            last[e.r] = max(last[e.r], e.rt)
    return last


def diagram(
    comp: Computation,
    s: Optional[Snapshot] = None,
    cut: Optional[Cut] = None,
) -> str:
    """
    Space/time diagram of comp as DOT text.

    Args:
        comp: The computation
        s: Snapshot whose copy times are drawn as the cut line
        cut: Event set drawn as the cut line (ignored if s is given)

    Returns:
        str: Deterministic DOT source
    """
    end = comp.last_time + 1
    lines = [
        'digraph spacetime {',
        '  node [shape=circle, fontsize=10];',
    ]

    for r in range(comp.region_count):
        y = _y(r)
        lines.append(f'  "r{r}" [shape=plaintext, label="r{r}", {_pos(-0.5, y)}];')
        lines.append(f'  "r{r}_end" [shape=point, {_pos(end, y)}];')

    for e in comp.events:
        style = ', style=dashed' if e.kind is EventKind.NON_MODIFYING else ''
        lines.append(f'  "e{e.id}" [label="e{e.id}"{style}, {_pos(e.rt, _y(e.r))}];')

    for r, events in enumerate(comp.region_events):
        ids = [f"e{e.id}" for e in events]
        if ids:
            lines.append(f'  "r{r}" -> "{ids[0]}" [dir=none, color=gray];')
            lines.append(f'  "{ids[-1]}" -> "r{r}_end" [dir=none, color=gray];')
        else:
            lines.append(f'  "r{r}" -> "r{r}_end" [dir=none, color=gray];')
        # region edges
        for a, b in zip(ids, ids[1:]):
            lines.append(f'  "{a}" -> "{b}" [style=dotted];')

    for events in comp.process_events:
        for a, b in zip(events, events[1:]):
            lines.append(f'  "e{a.id}" -> "e{b.id}" [style=solid];')

    if s is not None:
        marks: Optional[list[float]] = [t + 0.5 for t in s.times]
    elif cut is not None:
        marks = [t + 0.5 for t in cut_positions(comp, cut)]
    else:
        marks = None

    if marks is not None:
        for r, x in enumerate(marks):
            lines.append(
                f'  "cut_r{r}" [shape=box, label="", width=0.05, height=0.3, '
                f'color=red, {_pos(x, _y(r))}];'
            )
        for r in range(1, comp.region_count):
            lines.append(f'  "cut_r{r - 1}" -> "cut_r{r}" [dir=none, style=dashed, color=red];')

    lines.append('}')
    return '\n'.join(lines) + '\n'


def _cut_label(cut: Cut) -> str:
    return '{' + ','.join(f"e{e}" for e in sorted(cut)) + '}'


def lattice_dot(cuts: Sequence[Cut], edges: Optional[list[tuple[int, int]]] = None) -> str:
    """
    Lattice of consistent cuts as DOT text, one edge per covering pair.

    Args:
        cuts: Cuts in the order of enumerate_consistent_cuts
        edges: Covering pairs (computed if omitted)
    """
    cuts = list(cuts)
    edges = lattice_edges(cuts) if edges is None else edges
    lines = ['digraph lattice {', '  rankdir=BT;', '  node [shape=box, fontsize=10];']
    for i, c in enumerate(cuts):
        lines.append(f'  "c{i}" [label="{_cut_label(c)}"];')
    for i, j in edges:
        lines.append(f'  "c{i}" -> "c{j}";')
    lines.append('}')
    return '\n'.join(lines) + '\n'
