"""
SpaceTimePlotter - matplotlib rendering of computations and campaign results.
"""

from __future__ import annotations

import matplotlib.pyplot as plt
import pandas as pd

from .diagram import cut_positions
from .model import Computation, Cut, EventKind, Snapshot


class SpaceTimePlotter:
    """
    Draws space/time diagrams of a computation.

    Basic usage:
        plotter = SpaceTimePlotter(comp)

        # Rails, events and process arrows
        plotter.plot()

        # With a snapshot's cut line
        plotter.plot(s=snapshot, title='Sequential scan')

        # Violation rates of a campaign
        plotter.rates(report.rates())
    """

    def __init__(self, comp: Computation, figsize: tuple = (12, 4)):
        """
        Initializes the plotter.

        Args:
            comp: The computation to draw
            figsize: Default figure size (width, height)
        """
        self.comp = comp
        self.figsize = figsize

    def plot(
        self,
        s: Snapshot | None = None,
        cut: Cut | None = None,
        title: str | None = None,
        labels: bool = True,
        figsize: tuple | None = None,
    ) -> tuple[plt.Figure, plt.Axes]:
        """
        Plots the space/time diagram.

        Args:
            s: Snapshot whose copy times form the cut line
            cut: Event set drawn as the cut line (ignored if s is given)
            title: Plot title
            labels: Annotate events with their ids
            figsize: Figure size

        Returns:
            tuple: (Figure, Axes)
        """
        comp = self.comp
        end = comp.last_time + 1
        fig, ax = plt.subplots(figsize=figsize or self.figsize)
        colors = plt.rcParams['axes.prop_cycle'].by_key()['color']

        # Rails, r0 on top
        for r in range(comp.region_count):
            ax.hlines(-r, 0, end, color='gray', linewidth=1)

        for events in comp.region_events:
            for a, b in zip(events, events[1:]):
                ax.plot([a.rt, b.rt], [-a.r, -b.r], linestyle=':', color='gray')

        for p, events in enumerate(comp.process_events):
            color = colors[p % len(colors)]
            for a, b in zip(events, events[1:]):
                ax.annotate(
                    '', xy=(b.rt, -b.r), xytext=(a.rt, -a.r),
                    arrowprops={'arrowstyle': '->', 'color': color},
                )
            for e in events:
                hollow = e.kind is EventKind.NON_MODIFYING
                ax.scatter(
                    e.rt, -e.r, s=80, zorder=3,
                    facecolors='white' if hollow else color, edgecolors=color,
                    label=f'p{p}' if e is events[0] else None,
                )
                if labels:
                    ax.annotate(f'e{e.id}', (e.rt, -e.r), textcoords='offset points',
                                xytext=(0, 8), ha='center', fontsize=8)

        if s is not None:
            marks = [t + 0.5 for t in s.times]
        elif cut is not None:
            marks = [t + 0.5 for t in cut_positions(comp, cut)]
        else:
            marks = None
        if marks is not None:
            ax.plot(marks, [-r for r in range(comp.region_count)],
                    color='red', linestyle='--', marker='|', markersize=14, label='cut')

        ax.set_yticks([-r for r in range(comp.region_count)])
        ax.set_yticklabels([f'r{r}' for r in range(comp.region_count)])
        ax.set_xlabel('Time (ticks)')
        ax.set_xlim(-0.5, end + 0.5)
        if title:
            ax.set_title(title)
        if comp.events or marks is not None:
            ax.legend(loc='upper right', fontsize=8)

        plt.tight_layout()
        return fig, ax

    @staticmethod
    def rates(
        rates: pd.DataFrame,
        title: str | None = None,
        figsize: tuple | None = None,
    ) -> tuple[plt.Figure, plt.Axes]:
        """
        Bar chart of violation rates.

        Args:
            rates: Rows are groups (e.g. strategies), columns are criteria
            title: Plot title
            figsize: Figure size

        Returns:
            tuple: (Figure, Axes)
        """
        fig, ax = plt.subplots(figsize=figsize or (12, 5))
        rates.T.plot.bar(ax=ax, rot=30)
        ax.set_ylabel('Violation rate')
        ax.set_ylim(0, 1)
        ax.grid(True, axis='y', alpha=0.3)
        ax.set_title(title or 'Violation rates per criterion')
        plt.tight_layout()
        return fig, ax

    def show(self):
        """Shows all plots."""
        plt.show()

    def save(self, filename: str, dpi: int = 150, **kwargs):
        """Saves the current figure."""
        plt.savefig(filename, dpi=dpi, bbox_inches='tight', **kwargs)
