"""
snaplab usage examples.

Run this file to see examples in action.
"""

# Add parent directory to path (if running directly)
if __name__ == "__main__":
    import sys
    from pathlib import Path
    sys.path.insert(0, str(Path(__file__).parent))

from snaplab import (
    CampaignConfig,
    CopyOnWritePlan,
    FrozenPlan,
    PriorityPlan,
    SequentialPlan,
    Snapshot,
    WorkloadConfig,
    canonical_computation,
    classify,
    enumerate_consistent_cuts,
    generate,
    list_strategies,
    list_workloads,
    replay,
    verify_implications,
)
from snaplab.vclock import clock_report, clock_snapshot


def basic_example():
    """Generate, acquire, classify."""
    print("=== Basic Example ===\n")

    print("Available workloads:", list_workloads())
    print("Available strategies:", list_strategies())

    comp = generate(WorkloadConfig(region_count=4, process_count=2, event_count=30, seed=1))
    gt = replay(comp)

    plan = SequentialPlan(at=10, delay=2)
    s = plan.acquire(comp, gt)
    print(f"\nSnapshot: {s}")
    print(f"Verdict: {classify(comp, gt, s, tau=plan.start)}")


def inconsistent_snapshot_example():
    """The smallest causally inconsistent snapshot."""
    print("\n=== Inconsistent Snapshot ===\n")

    comp = canonical_computation()
    s = Snapshot.from_pairs([(0, 0), (2, 3)])
    verdict = classify(comp, replay(comp), s, tau=0)
    print(f"Correct: {verdict.correct}, causal: {verdict.causal}")
    print(f"Clocks: {clock_report(clock_snapshot(comp, s))}")


def strategy_comparison_example():
    """Every strategy on one workload."""
    print("\n=== Strategy Comparison ===\n")

    comp = generate(WorkloadConfig(region_count=6, process_count=3, event_count=60, seed=12))
    gt = replay(comp)

    for plan in (FrozenPlan(30), SequentialPlan(30, delay=2),
                 PriorityPlan(30, priority=(5, 4), delay=2), CopyOnWritePlan(30, delay=2)):
        verdict = classify(comp, gt, plan.acquire(comp, gt), tau=plan.start)
        failed = [name for name, ok in verdict.criteria.items() if not ok]
        print(f"{plan.name:10} fails: {failed or 'nothing'}")


def lattice_example():
    """Consistent cuts of the canonical computation."""
    print("\n=== Cut Lattice ===\n")

    for cut in enumerate_consistent_cuts(canonical_computation()):
        print(sorted(cut))


def campaign_example():
    """A small implication campaign."""
    print("\n=== Campaign ===\n")

    report = verify_implications(CampaignConfig(cases=500, seed=7))
    print(report)
    for result in report.implications:
        print(f"  {result}")
    print(report.rates())


def plot_example():
    """Space/time diagram with a scan's cut line."""
    print("\n=== Plot ===\n")

    from snaplab.plotter import SpaceTimePlotter

    comp = generate(WorkloadConfig(region_count=4, process_count=2, event_count=16, seed=3))
    s = SequentialPlan(at=6, delay=2).acquire(comp, replay(comp))
    plotter = SpaceTimePlotter(comp)
    plotter.plot(s=s, title='Sequential scan from tick 6')
    plotter.show()


if __name__ == "__main__":
    import matplotlib
    matplotlib.use('TkAgg')  # Use GUI backend

    basic_example()
    inconsistent_snapshot_example()
    strategy_comparison_example()
    lattice_example()
    campaign_example()

    # Uncomment to see plots:
    # plot_example()
