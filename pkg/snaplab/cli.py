"""
Command-line interface.

    snaplab simulate --regions 2 --processes 2 --events 3 --seed 1 --out trace.jsonl
    snaplab acquire --trace trace.jsonl --strategy frozen --at 0 --out snap.jsonl
    snaplab evaluate --trace trace.jsonl --snapshot snap.jsonl --tau 0
    snaplab lattice --trace trace.jsonl
    snaplab diagram --trace trace.jsonl --snapshot snap.jsonl
    snaplab verify --cases 10000 --seed 7 --out report.json

Every subcommand given --out also writes <out>.manifest.json, a record of
the resolved flags from which the run can be replayed.

Exit codes: 0 success, 2 counterexample found, 64 usage error, 70 internal
error, 74 I/O error.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from . import __version__
from .acquisition import get_strategy
from .campaign import (
    DEFAULT_CASES,
    DEFAULT_SEED,
    CampaignConfig,
    scan_campaign,
    verify_implications,
    violation_rates,
)
from .causality import DEFAULT_ENUMERATION_BOUND, enumerate_consistent_cuts, lattice_edges
from .diagram import diagram as render_diagram
from .diagram import lattice_dot
from .errors import (
    CounterexampleFound,
    InternalImplicationViolation,
    LengthMismatch,
    RecordFormatError,
    SnaplabError,
)
from .evaluator import classify, timing_deltas
from .loader import (
    RunManifest,
    TraceLoader,
    dumps_record,
    dumps_snapshot,
    dumps_trace,
    manifest_path,
    read_snapshot,
)
from .model import Computation, Snapshot
from .vclock import clock_report, clock_snapshot
from .workloads import KindRegime, WorkloadConfig, generate, list_workloads

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70
EXIT_IO = 74

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

REGIMES = [r.value for r in KindRegime]
STRATEGY_NAMES = ['frozen', 'sequential', 'cow', 'priority']


def configure_logging(verbose: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _read_snapshot(path: str, comp: Computation) -> Snapshot:
    """Reads a snapshot file and checks it has one copy per region of comp."""
    s = read_snapshot(path)
    if len(s) != comp.region_count:
        raise LengthMismatch(
            f"{path}: snapshot has {len(s)} regions, trace has {comp.region_count}"
        )
    return s


def _parse_ints(value: Optional[str], name: str) -> Optional[tuple[int, ...]]:
    """Parses '2,0,1' into (2, 0, 1)."""
    if value is None or value == '':
        return None
    try:
        return tuple(int(x) for x in value.split(','))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'",
                                 param_hint=f"--{name}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _write_manifest(
    ctx: click.Context,
    inputs: Sequence[str] = (),
    outputs: Sequence[str] = (),
    seed: Optional[int] = None,
) -> None:
    """Writes the run manifest next to the primary output, if any."""
    if not outputs:
        return
    manifest = RunManifest(
        subcommand=ctx.info_name,
        flags=dict(ctx.params),
        inputs=[str(p) for p in inputs],
        outputs=[str(p) for p in outputs],
        seed=seed,
        version=__version__,
    )
    manifest.write(manifest_path(outputs[0]))


@click.group()
@click.option('-v', '--verbose', count=True, help='-v for INFO, -vv for DEBUG logging')
@click.version_option(__version__, prog_name='snaplab')
def cli(verbose: int):
    """Simulate memory acquisitions and classify snapshot quality."""
    configure_logging(verbose)


@cli.command()
@click.option('--regions', default=2, type=int, show_default=True, help='Number of regions')
@click.option('--processes', default=2, type=int, show_default=True,
              help='Number of processes')
@click.option('--events', default=10, type=int, show_default=True, help='Number of events')
@click.option('--regime', default='unique', type=click.Choice(REGIMES), show_default=True,
              help='Event-kind regime')
@click.option('--read-fraction', default=0.0, type=float, show_default=True,
              help='Read probability under the mixed regime')
@click.option('--seed', default=0, type=int, envvar='SNAPLAB_SEED', show_envvar=True,
              help='Workload seed')
@click.option('--workload', default='random', type=click.Choice(list_workloads()),
              show_default=True, help='Workload generator')
@click.option('-o', '--out', type=click.Path(dir_okay=False), help='Trace file (default: stdout)')
@click.pass_context
def simulate(ctx, regions, processes, events, regime, read_fraction, seed, workload, out):
    """Generate a computation and write its trace."""
    config = WorkloadConfig(
        region_count=regions,
        process_count=processes,
        event_count=events,
        regime=regime,
        read_fraction=read_fraction,
        seed=seed,
        workload=workload,
    )
    comp = generate(config)
    _emit(dumps_trace(comp), out)
    _write_manifest(ctx, outputs=[out] if out else [], seed=seed)


@cli.command()
@click.option('--trace', required=True, type=click.Path(dir_okay=False), help='Trace file')
@click.option('--strategy', default='frozen', type=click.Choice(STRATEGY_NAMES),
              show_default=True, help='Acquisition strategy')
@click.option('--at', '--start', 'at', default=0, type=int, show_default=True,
              help='Freeze time (frozen) or acquisition start')
@click.option('--delay', default=1, type=int, show_default=True,
              help='Ticks between consecutive copies')
@click.option('--order', default=None, help='Scan order, e.g. 1,0,2')
@click.option('--priority', default=None, help='Regions copied first (priority strategy)')
@click.option('-o', '--out', type=click.Path(dir_okay=False),
              help='Snapshot file (default: stdout)')
@click.pass_context
def acquire(ctx, trace, strategy, at, delay, order, priority, out):
    """Take a snapshot of a trace with the given strategy."""
    loader = TraceLoader(trace)
    params: dict = {'at': at}
    if strategy != 'frozen':
        params['delay'] = delay
    if strategy in ('sequential', 'cow'):
        params['order'] = _parse_ints(order, 'order')
    if strategy == 'priority':
        params['priority'] = _parse_ints(priority, 'priority') or ()

    plan = get_strategy(strategy)(**params)
    s = plan.acquire(loader.computation, loader.ground_truth)
    _emit(dumps_snapshot(s), out)
    _write_manifest(ctx, inputs=[trace], outputs=[out] if out else [])


@cli.command()
@click.option('--trace', required=True, type=click.Path(dir_okay=False), help='Trace file')
@click.option('--snapshot', required=True, type=click.Path(dir_okay=False),
              help='Snapshot file')
@click.option('--tau', default=0, type=int, show_default=True,
              help='Reference time of the integrity checks')
@click.option('--window', is_flag=True,
              help='Restrict the quasi-instantaneous witness to [tau, last copy]')
@click.option('-o', '--out', type=click.Path(dir_okay=False),
              help='Verdict file (default: stdout)')
@click.pass_context
def evaluate(ctx, trace, snapshot, tau, window, out):
    """Classify a snapshot against all criteria."""
    loader = TraceLoader(trace)
    comp = loader.computation
    s = _read_snapshot(snapshot, comp)
    verdict = classify(comp, loader.ground_truth, s, tau,
                       order=loader.causal_order, window=window)
    record = {
        'verdict': verdict.to_dict(),
        'clocks': clock_report(clock_snapshot(comp, s, loader.clocked_trace)),
        'timing': timing_deltas(s, tau),
    }
    _emit(dumps_record(record, 'verdict'), out)
    _write_manifest(ctx, inputs=[trace, snapshot], outputs=[out] if out else [])


@cli.command()
@click.option('--trace', required=True, type=click.Path(dir_okay=False), help='Trace file')
@click.option('--bound', default=DEFAULT_ENUMERATION_BOUND, type=int, show_default=True,
              help='Largest event count accepted')
@click.option('-o', '--out', type=click.Path(dir_okay=False), help='DOT file (default: stdout)')
@click.pass_context
def lattice(ctx, trace, bound, out):
    """Emit the lattice of consistent cuts as DOT."""
    comp = TraceLoader(trace).computation
    cuts = enumerate_consistent_cuts(comp, bound=bound)
    _emit(lattice_dot(cuts, lattice_edges(cuts)), out)
    _write_manifest(ctx, inputs=[trace], outputs=[out] if out else [])


@cli.command()
@click.option('--trace', required=True, type=click.Path(dir_okay=False), help='Trace file')
@click.option('--snapshot', default=None, type=click.Path(dir_okay=False),
              help='Snapshot whose copy times form the cut line')
@click.option('--cut', default=None, help='Event ids of a cut, e.g. 1,2')
@click.option('--format', 'format', default='dot', type=click.Choice(['dot', 'png']),
              show_default=True, help='DOT text or a matplotlib figure')
@click.option('-o', '--out', type=click.Path(dir_okay=False), help='Output file')
@click.pass_context
def diagram(ctx, trace, snapshot, cut, format, out):
    """Render the space/time diagram of a trace."""
    comp = TraceLoader(trace).computation
    s = _read_snapshot(snapshot, comp) if snapshot else None
    events = _parse_ints(cut, 'cut')
    cut_set = frozenset(events) if events is not None else None
    inputs = [trace] + ([snapshot] if snapshot else [])

    if format == 'png':
        if not out:
            raise click.UsageError("--out is required for --format png")
        # imported here so that DOT output does not load matplotlib
        import matplotlib
        matplotlib.use('Agg')
        from .plotter import SpaceTimePlotter

        plotter = SpaceTimePlotter(comp)
        plotter.plot(s=s, cut=cut_set, title=Path(trace).name)
        plotter.save(out)
    else:
        _emit(render_diagram(comp, s=s, cut=cut_set), out)
    _write_manifest(ctx, inputs=inputs, outputs=[out] if out else [])


@cli.command()
@click.option('--cases', default=DEFAULT_CASES, type=int, show_default=True,
              help='Number of random cases')
@click.option('--seed', default=DEFAULT_SEED, type=int, envvar='SNAPLAB_SEED',
              show_envvar=True, help='Campaign seed')
@click.option('--regime', default=','.join(REGIMES), show_default=True,
              help='Comma-separated kind regimes')
@click.option('--strategy', default='frozen,sequential,priority,cow', show_default=True,
              help='Comma-separated strategies')
@click.option('--jobs', default=1, type=int, show_default=True, help='Worker processes')
@click.option('--window', is_flag=True, help='Restrict quasi-instantaneous witnesses')
@click.option('-o', '--out', type=click.Path(dir_okay=False), help='Report file (JSON)')
@click.option('--csv', type=click.Path(dir_okay=False), help='Case table (CSV)')
@click.option('--excel', type=click.Path(dir_okay=False),
              help='Case table and rates (Excel)')
@click.pass_context
def verify(ctx, cases, seed, regime, strategy, jobs, window, out, csv, excel):
    """Run an implication campaign; exit 2 on any counterexample."""
    config = CampaignConfig(
        cases=cases,
        seed=seed,
        regimes=tuple(regime.split(',')),
        strategies=tuple(strategy.split(',')),
        jobs=jobs,
        window=window,
    )
    report = verify_implications(config)

    for result in report.implications:
        mark = 'ok' if result.counterexamples == 0 else 'FAIL'
        click.echo(
            f"{mark:4} {result.name}: {result.cases} cases, "
            f"{result.premise_held} premises, {result.counterexamples} counterexamples"
        )
    for witness in report.witnesses:
        found = witness.source if witness.found else 'none'
        click.echo(f"     {witness.name}: witness {found}")

    outputs = [p for p in (out, csv, excel) if p]
    if out:
        report.to_json(out)
    if csv:
        report.to_csv(csv)
    if excel:
        report.to_excel(excel)
    _write_manifest(ctx, outputs=outputs, seed=seed)

    first = report.first_counterexample()
    if first is not None:
        raise CounterexampleFound(*first)


@cli.command()
@click.option('--seeds', default=100, type=int, show_default=True, help='Seeds 0..N-1')
@click.option('--regions', default=6, type=int, show_default=True)
@click.option('--processes', default=3, type=int, show_default=True)
@click.option('--events', default=40, type=int, show_default=True)
@click.option('--delay', default=1, type=int, show_default=True)
@click.option('-o', '--out', type=click.Path(dir_okay=False), help='Case table (CSV)')
@click.pass_context
def scan(ctx, seeds, regions, processes, events, delay, out):
    """Sequential scans over seeded workloads; prints violation rates."""
    cases = scan_campaign(range(seeds), region_count=regions, process_count=processes,
                          event_count=events, delay=delay)
    click.echo(violation_rates(cases).T.to_string())
    if out:
        cases.to_csv(out, index=False)
    _write_manifest(ctx, outputs=[out] if out else [])


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the CLI and maps outcomes to exit codes.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        int: Exit code
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None,
                          prog_name='snaplab', standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except CounterexampleFound as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_COUNTEREXAMPLE
    except InternalImplicationViolation as exc:
        click.echo(f"Internal error: {exc}", err=True)
        return EXIT_INTERNAL
    except (RecordFormatError, OSError, click.FileError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_IO
    except (SnaplabError, ValueError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    # --help and --version return their exit code
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == '__main__':
    main()
