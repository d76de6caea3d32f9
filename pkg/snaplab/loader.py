"""
Record files for traces, snapshots, verdicts and run manifests.

Every file is JSON lines: one self-describing record per line, keys sorted,
the first record a header carrying `format_version`. Serialization is
deterministic, so writing what was read reproduces the file byte for byte.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterator, Optional, Union

import pandas as pd

from .causality import CausalOrder, build_causal_order
from .errors import RecordFormatError
from .model import Computation, Event, EventKind, GroundTruth, Snapshot, replay
from .vclock import ClockedTrace, build_clocked_trace

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

PathLike = Union[str, Path]


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(',', ':'))


def _records(text: str, source: str) -> Iterator[dict]:
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordFormatError(f"{source}:{lineno}: invalid JSON ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise RecordFormatError(f"{source}:{lineno}: expected an object")
        yield record


def _header(records: Iterator[dict], kind: str, source: str) -> dict:
    header = next(records, None)
    if header is None:
        raise RecordFormatError(f"{source}: empty file")
    version = header.get('format_version')
    if version != FORMAT_VERSION:
        raise RecordFormatError(
            f"{source}: unsupported format_version {version!r} (expected {FORMAT_VERSION})"
        )
    if header.get('record') != kind:
        raise RecordFormatError(f"{source}: expected a {kind} file, got {header.get('record')!r}")
    return header


def _field(record: dict, name: str, source: str) -> Any:
    try:
        return record[name]
    except KeyError:
        raise RecordFormatError(f"{source}: record {record} lacks field '{name}'") from None


def dumps_trace(comp: Computation) -> str:
    """Serializes a computation as trace records."""
    lines = [_dump({
        'format_version': FORMAT_VERSION,
        'record': 'trace',
        'region_count': comp.region_count,
        'process_count': comp.process_count,
        'initial_values': list(comp.initial_values),
    })]
    for e in comp.events:
        lines.append(_dump({
            'record': 'event',
            'id': e.id,
            'p': e.p,
            'r': e.r,
            'rt': e.rt,
            'kind': e.kind.value,
            'written': e.written,
        }))
    return '\n'.join(lines) + '\n'


def loads_trace(text: str, source: str = '<trace>') -> Computation:
    """
    Parses trace records.

    Raises:
        RecordFormatError: On malformed records or an unknown format_version
        InvalidComputation: If the events violate the computation invariants
    """
    records = _records(text, source)
    header = _header(records, 'trace', source)
    events = []
    for record in records:
        try:
            kind = EventKind(_field(record, 'kind', source))
        except ValueError as exc:
            raise RecordFormatError(f"{source}: {exc}") from exc
        events.append(Event(
            id=int(_field(record, 'id', source)),
            p=int(_field(record, 'p', source)),
            r=int(_field(record, 'r', source)),
            rt=int(_field(record, 'rt', source)),
            kind=kind,
            written=record.get('written'),
        ))
    return Computation(
        region_count=int(_field(header, 'region_count', source)),
        process_count=int(_field(header, 'process_count', source)),
        initial_values=tuple(_field(header, 'initial_values', source)),
        events=tuple(events),
    )


def write_trace(comp: Computation, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(dumps_trace(comp))
    logger.info("Wrote trace with %d events to %s", len(comp), path)
    return path


def read_trace(path: PathLike) -> Computation:
    path = Path(path)
    return loads_trace(path.read_text(), source=str(path))


def dumps_snapshot(s: Snapshot) -> str:
    """Serializes a snapshot as one copy record per region."""
    lines = [_dump({
        'format_version': FORMAT_VERSION,
        'record': 'snapshot',
        'region_count': len(s),
    })]
    for r, c in enumerate(s):
        lines.append(_dump({'record': 'copy', 'r': r, 'v': c.v, 't': c.t}))
    return '\n'.join(lines) + '\n'


def loads_snapshot(text: str, source: str = '<snapshot>') -> Snapshot:
    """
    Parses snapshot records.

    Raises:
        RecordFormatError: If a region is missing, duplicated or out of range
    """
    records = _records(text, source)
    header = _header(records, 'snapshot', source)
    n = int(_field(header, 'region_count', source))
    copies: dict[int, tuple[int, int]] = {}
    for record in records:
        r = int(_field(record, 'r', source))
        if not 0 <= r < n or r in copies:
            raise RecordFormatError(f"{source}: region {r} is out of range or repeated")
        copies[r] = (int(_field(record, 'v', source)), int(_field(record, 't', source)))
    if len(copies) != n:
        missing = sorted(set(range(n)) - set(copies))
        raise RecordFormatError(f"{source}: snapshot lacks regions {missing}")
    return Snapshot.from_pairs(copies[r] for r in range(n))


def write_snapshot(s: Snapshot, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(dumps_snapshot(s))
    logger.info("Wrote snapshot of %d regions to %s", len(s), path)
    return path


def read_snapshot(path: PathLike) -> Snapshot:
    path = Path(path)
    return loads_snapshot(path.read_text(), source=str(path))


def dumps_record(record: dict, kind: str) -> str:
    """A single self-describing record (verdicts, manifests) with its header fields."""
    return _dump({'format_version': FORMAT_VERSION, 'record': kind, **record}) + '\n'


def write_record(record: dict, kind: str, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(dumps_record(record, kind))
    logger.info("Wrote %s record to %s", kind, path)
    return path


def read_record(path: PathLike, kind: str) -> dict:
    path = Path(path)
    record = _header(_records(path.read_text(), str(path)), kind, str(path))
    return {k: v for k, v in record.items() if k not in ('format_version', 'record')}


def manifest_path(out: PathLike) -> Path:
    """The manifest written alongside an output file."""
    out = Path(out)
    return out.with_name(out.name + '.manifest.json')


@dataclass
class RunManifest:
    """
    Everything needed to replay a CLI run.

    Attributes:
        subcommand: CLI subcommand name
        flags: Resolved flag values, defaults included
        inputs: Input file paths
        outputs: Output file paths
        seed: Seed in effect (None if the subcommand takes none)
        version: snaplab version that produced the outputs
    """
    subcommand: str
    flags: dict = field(default_factory=dict)
    inputs: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    seed: Optional[int] = None
    version: str = ''

    def argv(self) -> list[str]:
        """Command line that reproduces the run."""
        args = [self.subcommand]
        for name, value in sorted(self.flags.items()):
            flag = '--' + name.replace('_', '-')
            if value is None or value is False:
                continue
            if value is True:
                args.append(flag)
            elif isinstance(value, (list, tuple)):
                args += [flag, ','.join(str(v) for v in value)]
            else:
                args += [flag, str(value)]
        return args

    def write(self, path: PathLike) -> Path:
        return write_record(asdict(self), 'manifest', path)

    @classmethod
    def read(cls, path: PathLike) -> RunManifest:
        return cls(**read_record(path, 'manifest'))


@dataclass
class TraceInfo:
    """Summary of a loaded trace."""
    filename: str
    region_count: int
    process_count: int
    event_count: int
    last_time: int
    kinds: dict = field(default_factory=dict)

    def __repr__(self):
        return (
            f"TraceInfo(\n"
            f"  file='{self.filename}',\n"
            f"  regions={self.region_count},\n"
            f"  processes={self.process_count},\n"
            f"  events={self.event_count},\n"
            f"  kinds={self.kinds}\n"
            f")"
        )


class TraceLoader:
    """
    Loads a trace file and derives its ground truth and orders on demand.

    Usage:
        loader = TraceLoader('trace.jsonl')
        comp = loader.computation
        gt = loader.ground_truth
        df = loader.data          # one row per event
        print(loader.info)
    """

    def __init__(self, filepath: PathLike):
        """
        Initializes the loader.

        Args:
            filepath: Path to a trace file
        """
        self.filepath = Path(filepath)

        if not self.filepath.exists():
            raise FileNotFoundError(f"File not found: {filepath}")

        self._computation = read_trace(self.filepath)

    @property
    def computation(self) -> Computation:
        return self._computation

    @cached_property
    def ground_truth(self) -> GroundTruth:
        return replay(self._computation)

    @cached_property
    def causal_order(self) -> CausalOrder:
        return build_causal_order(self._computation)

    @cached_property
    def clocked_trace(self) -> ClockedTrace:
        return build_clocked_trace(self._computation)

    @cached_property
    def data(self) -> pd.DataFrame:
        """Events as a DataFrame (id, p, r, rt, kind, written)."""
        columns = ['id', 'p', 'r', 'rt', 'kind', 'written']
        rows = [
            (e.id, e.p, e.r, e.rt, e.kind.value, e.written) for e in self._computation.events
        ]
        return pd.DataFrame(rows, columns=columns)

    @property
    def info(self) -> TraceInfo:
        comp = self._computation
        kinds = self.data['kind'].value_counts().to_dict() if len(comp) else {}
        return TraceInfo(
            filename=self.filepath.name,
            region_count=comp.region_count,
            process_count=comp.process_count,
            event_count=len(comp),
            last_time=comp.last_time,
            kinds=kinds,
        )

    def head(self, n: int = 5) -> pd.DataFrame:
        """Shows the first n events."""
        return self.data.head(n)

    def __getitem__(self, key):
        """Direct column access: loader['rt']"""
        return self.data[key]

    def __len__(self):
        return len(self._computation)

    def __repr__(self):
        comp = self._computation
        return (
            f"TraceLoader(\n"
            f"  file='{self.filepath.name}',\n"
            f"  regions={comp.region_count},\n"
            f"  events={len(comp)}\n"
            f")"
        )


__all__ = [
    'FORMAT_VERSION',
    'RunManifest',
    'TraceInfo',
    'TraceLoader',
    'dumps_record',
    'dumps_snapshot',
    'dumps_trace',
    'loads_snapshot',
    'loads_trace',
    'manifest_path',
    'read_record',
    'read_snapshot',
    'read_trace',
    'write_record',
    'write_snapshot',
    'write_trace',
]
