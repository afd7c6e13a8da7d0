"""The ingest-process-emit job: the unit of execution in a topology.

A job consumes records from its source, pushes each through its processor
chain in order, and emits survivors to its sink. A processor raising on one
record routes that record to the dead-letter sink and the job continues.
Source and sink kinds resolve through a registry so new kinds (archives,
synthetic streams) can plug in from other modules.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .log import DurableLog
from .processors import Chain, Processor, chain
from .records import StreamRecord


class JobStartupError(RuntimeError):
    pass


@dataclass
class JobSpec:
    name: str
    ingest: dict
    processors: list[Processor] = field(default_factory=list)
    emit: dict = field(default_factory=lambda: {"kind": "null"})
    dead_letter: Optional[dict] = None


@dataclass
class JobReport:
    name: str
    records_in: int = 0
    records_out: int = 0
    errors: int = 0
    dead_letters: list = field(default_factory=list)


# -- source/sink registry ----------------------------------------------------

SourceFactory = Callable[[dict], Iterator[StreamRecord]]
SinkFactory = Callable[[dict], Callable[[StreamRecord], None]]

_SOURCE_KINDS: dict[str, SourceFactory] = {}
_SINK_KINDS: dict[str, SinkFactory] = {}


def register_source(kind: str, factory: SourceFactory) -> None:
    _SOURCE_KINDS[kind] = factory


def register_sink(kind: str, factory: SinkFactory) -> None:
    _SINK_KINDS[kind] = factory


def resolve_source(descriptor: dict) -> Iterator[StreamRecord]:
    kind = descriptor.get("kind")
    factory = _SOURCE_KINDS.get(kind)
    if factory is None:
        raise JobStartupError(f"unknown source kind: {kind!r}")
    try:
        return factory(descriptor)
    except JobStartupError:
        raise
    except Exception as exc:
        raise JobStartupError(f"source {kind!r} unreachable: {exc}") from exc


def resolve_sink(descriptor: dict) -> Callable[[StreamRecord], None]:
    kind = descriptor.get("kind")
    factory = _SINK_KINDS.get(kind)
    if factory is None:
        raise JobStartupError(f"unknown sink kind: {kind!r}")
    try:
        return factory(descriptor)
    except JobStartupError:
        raise
    except Exception as exc:
        raise JobStartupError(f"sink {kind!r} unreachable: {exc}") from exc


def _memory_source(descriptor: dict) -> Iterator[StreamRecord]:
    return iter(descriptor["records"])


def _log_source(descriptor: dict) -> Iterator[StreamRecord]:
    log: DurableLog = descriptor["log"]
    return log.replay_from(descriptor.get("offset", 0))


def _memory_sink(descriptor: dict) -> Callable[[StreamRecord], None]:
    out: list = descriptor.setdefault("records", [])
    return out.append


def _log_sink(descriptor: dict) -> Callable[[StreamRecord], None]:
    log: DurableLog = descriptor["log"]

    def emit(record: StreamRecord) -> None:
        log.append(record)

    return emit


def _null_sink(descriptor: dict) -> Callable[[StreamRecord], None]:
    def emit(record: StreamRecord) -> None:
        pass

    return emit


class JobQueue:
    """Bounded in-memory link between two jobs.

    The producer blocks when the queue is full (backpressure); ``close()``
    wakes the consumer with end-of-stream.
    """

    _DONE = object()

    def __init__(self, maxsize: int = 1024):
        self._queue: queue.Queue = queue.Queue(maxsize=maxsize)

    def put(self, record: StreamRecord) -> None:
        self._queue.put(record)

    def close(self) -> None:
        self._queue.put(self._DONE)

    def __iter__(self) -> Iterator[StreamRecord]:
        while True:
            item = self._queue.get()
            if item is self._DONE:
                return
            yield item


def _queue_source(descriptor: dict) -> Iterator[StreamRecord]:
    link: JobQueue = descriptor["queue"]
    return iter(link)


def _queue_sink(descriptor: dict) -> Callable[[StreamRecord], None]:
    link: JobQueue = descriptor["queue"]
    return link.put


register_source("memory", _memory_source)
register_source("log", _log_source)
register_source("queue", _queue_source)
register_sink("memory", _memory_sink)
register_sink("log", _log_sink)
register_sink("queue", _queue_sink)
register_sink("null", _null_sink)


# -- execution ---------------------------------------------------------------

def execute_job(spec: JobSpec, stop_signal: Optional[threading.Event] = None) -> JobReport:
    """Run one job to source exhaustion (or until ``stop_signal`` is set)."""
    source = resolve_source(spec.ingest)
    sink = resolve_sink(spec.emit)
    dead_letter = resolve_sink(spec.dead_letter) if spec.dead_letter else None
    pipeline: Chain = chain(spec.processors)

    report = JobReport(name=spec.name)
    for record in source:
        if stop_signal is not None and stop_signal.is_set():
            break
        report.records_in += 1
        try:
            result = pipeline(record)
        except Exception as exc:
            report.errors += 1
            if dead_letter is not None:
                dead_letter(record)
            else:
                report.dead_letters.append((record, repr(exc)))
            continue
        if result is not None:
            sink(result)
            report.records_out += 1
    return report
