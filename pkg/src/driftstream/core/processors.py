"""Processor primitives: map, filter, and chaining.

A processor is a callable ``StreamRecord -> StreamRecord | None``; ``None``
drops the record. Chaining applies processors left to right and a drop at
any stage short-circuits the rest, so ``chain([a, chain([b, c])])`` behaves
exactly like ``chain([a, b, c])``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .records import StreamRecord

Processor = Callable[[StreamRecord], Optional[StreamRecord]]


class Chain:
    def __init__(self, processors: Iterable[Processor]):
        flat: list[Processor] = []
        for p in processors:
            if isinstance(p, Chain):
                flat.extend(p.processors)
            else:
                flat.append(p)
        self.processors = flat

    def __call__(self, record: Optional[StreamRecord]) -> Optional[StreamRecord]:
        for p in self.processors:
            if record is None:
                return None
            record = p(record)
        return record


def chain(processors: Iterable[Processor]) -> Chain:
    return Chain(processors)


def map_processor(fn: Callable[[StreamRecord], StreamRecord]) -> Processor:
    return fn


def filter_processor(predicate: Callable[[StreamRecord], bool]) -> Processor:
    def apply(record: StreamRecord) -> Optional[StreamRecord]:
        return record if predicate(record) else None

    return apply
