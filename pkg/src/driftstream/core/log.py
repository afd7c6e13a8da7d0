"""Single-node durable append-only log with offset replay.

Stands in for an external durable message broker at desk scale: jobs append
records and any consumer can replay from an arbitrary offset. Records are
length-prefixed and checksummed; recovery truncates a torn tail (partial
frame from a crash mid-append) back to the last valid record, so a replay
never surfaces a corrupt or partial record.

Layout: one directory per log. Segments are ``{base_offset:020d}.seg`` with
a sidecar ``.idx`` holding one u64 frame position per record. The index is
an optimization only; the segment scan is the source of truth and the last
segment's index is rebuilt on open.
"""

from __future__ import annotations

import os
import struct
import threading
import zlib
from pathlib import Path
from typing import Iterator

from .records import StreamRecord

FRAME_HEADER = struct.Struct("<II")  # body length, crc32(body)
INDEX_ENTRY = struct.Struct("<Q")
SEGMENT_SUFFIX = ".seg"
INDEX_SUFFIX = ".idx"
DEFAULT_SEGMENT_BYTES = 64 * 1024 * 1024


class LogAppendError(IOError):
    pass


class DurableLog:
    """Append-only record log. Single writer, any number of readers."""

    def __init__(
        self,
        path: str | Path,
        segment_bytes: int = DEFAULT_SEGMENT_BYTES,
        sync: bool = True,
    ):
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self.segment_bytes = segment_bytes
        self.sync = sync
        self.truncated_bytes = 0  # torn tail dropped during last recovery
        self._lock = threading.Lock()
        # base offset -> (record count, [frame positions])
        self._segments: dict[int, tuple[int, list[int]]] = {}
        self._recover()
        bases = sorted(self._segments)
        self._active_base = bases[-1] if bases else 0
        if not bases:
            self._segments[0] = (0, [])
        self._writer = open(self._segment_path(self._active_base), "ab")

    # -- recovery ----------------------------------------------------------

    def _segment_path(self, base: int) -> Path:
        return self.path / f"{base:020d}{SEGMENT_SUFFIX}"

    def _index_path(self, base: int) -> Path:
        return self.path / f"{base:020d}{INDEX_SUFFIX}"

    def _recover(self) -> None:
        bases = sorted(
            int(p.stem) for p in self.path.glob(f"*{SEGMENT_SUFFIX}")
        )
        for i, base in enumerate(bases):
            last = i == len(bases) - 1
            positions, valid_end = self._scan_segment(self._segment_path(base))
            if last:
                size = self._segment_path(base).stat().st_size
                if valid_end < size:
                    self.truncated_bytes = size - valid_end
                    with open(self._segment_path(base), "r+b") as f:
                        f.truncate(valid_end)
                self._write_index(base, positions)
            self._segments[base] = (len(positions), positions)

    def _scan_segment(self, seg_path: Path) -> tuple[list[int], int]:
        """Frame positions of all valid records and the end of the valid prefix."""
        positions: list[int] = []
        pos = 0
        with open(seg_path, "rb") as f:
            data = f.read()
        size = len(data)
        while pos + FRAME_HEADER.size <= size:
            length, crc = FRAME_HEADER.unpack_from(data, pos)
            body_start = pos + FRAME_HEADER.size
            body_end = body_start + length
            if body_end > size:
                break  # torn write: body incomplete
            body = data[body_start:body_end]
            if zlib.crc32(body) != crc:
                break  # torn write inside the header or body
            positions.append(pos)
            pos = body_end
        return positions, pos

    def _write_index(self, base: int, positions: list[int]) -> None:
        with open(self._index_path(base), "wb") as f:
            for p in positions:
                f.write(INDEX_ENTRY.pack(p))

    # -- append ------------------------------------------------------------

    @property
    def next_offset(self) -> int:
        return sum(count for count, _ in self._segments.values())

    def append(self, record: StreamRecord) -> int:
        """Append and make durable; the returned offset is the ack.

        The frame is flushed (and fsynced when ``sync``) before the offset
        is returned, so an acknowledged record survives a crash.
        """
        body = record.to_bytes()
        frame = FRAME_HEADER.pack(len(body), zlib.crc32(body)) + body
        with self._lock:
            if self._writer.tell() >= self.segment_bytes and self._segments[self._active_base][0] > 0:
                self._roll()
            position = self._writer.tell()
            try:
                self._writer.write(frame)
                self._writer.flush()
                if self.sync:
                    os.fsync(self._writer.fileno())
            except OSError as exc:
                raise LogAppendError(f"append to {self.path} failed: {exc}") from exc
            count, positions = self._segments[self._active_base]
            positions.append(position)
            self._segments[self._active_base] = (count + 1, positions)
            with open(self._index_path(self._active_base), "ab") as idx:
                idx.write(INDEX_ENTRY.pack(position))
            return self._active_base + count

    def _roll(self) -> None:
        self._writer.close()
        new_base = self.next_offset
        self._active_base = new_base
        self._segments[new_base] = (0, [])
        self._writer = open(self._segment_path(new_base), "ab")

    # -- replay ------------------------------------------------------------

    def replay_from(self, offset: int = 0) -> Iterator[StreamRecord]:
        """Records ``offset .. next_offset-1`` in order; empty beyond the end."""
        if offset < 0:
            raise ValueError(f"offset must be non-negative, got {offset}")
        for base in sorted(self._segments):
            count, positions = self._segments[base]
            if count == 0 or base + count <= offset:
                continue
            start = max(offset - base, 0)
            with open(self._segment_path(base), "rb") as f:
                for i in range(start, count):
                    f.seek(positions[i])
                    header = f.read(FRAME_HEADER.size)
                    length, crc = FRAME_HEADER.unpack(header)
                    body = f.read(length)
                    if len(body) != length or zlib.crc32(body) != crc:
                        return  # tail truncated under our feet; stop cleanly
                    yield StreamRecord.from_bytes(body, offset=base + i)

    def close(self) -> None:
        with self._lock:
            if not self._writer.closed:
                self._writer.flush()
                self._writer.close()

    def __enter__(self) -> "DurableLog":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def append_record(log: DurableLog, record: StreamRecord) -> int:
    return log.append(record)


def replay_from(log: DurableLog, offset: int = 0) -> Iterator[StreamRecord]:
    return log.replay_from(offset)
