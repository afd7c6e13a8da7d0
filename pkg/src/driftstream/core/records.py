"""The record envelope that flows between jobs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class StreamRecord:
    """One unit of data moving through an ingest-process-emit job.

    ``payload`` is any JSON-serializable structure; ``offset`` is assigned
    by the durable log on append (-1 until then).
    """

    payload: Any
    key: Optional[str] = None
    event_time: float = 0.0
    ingest_time: float = 0.0
    offset: int = field(default=-1, compare=False)

    def to_bytes(self) -> bytes:
        body = {
            "payload": self.payload,
            "key": self.key,
            "event_time": self.event_time,
            "ingest_time": self.ingest_time,
        }
        return json.dumps(body, separators=(",", ":"), sort_keys=True).encode("utf-8")

    @classmethod
    def from_bytes(cls, data: bytes, offset: int = -1) -> "StreamRecord":
        body = json.loads(data.decode("utf-8"))
        return cls(
            payload=body["payload"],
            key=body["key"],
            event_time=body["event_time"],
            ingest_time=body["ingest_time"],
            offset=offset,
        )
