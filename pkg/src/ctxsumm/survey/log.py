"""Append-only answer log.

One JSON line per recorded answer; the file is never rewritten, so any
earlier byte prefix stays valid. Resubmissions append superseding records;
the scoring snapshot keeps the latest record per (participant, video set,
question). Records hold an anonymous participant id and nothing else about
the person.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

LOG_FIELDS = ("participant", "video_set", "question", "answer", "timestamp")


@dataclass(frozen=True)
class AnswerRecord:
    participant: str
    video_set: str
    question: str
    answer: object
    timestamp: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "participant": self.participant,
                "video_set": self.video_set,
                "question": self.question,
                "answer": self.answer,
                "timestamp": self.timestamp,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "AnswerRecord":
        doc = json.loads(line)
        extra = set(doc) - set(LOG_FIELDS)
        if extra:
            raise ValueError(f"unexpected answer-record fields {sorted(extra)}")
        return cls(
            participant=str(doc["participant"]),
            video_set=str(doc["video_set"]),
            question=str(doc["question"]),
            answer=doc["answer"],
            timestamp=float(doc["timestamp"]),
        )


class AnswerLog:
    """Serialized writer over a JSONL answer file."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.touch(exist_ok=True)

    def append(self, records) -> None:
        """Atomically append records (one submit = one batch) and fsync."""
        payload = "".join(r.to_json() + "\n" for r in records)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(payload)
                fh.flush()
                os.fsync(fh.fileno())

    def read_all(self) -> list[AnswerRecord]:
        """Snapshot of every record currently in the log."""
        with self._lock:
            with open(self.path, "r", encoding="utf-8") as fh:
                lines = fh.readlines()
        return [AnswerRecord.from_json(line) for line in lines if line.strip()]


def now() -> float:
    return time.time()


def latest_records(records) -> list[AnswerRecord]:
    """Resolve superseding records: last write per (participant, set,
    question) wins; log order is authoritative."""
    latest: dict[tuple, AnswerRecord] = {}
    for rec in records:
        latest[(rec.participant, rec.video_set, rec.question)] = rec
    return list(latest.values())
