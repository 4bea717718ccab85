"""Survey corpus: video sets shown to evaluators plus their question bank.

Schema (JSON): ``{schema_version, video_sets: [{id, kind, video_id, media,
question_ids, summary_set_id?}], questions: [{id, kind, prompt, options?,
scale?}]}``. Kinds: ``original``, ``user_summary``, ``machine_summary``
single-video sets carrying nominal and/or linear questions, and ``pair``
sets (original plus summary side by side) carrying linear questions only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..types import ValidationError

CORPUS_SCHEMA_VERSION = 1

SET_KINDS = ("original", "user_summary", "machine_summary", "pair")
QUESTION_KINDS = ("mcq", "checkbox", "linear")
SUMMARY_KINDS = ("user_summary", "machine_summary")


@dataclass(frozen=True)
class Question:
    question_id: str
    kind: str
    prompt: str
    options: tuple = ()
    scale: float = 0.0

    def __post_init__(self):
        if self.kind not in QUESTION_KINDS:
            raise ValidationError(f"question {self.question_id}: unknown kind {self.kind!r}")
        if self.kind in ("mcq", "checkbox"):
            if len(self.options) < 2:
                raise ValidationError(
                    f"question {self.question_id}: nominal questions need >= 2 options"
                )
            if len(set(self.options)) != len(self.options):
                raise ValidationError(f"question {self.question_id}: duplicate options")
        elif self.scale <= 0:
            raise ValidationError(f"question {self.question_id}: linear scale must be positive")

    def validate_answer(self, payload):
        """Check an answer payload against this question; returns the
        normalized payload or raises."""
        if self.kind == "mcq":
            if payload not in self.options:
                raise ValidationError(
                    f"question {self.question_id}: answer {payload!r} not among options"
                )
            return payload
        if self.kind == "checkbox":
            if not isinstance(payload, (list, tuple)) or not payload:
                raise ValidationError(
                    f"question {self.question_id}: checkbox answer must be a non-empty list"
                )
            unknown = set(payload) - set(self.options)
            if unknown:
                raise ValidationError(
                    f"question {self.question_id}: unknown options {sorted(unknown)}"
                )
            return sorted(set(payload))
        try:
            value = float(payload)
        except (TypeError, ValueError):
            raise ValidationError(
                f"question {self.question_id}: linear answer must be a number"
            ) from None
        if not 0 <= value <= self.scale:
            raise ValidationError(
                f"question {self.question_id}: answer {value} outside [0, {self.scale}]"
            )
        return value


@dataclass(frozen=True)
class VideoSet:
    set_id: str
    kind: str
    video_id: str
    media: tuple
    question_ids: tuple
    summary_set_id: str = ""

    def __post_init__(self):
        if self.kind not in SET_KINDS:
            raise ValidationError(f"video set {self.set_id}: unknown kind {self.kind!r}")
        if not self.question_ids:
            raise ValidationError(f"video set {self.set_id}: no questions attached")
        if self.kind == "pair" and not self.summary_set_id:
            raise ValidationError(f"pair set {self.set_id} must name its summary_set_id")


@dataclass(frozen=True)
class SurveyCorpus:
    video_sets: tuple
    questions: tuple

    def __post_init__(self):
        qids = [q.question_id for q in self.questions]
        if len(qids) != len(set(qids)):
            raise ValidationError("duplicate question ids")
        sids = [s.set_id for s in self.video_sets]
        if len(sids) != len(set(sids)):
            raise ValidationError("duplicate video set ids")
        by_q = {q.question_id: q for q in self.questions}
        by_s = {s.set_id: s for s in self.video_sets}
        for s in self.video_sets:
            for qid in s.question_ids:
                q = by_q.get(qid)
                if q is None:
                    raise ValidationError(f"video set {s.set_id} references unknown question {qid}")
                if s.kind == "pair" and q.kind != "linear":
                    raise ValidationError(
                        f"pair set {s.set_id} may only carry linear questions, got {qid}"
                    )
            if s.kind == "pair":
                target = by_s.get(s.summary_set_id)
                if target is None or target.kind not in SUMMARY_KINDS:
                    raise ValidationError(
                        f"pair set {s.set_id} must reference a summary video set"
                    )

    def question(self, question_id: str) -> Question:
        for q in self.questions:
            if q.question_id == question_id:
                return q
        raise KeyError(question_id)

    def video_set(self, set_id: str) -> VideoSet:
        for s in self.video_sets:
            if s.set_id == set_id:
                return s
        raise KeyError(set_id)

    def __len__(self) -> int:
        return len(self.video_sets)


def load_corpus(text: str) -> SurveyCorpus:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"corpus is not valid JSON: {exc}") from exc
    if doc.get("schema_version") != CORPUS_SCHEMA_VERSION:
        raise ValidationError(f"corpus schema_version must be {CORPUS_SCHEMA_VERSION}")
    questions = tuple(
        Question(
            question_id=str(q["id"]),
            kind=str(q["kind"]),
            prompt=str(q.get("prompt", "")),
            options=tuple(q.get("options", ())),
            scale=float(q.get("scale", 0.0)),
        )
        for q in doc.get("questions", [])
    )
    video_sets = tuple(
        VideoSet(
            set_id=str(s["id"]),
            kind=str(s["kind"]),
            video_id=str(s["video_id"]),
            media=tuple(s.get("media", ())),
            question_ids=tuple(s.get("question_ids", ())),
            summary_set_id=str(s.get("summary_set_id", "")),
        )
        for s in doc.get("video_sets", [])
    )
    return SurveyCorpus(video_sets=video_sets, questions=questions)


def load_corpus_file(path) -> SurveyCorpus:
    with open(path, "r", encoding="utf-8") as fh:
        return load_corpus(fh.read())


def dump_corpus(corpus: SurveyCorpus) -> str:
    doc = {
        "schema_version": CORPUS_SCHEMA_VERSION,
        "video_sets": [
            {
                "id": s.set_id,
                "kind": s.kind,
                "video_id": s.video_id,
                "media": list(s.media),
                "question_ids": list(s.question_ids),
                **({"summary_set_id": s.summary_set_id} if s.summary_set_id else {}),
            }
            for s in corpus.video_sets
        ],
        "questions": [
            {
                "id": q.question_id,
                "kind": q.kind,
                "prompt": q.prompt,
                **({"options": list(q.options)} if q.options else {}),
                **({"scale": q.scale} if q.kind == "linear" else {}),
            }
            for q in corpus.questions
        ],
    }
    return json.dumps(doc, indent=2)
