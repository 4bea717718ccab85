"""HTTP service backing the survey client.

Sessions hand out a random selection of video sets; answers land in the
append-only log only on submit; the report endpoint scores a snapshot of
the log. No authentication and no personal data anywhere.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse, PlainTextResponse
from pydantic import BaseModel

from ..types import ValidationError
from .corpus import SurveyCorpus, load_corpus_file
from .log import AnswerLog, AnswerRecord, now
from .scoring import build_report, format_report

ENV_PREFIX = "CTXSUMM_SURVEY_"
CONFIG_KEYS = ("bind", "port", "corpus_path", "log_path", "media_dir", "max_sets", "seed")


@dataclass
class ServiceConfig:
    bind: str = "127.0.0.1"
    port: int = 8000
    corpus_path: str = "corpus.json"
    log_path: str = "answers.log"
    media_dir: str = "media"
    max_sets: int = 10
    seed: int | None = None

    @classmethod
    def load(cls, config_file=None, env=None) -> "ServiceConfig":
        """Read the config file (JSON), then apply environment overrides
        named CTXSUMM_SURVEY_<KEY>."""
        values: dict = {}
        if config_file:
            with open(config_file, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            unknown = set(doc) - set(CONFIG_KEYS)
            if unknown:
                raise ValidationError(f"unknown service config keys {sorted(unknown)}")
            values.update(doc)
        env = os.environ if env is None else env
        for key in CONFIG_KEYS:
            raw = env.get(ENV_PREFIX + key.upper())
            if raw is not None:
                values[key] = raw
        cfg = cls()
        for key, val in values.items():
            current = getattr(cfg, key)
            if key in ("port", "max_sets"):
                val = int(val)
            elif key == "seed":
                val = None if val in (None, "", "none") else int(val)
            setattr(cfg, key, val)
        return cfg


class _Session:
    __slots__ = ("session_id", "set_ids", "submitted")

    def __init__(self, session_id: str, set_ids: list[str]):
        self.session_id = session_id
        self.set_ids = set_ids
        self.submitted: set[str] = set()


class SessionRequest(BaseModel):
    count: int


class AnswerSubmission(BaseModel):
    answers: dict


def create_app(
    corpus: SurveyCorpus,
    log: AnswerLog,
    max_sets: int = 10,
    seed: int | None = None,
    media_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="survey service")
    rng = np.random.default_rng(seed)
    sessions: dict[str, _Session] = {}
    lock = threading.Lock()

    def get_session(session_id: str) -> _Session:
        with lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    def question_payload(qid: str) -> dict:
        q = corpus.question(qid)
        doc = {"id": q.question_id, "kind": q.kind, "prompt": q.prompt}
        if q.options:
            doc["options"] = list(q.options)
        if q.kind == "linear":
            doc["scale"] = q.scale
        return doc

    @app.post("/sessions")
    def create_session(req: SessionRequest):
        bound = min(max_sets, len(corpus))
        if not 1 <= req.count <= bound:
            raise HTTPException(
                status_code=422, detail=f"count must be between 1 and {bound}"
            )
        with lock:
            session_id = secrets.token_hex(16)
            picks = rng.choice(len(corpus), size=req.count, replace=False)
            set_ids = [corpus.video_sets[int(i)].set_id for i in picks]
            sessions[session_id] = _Session(session_id, set_ids)
        return {"session_id": session_id, "videoset_ids": set_ids}

    @app.get("/sessions/{session_id}/sets/{position}")
    def next_videoset(session_id: str, position: int):
        session = get_session(session_id)
        if position < 1:
            raise HTTPException(status_code=422, detail="position is 1-based")
        if position > len(session.set_ids):
            return {"done": True, "answered": len(session.submitted)}
        earlier = session.set_ids[: position - 1]
        unanswered = [s for s in earlier if s not in session.submitted]
        if unanswered:
            raise HTTPException(
                status_code=409,
                detail=f"sets at earlier positions not yet submitted: {unanswered}",
            )
        set_id = session.set_ids[position - 1]
        vs = corpus.video_set(set_id)
        return {
            "done": False,
            "position": position,
            "video_set": {
                "id": vs.set_id,
                "kind": vs.kind,
                "video_id": vs.video_id,
                "media": list(vs.media),
            },
            "questions": [question_payload(qid) for qid in vs.question_ids],
        }

    @app.post("/sessions/{session_id}/sets/{set_id}/answers")
    def submit_answers(session_id: str, set_id: str, submission: AnswerSubmission):
        session = get_session(session_id)
        if set_id not in session.set_ids:
            raise HTTPException(status_code=404, detail="video set not part of session")
        try:
            vs = corpus.video_set(set_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown video set") from None
        expected = set(vs.question_ids)
        got = set(submission.answers)
        if got != expected:
            raise HTTPException(
                status_code=422,
                detail=f"answers must cover exactly the set's questions {sorted(expected)}",
            )
        normalized = {}
        for qid, payload in submission.answers.items():
            try:
                normalized[qid] = corpus.question(qid).validate_answer(payload)
            except ValidationError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
        stamp = now()
        records = [
            AnswerRecord(
                participant=session_id,
                video_set=set_id,
                question=qid,
                answer=normalized[qid],
                timestamp=stamp,
            )
            for qid in vs.question_ids
        ]
        log.append(records)
        session.submitted.add(set_id)
        return {"recorded": len(records), "video_set": set_id}

    @app.get("/report")
    def report(format: str = "json"):
        records = log.read_all()
        if not records:
            raise HTTPException(status_code=404, detail="no answers recorded yet")
        doc = build_report(corpus, records)
        if format == "text":
            return PlainTextResponse(format_report(doc))
        return doc

    @app.get("/media/{name}")
    def media(name: str):
        if media_dir is None:
            raise HTTPException(status_code=404, detail="no media directory configured")
        base = Path(media_dir).resolve()
        path = (base / name).resolve()
        if base not in path.parents or not path.is_file():
            raise HTTPException(status_code=404, detail="no such media file")
        return FileResponse(path)

    return app


def app_from_config(cfg: ServiceConfig) -> FastAPI:
    corpus = load_corpus_file(cfg.corpus_path)
    log = AnswerLog(cfg.log_path)
    return create_app(
        corpus,
        log,
        max_sets=cfg.max_sets,
        seed=cfg.seed,
        media_dir=cfg.media_dir,
    )
