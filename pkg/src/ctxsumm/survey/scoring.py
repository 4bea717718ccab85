"""Turn an answer log plus its corpus into score tables.

Original-video answers are the ground truth for nominal questions; linear
answers (including the ones collected on pair sets) are normalized by the
question scale. Summary and method levels are plain means. User-summary
scores are reported as their own human-baseline column, never mixed into
the ground truth for machine summaries.
"""

from __future__ import annotations

from collections import defaultdict

from .. import human_eval
from .corpus import SUMMARY_KINDS, SurveyCorpus
from .log import latest_records


def _answers_by_set_question(records) -> dict:
    grouped: dict[tuple, list] = defaultdict(list)
    for rec in records:
        grouped[(rec.video_set, rec.question)].append(rec.answer)
    return grouped


def score_summary_set(corpus: SurveyCorpus, answers: dict, set_id: str):
    """Per-question scores for one summary video set; questions that have
    no scoreable answers yet are skipped."""
    vs = corpus.video_set(set_id)
    original_sets = [
        s for s in corpus.video_sets if s.kind == "original" and s.video_id == vs.video_id
    ]
    per_question: dict[str, float] = {}

    for qid in vs.question_ids:
        q = corpus.question(qid)
        given = answers.get((set_id, qid), [])
        if not given:
            continue
        if q.kind == "linear":
            per_question[qid] = human_eval.linear_question_score(given, q.scale)
            continue
        truth: list = []
        for orig in original_sets:
            truth.extend(answers.get((orig.set_id, qid), []))
        if not truth:
            continue
        per_question[qid] = human_eval.nominal_question_score(given, truth, q.kind, q.options)

    # linear questions asked on pair sets count toward the summary they show
    for pair in corpus.video_sets:
        if pair.kind != "pair" or pair.summary_set_id != set_id:
            continue
        for qid in pair.question_ids:
            q = corpus.question(qid)
            given = answers.get((pair.set_id, qid), [])
            if given:
                per_question[f"{pair.set_id}:{qid}"] = human_eval.linear_question_score(
                    given, q.scale
                )
    return per_question


def comprehension_means(corpus: SurveyCorpus, answers: dict) -> dict:
    """Raw (unnormalized) mean linear ratings per summary set, for the
    0-to-scale display table."""
    means: dict[str, float] = {}
    for pair in corpus.video_sets:
        if pair.kind != "pair":
            continue
        for qid in pair.question_ids:
            given = answers.get((pair.set_id, qid), [])
            if given:
                means[pair.summary_set_id] = sum(given) / len(given)
    return means


def build_report(corpus: SurveyCorpus, records) -> dict:
    """Score tables from a record snapshot.

    Rows are per source video with separate user-summary and
    machine-summary columns; the method rows aggregate each column across
    the dataset.
    """
    answers = _answers_by_set_question(latest_records(records))
    summary_scores: dict[str, float] = {}
    for vs in corpus.video_sets:
        if vs.kind not in SUMMARY_KINDS:
            continue
        per_question = score_summary_set(corpus, answers, vs.set_id)
        if per_question:
            summary_scores[vs.set_id] = human_eval.summary_score(per_question.values())

    videos = sorted({vs.video_id for vs in corpus.video_sets})
    rows = []
    per_kind_scores: dict[str, list] = {k: [] for k in SUMMARY_KINDS}
    raw_means = comprehension_means(corpus, answers)
    for vid in videos:
        row = {"video_id": vid, "user_summary": None, "machine_summary": None,
               "user_summary_rating": None, "machine_summary_rating": None}
        for vs in corpus.video_sets:
            if vs.video_id != vid or vs.kind not in SUMMARY_KINDS:
                continue
            score = summary_scores.get(vs.set_id)
            if score is not None:
                row[vs.kind] = score
                per_kind_scores[vs.kind].append(score)
            if vs.set_id in raw_means:
                row[f"{vs.kind}_rating"] = raw_means[vs.set_id]
        rows.append(row)

    method = {
        kind: (human_eval.method_score(scores) if scores else None)
        for kind, scores in per_kind_scores.items()
    }
    return {
        "schema_version": 1,
        "videos": rows,
        "method": method,
        "summary_sets": summary_scores,
    }


def format_report(report: dict) -> str:
    lines = []
    header = ("video", "user-summary", "machine-summary")
    widths = [max(len(header[0]), *(len(r["video_id"]) for r in report["videos"])) if report["videos"] else len(header[0]),
              len(header[1]), len(header[2])]

    def cell(value):
        return "-" if value is None else f"{value:.4f}"

    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in report["videos"]:
        lines.append(
            "  ".join(
                [
                    r["video_id"].ljust(widths[0]),
                    cell(r["user_summary"]).ljust(widths[1]),
                    cell(r["machine_summary"]).ljust(widths[2]),
                ]
            )
        )
    m = report["method"]
    lines.append(
        f"method: user-summary {cell(m['user_summary'])}  machine-summary {cell(m['machine_summary'])}"
    )
    return "\n".join(lines) + "\n"
