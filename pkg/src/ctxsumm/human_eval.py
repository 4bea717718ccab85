"""Scoring engine for the survey-based evaluation protocol.

Answers recorded for an original video act as ground truth; answers for
its summaries are scored per question, averaged into a summary score, and
summary scores average into a method score. Every score lives in [0, 1].
"""

from __future__ import annotations


def mcq_score(answer, truth, options) -> float:
    """Exact-match accuracy for a single-choice answer pair."""
    opts = set(options)
    if answer not in opts:
        raise ValueError(f"answer {answer!r} not among options")
    if truth not in opts:
        raise ValueError(f"truth {truth!r} not among options")
    return 1.0 if answer == truth else 0.0


def checkbox_score(answer, truth, options) -> float:
    """Intersection-over-union of two non-empty option subsets."""
    a = set(answer)
    t = set(truth)
    opts = set(options)
    if not a or not t:
        raise ValueError("checkbox answers must be non-empty")
    if not a <= opts or not t <= opts:
        raise ValueError("checkbox answer contains unknown options")
    return len(a & t) / len(a | t)


def nominal_question_score(summary_answers, original_answers, kind: str, options) -> float:
    """Mean over summary answers of their best pairwise score against any
    original-video answer."""
    if not original_answers:
        raise ValueError("no original-video answers to score against")
    if not summary_answers:
        raise ValueError("no summary answers to score")
    if kind == "mcq":
        pair = mcq_score
    elif kind == "checkbox":
        pair = checkbox_score
    else:
        raise ValueError(f"unknown nominal question kind {kind!r}")
    per_answer = [
        max(pair(ans, truth, options) for truth in original_answers)
        for ans in summary_answers
    ]
    return sum(per_answer) / len(per_answer)


def linear_question_score(scores, scale: float) -> float:
    """Mean rating normalized to [0, 1] by the scale."""
    scores = list(scores)
    if not scores:
        raise ValueError("no linear answers to score")
    if scale <= 0:
        raise ValueError("scale must be positive")
    for a in scores:
        if not 0 <= a <= scale:
            raise ValueError(f"linear answer {a} outside [0, {scale}]")
    return (sum(scores) / len(scores)) / scale


def summary_score(question_scores) -> float:
    """A summary's score: plain mean of its per-question scores."""
    qs = list(question_scores)
    if not qs:
        raise ValueError("summary has no scored questions")
    return sum(qs) / len(qs)


def method_score(summary_scores) -> float:
    """A method's score: plain mean of its summaries' scores."""
    ss = list(summary_scores)
    if not ss:
        raise ValueError("method has no scored summaries")
    return sum(ss) / len(ss)
