from .corpus import Question, SurveyCorpus, VideoSet, load_corpus, load_corpus_file
from .log import AnswerLog, AnswerRecord
from .scoring import build_report

__all__ = [
    "AnswerLog",
    "AnswerRecord",
    "Question",
    "SurveyCorpus",
    "VideoSet",
    "build_report",
    "load_corpus",
    "load_corpus_file",
]
