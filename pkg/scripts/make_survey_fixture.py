#!/usr/bin/env python3
"""Write a small demo survey corpus and a matching answer log, so the
survey service and the offline scorer can be tried without running a
study.

Usage: make_survey_fixture.py OUT_DIR
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ctxsumm.survey.corpus import Question, SurveyCorpus, VideoSet, dump_corpus
from ctxsumm.survey.log import AnswerLog, AnswerRecord


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir")
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    questions = (
        Question("q-scene", "mcq", "Is the scene mainly indoors or outdoors?",
                 options=("indoors", "outdoors")),
        Question("q-subjects", "checkbox", "Which subjects appear?",
                 options=("people", "animals", "vehicles", "buildings")),
        Question("q-grasp", "linear",
                 "How much of the original video would you understand from the summary alone?",
                 scale=10.0),
    )
    video_sets = (
        VideoSet("orig-1", "original", "demo-video", ("media/demo.mp4",),
                 ("q-scene", "q-subjects")),
        VideoSet("mach-1", "machine_summary", "demo-video", ("media/demo-machine.mp4",),
                 ("q-scene", "q-subjects")),
        VideoSet("user-1", "user_summary", "demo-video", ("media/demo-user.mp4",),
                 ("q-scene", "q-subjects")),
        VideoSet("pair-m1", "pair", "demo-video",
                 ("media/demo.mp4", "media/demo-machine.mp4"), ("q-grasp",),
                 summary_set_id="mach-1"),
        VideoSet("pair-u1", "pair", "demo-video",
                 ("media/demo.mp4", "media/demo-user.mp4"), ("q-grasp",),
                 summary_set_id="user-1"),
    )
    corpus = SurveyCorpus(video_sets=video_sets, questions=questions)
    (out / "corpus.json").write_text(dump_corpus(corpus), encoding="utf-8")

    def rec(p, s, q, a, t):
        return AnswerRecord(p, s, q, a, t)

    log = AnswerLog(out / "answers.log")
    log.append([
        rec("p-ann", "orig-1", "q-scene", "outdoors", 1.0),
        rec("p-ann", "orig-1", "q-subjects", ["people", "vehicles"], 1.0),
        rec("p-ben", "orig-1", "q-scene", "outdoors", 2.0),
        rec("p-ben", "orig-1", "q-subjects", ["people"], 2.0),
        rec("p-cam", "mach-1", "q-scene", "outdoors", 3.0),
        rec("p-cam", "mach-1", "q-subjects", ["people", "vehicles"], 3.0),
        rec("p-cam", "pair-m1", "q-grasp", 8, 3.0),
        rec("p-dee", "mach-1", "q-scene", "outdoors", 4.0),
        rec("p-dee", "mach-1", "q-subjects", ["people", "animals"], 4.0),
        rec("p-dee", "pair-m1", "q-grasp", 9, 4.0),
        rec("p-eve", "user-1", "q-scene", "indoors", 5.0),
        rec("p-eve", "user-1", "q-subjects", ["people"], 5.0),
        rec("p-eve", "pair-u1", "q-grasp", 7, 5.0),
    ])
    print(f"wrote {out / 'corpus.json'} and {out / 'answers.log'}")


if __name__ == "__main__":
    main()
