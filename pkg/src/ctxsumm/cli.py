"""Command-line entry point.

Subcommands cover the whole pipeline (and its individual stages, which
read and write the documented interchange files so stages can be piped),
the evaluation tooling, the random baseline, the survey service, and
offline survey scoring.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import formats, metrics
from .clustering import ClusterCountLaw, LinkageRule, agglomerative_fine, birch_coarse, cluster_count
from .importance import bias_and_interpolate, flat_scores, keypoints, select_keyframes
from .partitioning import init_partitions, refine_partitions, smooth_labels
from .pipeline import (
    ConfigError,
    PipelineConfig,
    config_from_dict,
    config_to_dict,
    evaluate_dataset,
    format_report,
    select_samples,
)
from .sampling import plan_sampling
from .summarize import evaluation_budget, extrapolate, knapsack_summary, target_length, usable_summary
from .types import KeyframeSet, LabelSequence, PartitionSet, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

_OVERRIDE_KEYS = (
    "reducer",
    "distance",
    "linkage",
    "target_fps",
    "max_clusters",
    "cluster_modulation",
    "smoothing_window",
    "min_section_length",
    "bias_scheme",
    "bias_strength",
    "interpolation",
    "extrapolation",
    "summary_rate",
    "max_summary_seconds",
    "eval_budget_rate",
    "jobs",
)


def load_config(args) -> PipelineConfig:
    doc: dict = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    for key in _OVERRIDE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            doc[key] = value
    if getattr(args, "keyframe_rules", None):
        doc["keyframe_rules"] = [r.strip() for r in args.keyframe_rules.split("+")]
    return config_from_dict(doc)


def _add_config_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON config file; flags override its keys")
    parser.add_argument("--reducer", help="reducer chain, e.g. pca:34+tsne:2 or none")
    parser.add_argument("--distance", choices=("euclidean", "cosine"))
    parser.add_argument("--linkage", choices=("single", "complete", "average"))
    parser.add_argument("--target-fps", dest="target_fps", type=float)
    parser.add_argument("--max-clusters", dest="max_clusters", type=int)
    parser.add_argument("--cluster-modulation", dest="cluster_modulation", type=float)
    parser.add_argument("--smoothing-window", dest="smoothing_window", type=int)
    parser.add_argument("--min-section-length", dest="min_section_length", type=int)
    parser.add_argument("--keyframe-rules", dest="keyframe_rules",
                        help="plus-separated subset of mean, middle, ends")
    parser.add_argument("--bias-scheme", dest="bias_scheme", choices=("increase", "decrease"))
    parser.add_argument("--bias-strength", dest="bias_strength", type=float)
    parser.add_argument("--interpolation", choices=("cosine", "linear"))
    parser.add_argument("--extrapolation", choices=("linear", "nearest"))
    parser.add_argument("--summary-rate", dest="summary_rate", type=float)
    parser.add_argument("--max-summary-seconds", dest="max_summary_seconds", type=float)
    parser.add_argument("--eval-budget-rate", dest="eval_budget_rate", type=float)
    parser.add_argument("--jobs", type=int)


def _write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# subcommands


def cmd_sample_plan(args) -> int:
    plan = plan_sampling(args.frames, args.fps, args.target_fps)
    idx = plan.indexes
    shown = ",".join(str(i) for i in idx[:12]) + (",..." if len(idx) > 12 else "")
    print(f"snippet_length={plan.snippet_length} first_index={plan.first_index} "
          f"count={plan.count} achieved_fps={plan.achieved_fps:.4f}")
    print(f"indexes={shown}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    cfg = load_config(args)
    emb = formats.read_embeddings_file(args.embeddings)
    plan, sampled = select_samples(emb, cfg)
    from .reduction import reduce_chain

    reduced = reduce_chain(sampled, cfg.chain(), cfg.tsne_config())
    formats.write_embeddings_file(reduced.base, args.out)
    _write_json(Path(args.out).with_suffix(".provenance.json"), {
        "schema_version": 1,
        "chain": [list(step) for step in reduced.provenance],
    })
    print(f"reduced {sampled.dim} -> {reduced.dim} dims for {reduced.sample_count} samples")
    return EXIT_OK


def cmd_cluster(args) -> int:
    cfg = load_config(args)
    emb = formats.read_embeddings_file(args.embeddings)
    output_fps = cfg.output_fps if cfg.output_fps is not None else emb.input_fps
    budget = target_length(emb.total_frames, cfg.summary_rate, cfg.max_summary_seconds, output_fps)
    law = ClusterCountLaw(max_clusters=cfg.max_clusters, modulation=cfg.cluster_modulation)
    k = cluster_count(law, budget)
    coarse = birch_coarse(emb.matrix, threshold=cfg.birch_threshold, branching=cfg.birch_branching)
    fine, _ = agglomerative_fine(
        emb.matrix, coarse, k, LinkageRule(linkage=cfg.linkage, distance=cfg.distance)
    )
    _write_json(args.out, {
        "schema_version": 1,
        "target_clusters": k,
        "coarse": coarse.labels.tolist(),
        "labels": fine.labels.tolist(),
    })
    print(f"coarse clusters: {coarse.cluster_count}, fine clusters: {fine.cluster_count} (target {k})")
    return EXIT_OK


def cmd_partition(args) -> int:
    cfg = load_config(args)
    doc = _read_json(args.labels)
    labels = LabelSequence(np.asarray(doc["labels"], dtype=np.int64))
    smoothed = smooth_labels(labels, cfg.smoothing_window)
    parts = refine_partitions(init_partitions(smoothed), cfg.min_section_length)
    _write_json(args.out, {
        "schema_version": 1,
        "smoothed": smoothed.labels.tolist(),
        "sections": [list(s) for s in parts.sections],
    })
    print(f"{len(parts)} sections, min length {min(parts.lengths)}")
    return EXIT_OK


def cmd_score(args) -> int:
    cfg = load_config(args)
    emb = formats.read_embeddings_file(args.embeddings)
    parts = PartitionSet(sections=tuple(tuple(s) for s in _read_json(args.partitions)["sections"]))
    kf = select_keyframes(parts, emb.matrix, cfg.keyframe_rules, cfg.distance)
    flat = flat_scores(parts)
    if set(cfg.keyframe_rules) == {"mean"}:
        final = flat.copy()
    else:
        final = bias_and_interpolate(
            flat, parts, keypoints(parts, kf), cfg.bias_scheme, cfg.bias_strength,
            cfg.interpolation,
        ).final
    _write_json(args.out, {
        "schema_version": 1,
        "flat": flat.tolist(),
        "final": final.tolist(),
        "keyframes": [list(ks) for ks in kf.per_partition],
    })
    print(f"scored {len(flat)} samples, {len(kf.union)} keyframes")
    return EXIT_OK


def cmd_summarize(args) -> int:
    cfg = load_config(args)
    emb = formats.read_embeddings_file(args.embeddings)
    plan, _ = select_samples(emb, cfg)
    doc = _read_json(args.scores)
    kf = KeyframeSet(per_partition=tuple(tuple(ks) for ks in doc["keyframes"]))
    final = np.asarray(doc["final"], dtype=np.float64)
    output_fps = cfg.output_fps if cfg.output_fps is not None else emb.input_fps
    budget = target_length(emb.total_frames, cfg.summary_rate, cfg.max_summary_seconds, output_fps)
    usable = usable_summary(kf, final, plan, budget)
    out = {
        "usable": formats.summary_to_doc(args.video_id, usable),
    }
    if args.manifest:
        manifest = formats.load_manifest_file(args.manifest)
        video = manifest.video(args.video_id)
        per_frame = extrapolate(final, plan, cfg.extrapolation)
        selection = knapsack_summary(
            per_frame, video.segments, evaluation_budget(emb.total_frames, cfg.eval_budget_rate)
        )
        out["evaluation"] = formats.summary_to_doc(args.video_id, selection, importances=per_frame)
    _write_json(args.out, {"schema_version": 1, **out})
    print(f"usable summary: {len(usable)} frames (budget {budget})")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    cfg = load_config(args)
    manifest = formats.load_manifest_file(args.manifest)
    embeddings = {}
    emb_dir = Path(args.embeddings_dir)
    for video in manifest.videos:
        path = emb_dir / f"{video.meta.video_id}.vemb"
        if not path.exists():
            raise FileNotFoundError(f"missing embeddings file {path}")
        embeddings[video.meta.video_id] = formats.read_embeddings_file(path)
    report, _ = evaluate_dataset(manifest, embeddings, cfg, include_baseline=args.baseline)
    text = format_report(report)
    sys.stdout.write(text)
    if args.out:
        _write_json(args.out, report)
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = load_config(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = formats.load_manifest_file(args.manifest)
    emb_dir = Path(args.embeddings_dir)
    embeddings = {}
    for video in manifest.videos:
        path = emb_dir / f"{video.meta.video_id}.vemb"
        if not path.exists():
            raise FileNotFoundError(f"missing embeddings file {path}")
        embeddings[video.meta.video_id] = formats.read_embeddings_file(path)
    report, results = evaluate_dataset(manifest, embeddings, cfg, include_baseline=args.baseline)
    for res in results:
        doc = {
            "schema_version": 1,
            "usable": formats.summary_to_doc(res.video_id, res.usable),
            "evaluation": formats.summary_to_doc(
                res.video_id, res.evaluation, importances=res.importance.per_frame
            ),
        }
        _write_json(out_dir / f"{res.video_id}.summary.json", doc)
    _write_json(out_dir / "report.json", report)
    _write_json(out_dir / "run_manifest.json", config_to_dict(cfg))
    text = format_report(report)
    (out_dir / "report.txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_baseline(args) -> int:
    manifest = formats.load_manifest_file(args.manifest)
    rows = []
    for video in manifest.videos:
        score = metrics.random_baseline(
            video, repeats=args.repeats, seed=args.seed, budget_rate=args.budget
        )
        rows.append({"video_id": video.meta.video_id, "f_random": score})
        print(f"{video.meta.video_id}  f-random {score:.4f}")
    mean = sum(r["f_random"] for r in rows) / len(rows)
    print(f"dataset  f-random {mean:.4f}  (repeats {args.repeats}, budget {args.budget:.2f}, seed {args.seed})")
    if args.out:
        _write_json(args.out, {
            "schema_version": 1,
            "repeats": args.repeats,
            "budget_rate": args.budget,
            "seed": args.seed,
            "videos": rows,
            "dataset_f_random": mean,
        })
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .survey.service import ServiceConfig, app_from_config

    cfg = ServiceConfig.load(args.config)
    if args.bind:
        cfg.bind = args.bind
    if args.port:
        cfg.port = args.port
    app = app_from_config(cfg)
    uvicorn.run(app, host=cfg.bind, port=cfg.port, log_level="warning")
    return EXIT_OK


def cmd_survey_score(args) -> int:
    from .survey.corpus import load_corpus_file
    from .survey.log import AnswerLog
    from .survey.scoring import build_report, format_report as format_survey

    corpus = load_corpus_file(args.corpus)
    records = AnswerLog(args.log).read_all()
    if not records:
        raise ValidationError("answer log is empty")
    report = build_report(corpus, records)
    sys.stdout.write(format_survey(report))
    if args.out:
        _write_json(args.out, report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctxsumm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample-plan", help="print the frame subsampling plan")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--fps", type=float, required=True)
    p.add_argument("--target-fps", type=float, default=4.0)
    p.set_defaults(func=cmd_sample_plan)

    p = sub.add_parser("reduce", help="reduce a VEMB file's dimensionality")
    p.add_argument("embeddings")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cluster", help="coarse+fine clustering of reduced embeddings")
    p.add_argument("embeddings")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("partition", help="smooth labels and build refined partitions")
    p.add_argument("labels")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("score", help="keyframes and importance scores from partitions")
    p.add_argument("embeddings")
    p.add_argument("partitions")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("summarize", help="usable and evaluation summaries from scores")
    p.add_argument("embeddings")
    p.add_argument("scores")
    p.add_argument("--video-id", required=True)
    p.add_argument("--manifest", help="dataset manifest (enables the evaluation summary)")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="score summaries for a whole manifest")
    p.add_argument("manifest")
    p.add_argument("embeddings_dir")
    p.add_argument("--baseline", action="store_true", help="include the random baseline column")
    p.add_argument("--out")
    _add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("run", help="full pipeline: summaries, report, run manifest")
    p.add_argument("manifest")
    p.add_argument("embeddings_dir")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--baseline", action="store_true")
    _add_config_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("baseline", help="random-scoring baseline over a manifest")
    p.add_argument("manifest")
    p.add_argument("--repeats", type=int, default=100)
    p.add_argument("--budget", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("serve", help="run the survey HTTP service")
    p.add_argument("--config", help="service config JSON")
    p.add_argument("--bind")
    p.add_argument("--port", type=int)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("survey-score", help="score a recorded answer log offline")
    p.add_argument("log")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_survey_score)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValidationError, formats.FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
