"""End-to-end pipeline: embeddings in, summaries and evaluation report out.

The configuration is declarative and strict (unknown keys are rejected);
every run can be reproduced bit-for-bit from the resolved config emitted
alongside the results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import metrics
from .clustering import (
    ClusterCountLaw,
    LinkageRule,
    agglomerative_fine,
    birch_coarse,
    cluster_count,
)
from .importance import (
    bias_and_interpolate,
    flat_scores,
    keypoints,
    select_keyframes,
)
from .partitioning import init_partitions, refine_partitions, smooth_labels
from .reduction import TsneConfig, parse_chain, reduce_chain, validate_chain
from .sampling import plan_sampling
from .summarize import (
    evaluation_budget,
    extrapolate,
    knapsack_summary,
    target_length,
    usable_summary,
)
from .types import EmbeddingSet, ImportanceCurve, ManifestVideo


class ConfigError(ValueError):
    """Invalid or unknown pipeline configuration."""


@dataclass(frozen=True)
class PipelineConfig:
    """All knobs of the summarization pipeline, with the standard defaults
    pre-filled. ``reducer`` must be set explicitly (there is no single
    blessed dimension pair)."""

    reducer: str = ""
    target_fps: float = 4.0
    distance: str = "euclidean"
    linkage: str = "average"
    max_clusters: int = 60
    cluster_modulation: float = 1e-3
    birch_threshold: float | None = None
    birch_branching: int = 50
    smoothing_window: int = 5
    min_section_length: int = 4
    keyframe_rules: tuple = ("middle", "ends")
    bias_scheme: str = "increase"
    bias_strength: float = 0.5
    interpolation: str = "cosine"
    summary_rate: float = 0.2
    max_summary_seconds: float = 120.0
    output_fps: float | None = None
    extrapolation: str = "linear"
    eval_budget_rate: float = 0.15
    tsne_perplexity: float = 30.0
    tsne_iterations: int = 1000
    tsne_learning_rate: float = 200.0
    tsne_exaggeration: float = 12.0
    tsne_exaggeration_iters: int = 250
    tsne_seed: int = 0
    split_count: int = 5
    split_test_fraction: float = 0.2
    split_seed: int = 0
    baseline_repeats: int = 100
    baseline_seed: int = 0
    jobs: int = 1

    def chain(self):
        if not self.reducer:
            raise ConfigError("reducer must be set explicitly, e.g. pca:34+tsne:2 or none")
        return validate_chain(parse_chain(self.reducer))

    def tsne_config(self) -> TsneConfig:
        return TsneConfig(
            perplexity=self.tsne_perplexity,
            iterations=self.tsne_iterations,
            learning_rate=self.tsne_learning_rate,
            exaggeration=self.tsne_exaggeration,
            exaggeration_iters=self.tsne_exaggeration_iters,
            seed=self.tsne_seed,
        )

    def setting_name(self) -> str:
        """Human-readable name of the reduction/distance setting, used as
        the report header."""
        parts = []
        for name, dim in self.chain():
            parts.append(f"{'PCA' if name == 'pca' else 't-SNE'} ({dim})")
        chain = " + ".join(parts) if parts else "identity"
        return f"{self.distance.capitalize()} {chain}"


def config_from_dict(doc: dict) -> PipelineConfig:
    """Build a config from a JSON-style dict, rejecting unknown keys."""
    allowed = set(PipelineConfig.__dataclass_fields__)
    doc = dict(doc)
    doc.pop("schema_version", None)
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(
            f"unknown config keys {sorted(unknown)}; accepted keys: {sorted(allowed)}"
        )
    if "keyframe_rules" in doc:
        doc["keyframe_rules"] = tuple(doc["keyframe_rules"])
    try:
        return PipelineConfig(**doc)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def config_to_dict(cfg: PipelineConfig) -> dict:
    doc = asdict(cfg)
    doc["keyframe_rules"] = list(doc["keyframe_rules"])
    return {"schema_version": 1, **doc}


@dataclass
class VideoResult:
    """Everything the pipeline derives for a single video."""

    video_id: str
    plan: object
    reduced: object
    coarse: object
    fine: object
    smoothed: object
    partitions: object
    keyframes: object
    importance: object
    usable: object
    evaluation: object | None


def select_samples(emb: EmbeddingSet, cfg: PipelineConfig) -> tuple:
    """Resolve the sampling plan and the embedding rows it selects.

    The embedding file may already be sampled at the target rate (the
    usual case) or denser; denser inputs are subselected, and missing
    planned samples are an error.
    """
    plan = plan_sampling(emb.total_frames, emb.input_fps, cfg.target_fps)
    planned = plan.indexes
    have = emb.sample_indexes
    if np.array_equal(planned, have):
        return plan, emb
    pos = {int(t): i for i, t in enumerate(have)}
    missing = [int(t) for t in planned if int(t) not in pos]
    if missing:
        raise ValueError(
            f"embeddings lack {len(missing)} planned sample frames (first: {missing[0]})"
        )
    rows = np.array([pos[int(t)] for t in planned])
    sub = EmbeddingSet(
        total_frames=emb.total_frames,
        input_fps=emb.input_fps,
        sample_fps=plan.achieved_fps,
        sample_indexes=planned,
        matrix=emb.matrix[rows],
    )
    return plan, sub


def summarize_video(
    emb: EmbeddingSet,
    cfg: PipelineConfig,
    video: ManifestVideo | None = None,
    video_id: str = "",
) -> VideoResult:
    """Run the full per-video pipeline.

    When ``video`` (manifest entry with shot segments) is present, the
    evaluation summary is produced as well.
    """
    plan, sampled = select_samples(emb, cfg)
    reduced = reduce_chain(sampled, cfg.chain(), cfg.tsne_config())
    matrix = reduced.matrix

    output_fps = cfg.output_fps if cfg.output_fps is not None else emb.input_fps
    budget = target_length(
        emb.total_frames, cfg.summary_rate, cfg.max_summary_seconds, output_fps
    )
    law = ClusterCountLaw(max_clusters=cfg.max_clusters, modulation=cfg.cluster_modulation)
    k = cluster_count(law, budget)

    coarse = birch_coarse(matrix, threshold=cfg.birch_threshold, branching=cfg.birch_branching)
    rule = LinkageRule(linkage=cfg.linkage, distance=cfg.distance)
    fine, _ = agglomerative_fine(matrix, coarse, k, rule)

    smoothed = smooth_labels(fine, cfg.smoothing_window)
    partitions = refine_partitions(init_partitions(smoothed), cfg.min_section_length)

    kf = select_keyframes(partitions, matrix, cfg.keyframe_rules, cfg.distance)
    flat = flat_scores(partitions)
    if set(cfg.keyframe_rules) == {"mean"}:
        # biasing is defined for positional rules only; mean keeps flat scores
        importance = ImportanceCurve(flat=flat, final=flat.copy())
    else:
        importance = bias_and_interpolate(
            flat,
            partitions,
            keypoints(partitions, kf),
            cfg.bias_scheme,
            cfg.bias_strength,
            cfg.interpolation,
        )

    usable = usable_summary(kf, importance.final, plan, budget)

    evaluation = None
    if video is not None:
        per_frame = extrapolate(importance.final, plan, cfg.extrapolation)
        eval_budget = evaluation_budget(emb.total_frames, cfg.eval_budget_rate)
        evaluation = knapsack_summary(per_frame, video.segments, eval_budget)
        importance = replace(importance, per_frame=per_frame)

    return VideoResult(
        video_id=video_id or (video.meta.video_id if video else ""),
        plan=plan,
        reduced=reduced,
        coarse=coarse,
        fine=fine,
        smoothed=smoothed,
        partitions=partitions,
        keyframes=kf,
        importance=importance,
        usable=usable,
        evaluation=evaluation,
    )


def evaluate_dataset(
    manifest,
    embeddings: dict,
    cfg: PipelineConfig,
    include_baseline: bool = False,
) -> tuple[dict, list]:
    """Summarize and score every manifest video; returns the report dict.

    ``embeddings`` maps video id to its EmbeddingSet. Work parallelizes
    across videos with ``cfg.jobs`` threads; outputs are independent of the
    thread count.
    """
    videos = list(manifest.videos)
    for v in videos:
        if v.meta.video_id not in embeddings:
            raise ValueError(f"no embeddings for video {v.meta.video_id}")

    def run(v):
        return summarize_video(embeddings[v.meta.video_id], cfg, video=v)

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run, videos))
    else:
        results = [run(v) for v in videos]

    rows = []
    avg_scores = []
    max_scores = []
    for v, res in zip(videos, results):
        total = v.meta.total_frames
        frames = res.evaluation.selected_frames
        row = {
            "video_id": v.meta.video_id,
            "f_avg": metrics.video_score(frames, v.user_summaries, total, "avg"),
            "f_max": metrics.video_score(frames, v.user_summaries, total, "max"),
            "summary_frames": len(frames),
            "budget_frames": res.evaluation.budget_frames,
        }
        if include_baseline:
            row["f_random"] = metrics.random_baseline(
                v,
                repeats=cfg.baseline_repeats,
                seed=cfg.baseline_seed,
                budget_rate=cfg.eval_budget_rate,
            )
        rows.append(row)
        avg_scores.append(row["f_avg"])
        max_scores.append(row["f_max"])

    ids = [v.meta.video_id for v in videos]
    # the split table needs a non-empty test side; tiny datasets skip it
    splittable = len(ids) > 1 and int(cfg.split_test_fraction * len(ids) + 0.5) >= 1
    splits = metrics.make_splits(
        list(range(len(ids))), cfg.split_count, cfg.split_test_fraction, cfg.split_seed
    ) if splittable else []
    split_rows = [
        {
            "split": i + 1,
            "test_videos": [ids[j] for j in s.test],
            "f_avg": metrics.dataset_score([avg_scores[j] for j in s.test], "avg"),
        }
        for i, s in enumerate(splits)
    ]

    report = {
        "schema_version": 1,
        "setting": cfg.setting_name(),
        "videos": rows,
        "dataset": {
            "avg_f": metrics.dataset_score(avg_scores, "avg"),
            "max_f": metrics.dataset_score(max_scores, "max"),
            "top5_f": metrics.dataset_score(avg_scores, "top5"),
        },
        "splits": split_rows,
        "seeds": {
            "split_seed": cfg.split_seed,
            "baseline_seed": cfg.baseline_seed,
            "tsne_seed": cfg.tsne_seed,
        },
    }
    if include_baseline:
        report["dataset"]["random_f"] = sum(r["f_random"] for r in rows) / len(rows)
    return report, results


def format_report(report: dict) -> str:
    """Aligned text rendering of an evaluation report."""
    lines = [f"setting: {report['setting']}"]
    header = ["video", "f-avg", "f-max", "frames", "budget"]
    has_rand = any("f_random" in r for r in report["videos"])
    if has_rand:
        header.append("f-random")
    rows = []
    for r in report["videos"]:
        row = [
            r["video_id"],
            f"{r['f_avg']:.4f}",
            f"{r['f_max']:.4f}",
            str(r["summary_frames"]),
            str(r["budget_frames"]),
        ]
        if has_rand:
            row.append(f"{r['f_random']:.4f}")
        rows.append(row)
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(header)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    ds = report["dataset"]
    summary = f"dataset: avg-f {ds['avg_f']:.4f}  max-f {ds['max_f']:.4f}  top-5 {ds['top5_f']:.4f}"
    if "random_f" in ds:
        summary += f"  random-f {ds['random_f']:.4f}"
    lines.append(summary)
    for s in report["splits"]:
        lines.append(f"split {s['split']}: f-avg {s['f_avg']:.4f}  test {','.join(s['test_videos'])}")
    return "\n".join(lines) + "\n"
