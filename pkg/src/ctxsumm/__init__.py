"""Training-free video summarization from per-frame visual embeddings,
plus the matching quantitative and survey-based evaluation tooling."""

from .types import (
    DatasetManifest,
    EmbeddingSet,
    ImportanceCurve,
    KeyframeSet,
    LabelSequence,
    ManifestVideo,
    PartitionSet,
    ReducedEmbeddingSet,
    SummarySelection,
    ValidationError,
    VideoMeta,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetManifest",
    "EmbeddingSet",
    "ImportanceCurve",
    "KeyframeSet",
    "LabelSequence",
    "ManifestVideo",
    "PartitionSet",
    "ReducedEmbeddingSet",
    "SummarySelection",
    "ValidationError",
    "VideoMeta",
    "__version__",
]
