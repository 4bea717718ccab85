"""Coarse-to-fine contextual clustering.

BIRCH builds coarse clusters from a CF-tree whose leaf subclusters absorb
points while their centroid radius stays under a threshold; agglomerative
merging then unites coarse clusters (as indivisible atoms) down to a
target count given by a sigmoidal law of the summary length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .types import LabelSequence

LINKAGES = ("single", "complete", "average")
DISTANCES = ("euclidean", "cosine")


@dataclass(frozen=True)
class ClusterCountLaw:
    """Saturating growth of the cluster count with the summary budget."""

    max_clusters: int = 60
    modulation: float = 1e-3

    def __post_init__(self):
        if self.max_clusters < 1:
            raise ValueError("max_clusters must be >= 1")
        if self.modulation <= 0:
            raise ValueError("modulation must be positive")


def cluster_count(law: ClusterCountLaw, summary_frames: int) -> int:
    """Number of fine clusters for a target summary length, rising from 1
    toward the configured maximum."""
    if summary_frames < 0:
        raise ValueError("summary_frames must be >= 0")
    raw = law.max_clusters * math.tanh(law.modulation * summary_frames / 2.0)
    return int(min(max(round(raw), 1), law.max_clusters))


@dataclass(frozen=True)
class LinkageRule:
    linkage: str = "average"
    distance: str = "euclidean"

    def __post_init__(self):
        if self.linkage not in LINKAGES:
            raise ValueError(f"linkage must be one of {LINKAGES}")
        if self.distance not in DISTANCES:
            raise ValueError(f"distance must be one of {DISTANCES}")


def pairwise_distances(X: np.ndarray, distance: str = "euclidean") -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if distance == "euclidean":
        sq = np.sum(X * X, axis=1)
        d2 = np.clip(sq[:, None] + sq[None, :] - 2.0 * (X @ X.T), 0.0, None)
        np.fill_diagonal(d2, 0.0)
        return np.sqrt(d2)
    if distance == "cosine":
        norms = np.linalg.norm(X, axis=1)
        safe = np.where(norms == 0, 1.0, norms)
        unit = X / safe[:, None]
        sim = unit @ unit.T
        sim[norms == 0, :] = 0.0
        sim[:, norms == 0] = 0.0
        d = 1.0 - sim
        np.fill_diagonal(d, 0.0)
        return np.clip(d, 0.0, None)
    raise ValueError(f"unknown distance {distance!r}")


# ---------------------------------------------------------------------------
# BIRCH coarse clustering


class _CFEntry:
    """Clustering feature of one subcluster: count, linear sum, squared sum."""

    __slots__ = ("n", "ls", "ss", "child", "order")

    def __init__(self, point=None, child=None, order=0):
        if point is not None:
            self.n = 1
            self.ls = point.copy()
            self.ss = float(point @ point)
        else:
            self.n = 0
            self.ls = None
            self.ss = 0.0
        self.child = child
        self.order = order

    @property
    def centroid(self) -> np.ndarray:
        return self.ls / self.n

    def centroid_distance(self, point: np.ndarray) -> float:
        return float(np.linalg.norm(point - self.centroid))

    def absorb(self, point: np.ndarray):
        self.n += 1
        self.ls = self.ls + point
        self.ss += float(point @ point)


class _CFNode:
    __slots__ = ("entries", "is_leaf")

    def __init__(self, is_leaf: bool):
        self.entries: list[_CFEntry] = []
        self.is_leaf = is_leaf


def _closest_entry(node: _CFNode, point: np.ndarray) -> int:
    dists = [float(np.linalg.norm(e.centroid - point)) for e in node.entries]
    return int(np.argmin(dists))


def _split_node(node: _CFNode) -> tuple[_CFNode, _CFNode]:
    """Split an overfull node, seeding the halves with the farthest
    centroid pair and assigning entries to the nearer seed."""
    cents = np.stack([e.centroid for e in node.entries])
    d = pairwise_distances(cents)
    left = _CFNode(node.is_leaf)
    right = _CFNode(node.is_leaf)
    if d.max() == 0.0:  # coincident centroids: split by position
        half = len(node.entries) // 2
        left.entries = node.entries[:half]
        right.entries = node.entries[half:]
        return left, right
    i, j = np.unravel_index(int(np.argmax(d)), d.shape)
    for idx, entry in enumerate(node.entries):
        if d[idx, i] <= d[idx, j]:
            left.entries.append(entry)
        else:
            right.entries.append(entry)
    return left, right


class CFTree:
    """Insert-only CF-tree; leaf entries are the coarse subclusters.

    A point is absorbed by the closest leaf entry when it lies within the
    threshold of that entry's centroid; otherwise it opens a new entry.
    """

    def __init__(self, threshold: float, branching: int):
        if threshold < 0:
            raise ValueError("threshold must be >= 0")
        if branching < 2:
            raise ValueError("branching factor must be >= 2")
        self.threshold = threshold
        self.branching = branching
        self.root = _CFNode(is_leaf=True)
        self._counter = 0

    def insert(self, point: np.ndarray) -> _CFEntry:
        entry, split = self._insert(self.root, point)
        if split is not None:
            old_root = self.root
            self.root = _CFNode(is_leaf=False)
            for half in split:
                wrapper = _CFEntry()
                wrapper.child = half
                self._refresh(wrapper)
                self.root.entries.append(wrapper)
        return entry

    def _refresh(self, wrapper: _CFEntry):
        child = wrapper.child
        wrapper.n = sum(e.n for e in child.entries)
        wrapper.ls = np.sum([e.ls for e in child.entries], axis=0)
        wrapper.ss = sum(e.ss for e in child.entries)
        wrapper.order = min(e.order for e in child.entries)

    def _insert(self, node: _CFNode, point: np.ndarray):
        if node.is_leaf:
            if node.entries:
                idx = _closest_entry(node, point)
                target = node.entries[idx]
                if target.centroid_distance(point) <= self.threshold:
                    target.absorb(point)
                    return target, None
            fresh = _CFEntry(point=point, order=self._counter)
            self._counter += 1
            node.entries.append(fresh)
            if len(node.entries) > self.branching:
                return fresh, _split_node(node)
            return fresh, None
        idx = _closest_entry(node, point)
        wrapper = node.entries[idx]
        entry, split = self._insert(wrapper.child, point)
        if split is None:
            wrapper.absorb(point)
            return entry, None
        node.entries.pop(idx)
        for half in split:
            repl = _CFEntry()
            repl.child = half
            self._refresh(repl)
            node.entries.append(repl)
        if len(node.entries) > self.branching:
            return entry, _split_node(node)
        return entry, None

    def leaf_entries(self) -> list[_CFEntry]:
        found: list[_CFEntry] = []

        def walk(node: _CFNode):
            if node.is_leaf:
                found.extend(node.entries)
            else:
                for e in node.entries:
                    walk(e.child)

        walk(self.root)
        return found


def default_birch_threshold(X: np.ndarray, subsample: int = 256) -> float:
    """Data-scaled threshold: half the median pairwise distance of an
    evenly spaced subsample."""
    n = len(X)
    if n < 2:
        return 0.0
    take = min(subsample, n)
    idx = np.unique(np.linspace(0, n - 1, take).astype(int))
    d = pairwise_distances(X[idx])
    upper = d[np.triu_indices(len(idx), k=1)]
    return 0.5 * float(np.median(upper))


def birch_coarse(
    X: np.ndarray,
    threshold: float | None = None,
    branching: int = 50,
) -> LabelSequence:
    """Coarse cluster labels from CF-tree leaf subclusters, relabeled by
    first appearance."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("input must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains non-finite values")
    if threshold is None:
        threshold = default_birch_threshold(X)
    tree = CFTree(threshold=threshold, branching=branching)
    assignments = [tree.insert(X[i]) for i in range(len(X))]
    labels = np.array([a.order for a in assignments], dtype=np.int64)
    return LabelSequence(labels).canonicalized()


# ---------------------------------------------------------------------------
# Agglomerative fine clustering


def _linkage_affinity(d: np.ndarray, a, b, linkage: str) -> float:
    block = d[np.ix_(a, b)]
    if linkage == "single":
        return float(block.min())
    if linkage == "complete":
        return float(block.max())
    return float(block.mean())


def agglomerative_fine(
    X: np.ndarray,
    coarse: LabelSequence,
    target: int,
    rule: LinkageRule = LinkageRule(),
) -> tuple[LabelSequence, list[tuple[int, int, float]]]:
    """Merge coarse clusters down to ``max(1, min(target, coarse count))``.

    Coarse clusters are atoms: points sharing a coarse label always share
    the fine label. Each round merges the atom pair with minimal linkage
    affinity over member points; ties go to the smallest (first, second)
    atom-id pair. Returns the labels and the merge history as
    (atom_i, atom_j, affinity) triples.
    """
    X = np.asarray(X, dtype=np.float64)
    if len(coarse) != len(X):
        raise ValueError("coarse labels and matrix row counts differ")
    if target < 1:
        raise ValueError("target cluster count must be >= 1")
    d = pairwise_distances(X, rule.distance)
    atoms: dict[int, list[int]] = {}
    for i, lab in enumerate(coarse.labels):
        atoms.setdefault(int(lab), []).append(i)
    goal = max(1, min(target, len(atoms)))
    history: list[tuple[int, int, float]] = []
    while len(atoms) > goal:
        ids = sorted(atoms)
        best = None
        for ai in range(len(ids)):
            for bi in range(ai + 1, len(ids)):
                a, b = ids[ai], ids[bi]
                aff = _linkage_affinity(d, atoms[a], atoms[b], rule.linkage)
                key = (aff, a, b)
                if best is None or key < best:
                    best = key
        aff, a, b = best
        atoms[a] = atoms[a] + atoms[b]
        del atoms[b]
        history.append((a, b, aff))
    labels = np.empty(len(X), dtype=np.int64)
    for lab, members in atoms.items():
        labels[members] = lab
    return LabelSequence(labels).canonicalized(), history
