"""Dimensionality reduction for contextual embeddings: PCA, exact t-SNE,
and chains of the two.

The t-SNE here is the dense O(n^2) formulation: per-row Gaussian
bandwidths found by bisection against the target perplexity, Student-t
low-dimensional kernel, gradient descent with momentum, per-parameter
gains, and an early-exaggeration phase. Everything is deterministic for a
fixed seed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

import numpy as np

from .types import EmbeddingSet, ReducedEmbeddingSet


class DegenerateInputError(ValueError):
    """Input admits no meaningful neighbor distribution (e.g. all points
    coincide)."""


@dataclass(frozen=True)
class PcaModel:
    """Fitted PCA basis: feature means, orthonormal components (columns),
    and the non-increasing explained variances of the sample covariance."""

    mean: np.ndarray
    components: np.ndarray  # shape (D, D_out)
    explained_variances: np.ndarray

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        return (np.asarray(matrix, dtype=np.float64) - self.mean) @ self.components


def pca_fit_transform(matrix: np.ndarray, dim: int) -> tuple[PcaModel, np.ndarray]:
    """Project onto the top ``dim`` eigenvectors of the sample covariance.

    Components carry a deterministic sign: the entry of largest magnitude
    in each eigenvector is made positive.
    """
    X = np.asarray(matrix, dtype=np.float64)
    n, d = X.shape
    if not 1 <= dim <= min(n, d):
        raise ValueError(f"target dim {dim} outside [1, {min(n, d)}]")
    mean = X.mean(axis=0)
    centered = X - mean
    denom = max(n - 1, 1)
    cov = centered.T @ centered / denom
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    eigvecs = eigvecs[:, order]
    for j in range(eigvecs.shape[1]):
        pivot = int(np.argmax(np.abs(eigvecs[:, j])))
        if eigvecs[pivot, j] < 0:
            eigvecs[:, j] = -eigvecs[:, j]
    model = PcaModel(
        mean=mean,
        components=eigvecs[:, :dim].copy(),
        explained_variances=eigvals.copy(),
    )
    return model, centered @ model.components


@dataclass(frozen=True)
class TsneConfig:
    output_dim: int = 2
    perplexity: float = 30.0
    iterations: int = 1000
    learning_rate: float = 200.0
    exaggeration: float = 12.0
    exaggeration_iters: int = 250
    seed: int = 0

    def __post_init__(self):
        if self.output_dim not in (2, 3):
            raise ValueError("t-SNE output dim must be 2 or 3")
        if self.perplexity <= 0 or self.iterations < 1 or self.learning_rate <= 0:
            raise ValueError("perplexity, iterations and learning rate must be positive")
        if self.exaggeration < 1 or self.exaggeration_iters < 0:
            raise ValueError("invalid early-exaggeration settings")


def _squared_distances(X: np.ndarray) -> np.ndarray:
    sq = np.sum(X * X, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    np.fill_diagonal(d2, 0.0)
    return np.clip(d2, 0.0, None)


def _row_affinities(d2_row: np.ndarray, beta: float) -> np.ndarray:
    p = np.exp(-d2_row * beta)
    total = p.sum()
    if total <= 0.0:
        # numerically everything underflowed; fall back to nearest neighbor
        p = np.zeros_like(d2_row)
        p[int(np.argmin(d2_row))] = 1.0
        return p
    return p / total


def _perplexity(p: np.ndarray) -> float:
    nz = p[p > 0]
    entropy = -np.sum(nz * np.log2(nz))
    return float(2.0**entropy)


def conditional_affinities(
    d2: np.ndarray, perplexity: float, tol: float = 1e-6, max_steps: int = 200
) -> np.ndarray:
    """Per-row conditional Gaussian affinities whose perplexity matches the
    target, found by bisection on the precision."""
    n = d2.shape[0]
    P = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        row = np.delete(d2[i], i)
        if np.all(row == 0.0):
            raise DegenerateInputError(
                "all pairwise distances are zero; affinities are undefined"
            )
        beta, lo, hi = 1.0, 0.0, np.inf
        p = _row_affinities(row, beta)
        for _ in range(max_steps):
            diff = _perplexity(p) - perplexity
            if abs(diff) <= tol:
                break
            if diff > 0:  # too flat: sharpen
                lo = beta
                beta = beta * 2.0 if hi == np.inf else (beta + hi) / 2.0
            else:
                hi = beta
                beta = (lo + beta) / 2.0
            p = _row_affinities(row, beta)
        P[i, np.arange(n) != i] = p
    return P


def tsne_transform(matrix: np.ndarray, cfg: TsneConfig) -> np.ndarray:
    """Embed points into 2 or 3 dimensions with exact t-SNE."""
    X = np.asarray(matrix, dtype=np.float64)
    n = X.shape[0]
    if n < 4:
        raise ValueError(f"t-SNE needs at least 4 points, got {n}")
    perplexity = min(cfg.perplexity, (n - 1) / 3.0)
    d2 = _squared_distances(X)
    if np.max(d2) == 0.0:
        raise DegenerateInputError("all points identical; t-SNE input is degenerate")
    cond = conditional_affinities(d2, perplexity)
    P = (cond + cond.T) / (2.0 * n)
    P = np.maximum(P, 1e-12)

    rng = np.random.default_rng(cfg.seed)
    Y = rng.normal(scale=1e-4, size=(n, cfg.output_dim))
    initial_kl = _kl_divergence(P, Y)

    # the exaggeration phase must leave room to optimize the true objective
    exaggeration_iters = min(cfg.exaggeration_iters, cfg.iterations // 2)
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)
    for it in range(cfg.iterations):
        exaggerate = cfg.exaggeration if it < exaggeration_iters else 1.0
        grad, _ = _gradient(P * exaggerate, Y)
        momentum = 0.5 if it < exaggeration_iters else 0.8
        same_sign = np.sign(grad) == np.sign(velocity)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        gains = np.maximum(gains, 0.01)
        velocity = momentum * velocity - cfg.learning_rate * gains * grad
        Y = Y + velocity
        Y = Y - Y.mean(axis=0)

    final_kl = _kl_divergence(P, Y)
    if not final_kl < initial_kl:
        raise RuntimeError(
            f"t-SNE failed to improve the embedding (KL {initial_kl:.6f} -> {final_kl:.6f})"
        )
    return Y


def _student_t_kernel(Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    num = 1.0 / (1.0 + _squared_distances(Y))
    np.fill_diagonal(num, 0.0)
    Q = num / np.sum(num)
    return np.maximum(Q, 1e-12), num


def _gradient(P: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    Q, num = _student_t_kernel(Y)
    PQ = (P - Q) * num
    grad = 4.0 * ((np.diag(PQ.sum(axis=1)) - PQ) @ Y)
    return grad, Q


def _kl_divergence(P: np.ndarray, Y: np.ndarray) -> float:
    Q, _ = _student_t_kernel(Y)
    mask = P > 0
    return float(np.sum(P[mask] * np.log(P[mask] / Q[mask])))


# ---------------------------------------------------------------------------
# Reducer chains

_STEP_RE = re.compile(r"^(pca|tsne):(\d+)$")


def parse_chain(spec: str) -> list[tuple[str, int]]:
    """Parse a chain spec such as ``pca:34+tsne:2`` or ``none``."""
    spec = spec.strip().lower()
    if spec in ("", "none", "identity"):
        return []
    steps = []
    for part in spec.split("+"):
        m = _STEP_RE.match(part.strip())
        if not m:
            raise ValueError(f"bad reducer step {part!r}; expected pca:<dim> or tsne:<dim>")
        steps.append((m.group(1), int(m.group(2))))
    return steps


def validate_chain(chain) -> list[tuple[str, int]]:
    steps = [(str(name), int(dim)) for name, dim in chain]
    names = [name for name, _ in steps]
    if names not in ([], ["pca"], ["tsne"], ["pca", "tsne"]):
        raise ValueError(
            f"unsupported reducer chain {names}; use pca, tsne, or pca followed by tsne"
        )
    for name, dim in steps:
        if name == "tsne" and dim not in (2, 3):
            raise ValueError("t-SNE output dim must be 2 or 3")
        if dim < 1:
            raise ValueError("reducer dims must be positive")
    return steps


def reduce_chain(
    emb: EmbeddingSet, chain, tsne_config: TsneConfig | None = None
) -> ReducedEmbeddingSet:
    """Apply a validated reducer chain left to right, recording provenance."""
    steps = validate_chain(chain)
    matrix = emb.matrix
    for name, dim in steps:
        if name == "pca":
            _, matrix = pca_fit_transform(matrix, dim)
        else:
            cfg = tsne_config or TsneConfig()
            if cfg.output_dim != dim:
                cfg = replace(cfg, output_dim=dim)
            matrix = tsne_transform(matrix, cfg)
    reduced = EmbeddingSet(
        total_frames=emb.total_frames,
        input_fps=emb.input_fps,
        sample_fps=emb.sample_fps,
        sample_indexes=emb.sample_indexes,
        matrix=matrix,
    )
    return ReducedEmbeddingSet(base=reduced, provenance=tuple(steps))
