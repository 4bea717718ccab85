"""Frame embedders.

``vit:<checkpoint>`` runs a pretrained Hugging Face vision transformer and
takes the class-token vector of the last hidden state. ``dummy[:dim]``
computes a deterministic pixel-statistics embedding with no model
download, for plumbing tests and offline runs.
"""

from __future__ import annotations

import numpy as np


class EmbedderError(RuntimeError):
    pass


class DummyEmbedder:
    """Deterministic stand-in: coarse grid of per-cell channel means."""

    def __init__(self, dim: int = 48):
        grid = max(1, int(np.sqrt(dim / 3)))
        self.grid = grid
        self.dim = grid * grid * 3

    def embed_batch(self, frames) -> np.ndarray:
        out = np.empty((len(frames), self.dim), dtype=np.float64)
        for i, frame in enumerate(frames):
            h, w = frame.shape[:2]
            ys = np.linspace(0, h, self.grid + 1).astype(int)
            xs = np.linspace(0, w, self.grid + 1).astype(int)
            cells = [
                frame[ys[r] : ys[r + 1], xs[c] : xs[c + 1]].mean(axis=(0, 1))
                for r in range(self.grid)
                for c in range(self.grid)
            ]
            out[i] = np.concatenate(cells) / 255.0
        return out


class HFVisionEmbedder:
    """Class-token embeddings from a pretrained vision transformer."""

    def __init__(self, checkpoint: str, device: str = "cpu", batch_size: int = 8):
        try:
            import torch
            from transformers import AutoImageProcessor, AutoModel
        except ImportError as exc:
            raise EmbedderError(
                "vit embedder needs the [vit] extra (torch + transformers)"
            ) from exc
        try:
            self.processor = AutoImageProcessor.from_pretrained(checkpoint)
            self.model = AutoModel.from_pretrained(checkpoint).to(device).eval()
        except Exception as exc:
            raise EmbedderError(f"cannot fetch checkpoint {checkpoint!r}: {exc}") from exc
        self._torch = torch
        self.device = device
        self.batch_size = batch_size
        self.dim = int(self.model.config.hidden_size)

    def embed_batch(self, frames) -> np.ndarray:
        torch = self._torch
        chunks = []
        with torch.no_grad():
            for i in range(0, len(frames), self.batch_size):
                batch = frames[i : i + self.batch_size]
                inputs = self.processor(images=list(batch), return_tensors="pt").to(self.device)
                hidden = self.model(**inputs).last_hidden_state
                chunks.append(hidden[:, 0, :].cpu().numpy().astype(np.float64))
        return np.vstack(chunks)


def make_embedder(model_id: str):
    """Resolve a model id string: ``dummy``, ``dummy:<dim>``, or
    ``vit:<checkpoint>`` (bare ids are treated as checkpoints)."""
    if model_id == "dummy":
        return DummyEmbedder()
    if model_id.startswith("dummy:"):
        return DummyEmbedder(dim=int(model_id.split(":", 1)[1]))
    if model_id.startswith("vit:"):
        return HFVisionEmbedder(model_id.split(":", 1)[1])
    return HFVisionEmbedder(model_id)
