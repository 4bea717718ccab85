"""Thin extraction client: video file in, VEMB v1 embedding file out."""

from .extract import ExtractError, extract
from .sampling import sample_indexes
from .vemb import write_vemb

__all__ = ["ExtractError", "extract", "sample_indexes", "write_vemb"]
