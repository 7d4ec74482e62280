"""Text-to-embedding-stream frontend for semnorm."""

from .embed import DEFAULT_MODEL, EmbedderConfig, EmbedResult, embed_corpus, load_model
from .writer import Record, write_stream

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MODEL",
    "EmbedResult",
    "EmbedderConfig",
    "Record",
    "embed_corpus",
    "load_model",
    "write_stream",
]
