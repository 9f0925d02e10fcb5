"""Midicoth: PPM + match/word/high-order blending + Tweedie denoising, arithmetic coded."""
from .codec.container import Container
from .codec.pipeline import Pipeline, compress, decompress
from .config import PipelineConfig
from .errors import ContainerFormatError, CorruptStreamError, MidicothError

__version__ = "0.1.0"

__all__ = [
    "Container", "ContainerFormatError", "CorruptStreamError", "MidicothError", "Pipeline",
    "PipelineConfig", "compress", "decompress",
]
