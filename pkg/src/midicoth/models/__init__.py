from .base import BlendLayer, History
from .highctx import HighCtxModel
from .match import MatchModel
from .ppm import PPMModel
from .word import WordModel

__all__ = ["BlendLayer", "History", "HighCtxModel", "MatchModel", "PPMModel", "WordModel"]
