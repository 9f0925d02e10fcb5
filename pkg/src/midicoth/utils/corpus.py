# src/midicoth/utils/corpus.py
import os
from typing import List, Optional, Sequence

from ..config import CORPUS_ENV


def corpus_dirs() -> List[str]:
    """
    Directories searched for benchmark files, in order:
      1) $MIDICOTH_CORPUS
      2) Current Working Directory / corpus
      3) Project root / corpus (three levels up from this utils/ folder)
    """
    dirs = []
    env = os.environ.get(CORPUS_ENV)
    if env:
        dirs.append(env)
    dirs.append(os.path.join(os.getcwd(), "corpus"))
    here = os.path.abspath(os.path.dirname(__file__))
    proj_root = os.path.abspath(os.path.join(here, "..", "..", ".."))  # src/midicoth/utils -> repo
    dirs.append(os.path.join(proj_root, "corpus"))
    return dirs


def corpus_path(name: str) -> Optional[str]:
    """Absolute path of a corpus file, or None when no search dir has it."""
    name = name.replace("\\", "/").lstrip("/")
    for d in corpus_dirs():
        p = os.path.join(d, name)
        if os.path.isfile(p):
            return p
    return None


def missing_files(names: Sequence[str]) -> List[str]:
    return [n for n in names if corpus_path(n) is None]
