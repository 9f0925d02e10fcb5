from .corpus import corpus_dirs, corpus_path, missing_files

__all__ = ["corpus_dirs", "corpus_path", "missing_files"]
