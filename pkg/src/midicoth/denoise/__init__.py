from .tweedie import (CalibEntry, CalibTable, DiagnosticRow, TweedieDenoiser, bin_indices, bit_context,
                      build_sum_tree, correction, score_diagnostics)

__all__ = [
    "CalibEntry", "CalibTable", "DiagnosticRow", "TweedieDenoiser", "bin_indices", "bit_context",
    "build_sum_tree", "correction", "score_diagnostics",
]
