from .distribution import (
    CumFreqTable, Distribution, PredictionMeta, code_length, cross_entropy, entropy, entropy_gap,
    mix, normalize, probs_to_cumfreqs, quantization_overhead, quantized_code_length, uniform,
)
from .hashing import FNV_OFFSET_BASIS, FNV_PRIME, OpenAddressTable, fnv1a, suffix_hashes

__all__ = [
    "CumFreqTable", "Distribution", "PredictionMeta", "code_length", "cross_entropy", "entropy",
    "entropy_gap", "mix", "normalize", "probs_to_cumfreqs", "quantization_overhead",
    "quantized_code_length", "uniform",
    "FNV_OFFSET_BASIS", "FNV_PRIME", "OpenAddressTable", "fnv1a", "suffix_hashes",
]
