# src/midicoth/core/distribution.py
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..config import ALPHABET, FLOOR_PROB, FREQ_SCALE
from ..errors import ModelFault

# Type aliases for clarity
Distribution = np.ndarray   # float64[256], sums to 1 after normalize()
CumFreqTable = np.ndarray   # int64[257], cum[0] = 0, cum[256] = FREQ_SCALE


@dataclass(frozen=True)
class PredictionMeta:
    """What the PPM stage tells the denoiser about its prediction.

    confidence: total stored count C of the highest matched context
                (Jeffreys mass included, so >= 128 whenever order >= 0).
    order:      that context's order, -1 when nothing matched.
    """
    confidence: float = 0.0
    order: int = -1

    @property
    def noise_level(self) -> float:
        # gamma = 128 / (C + 128), the prior's share of the estimate
        return 128.0 / (self.confidence + 128.0)


def uniform() -> Distribution:
    return np.full(ALPHABET, 1.0 / ALPHABET, dtype=np.float64)


def normalize(p: np.ndarray) -> Distribution:
    """Floor every entry at FLOOR_PROB and rescale to sum 1."""
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (ALPHABET,):
        raise ModelFault("normalize() needs 256 finite non-negative entries")
    total = float(p.sum())
    # a NaN or infinity anywhere makes the sum non-finite
    if not math.isfinite(total) or not float(p.min()) >= 0.0:
        raise ModelFault("normalize() needs 256 finite non-negative entries")
    if not total > 0.0:
        raise ModelFault("normalize() got an all-zero distribution")
    q = np.maximum(p, FLOOR_PROB)
    return q / q.sum()


def mix(p: Distribution, other: Distribution, w: float) -> Distribution:
    # convex blend shared by the match, word and high-order layers
    return (1.0 - w) * p + w * other


def probs_to_cumfreqs(p: Distribution) -> CumFreqTable:
    """Quantize a normalized distribution to a 14-bit cumulative table.

    f(s) = max(1, floor(p(s) * T + 0.5)); any surplus or deficit against T
    is taken from / given to the largest frequency, never pushing it below 1.
    """
    f = np.floor(p * FREQ_SCALE + 0.5).astype(np.int64)
    np.maximum(f, 1, out=f)
    diff = FREQ_SCALE - int(f.sum())
    while diff != 0:
        top = int(f.argmax())
        if diff > 0:
            f[top] += diff
            diff = 0
        else:
            take = min(-diff, int(f[top]) - 1)
            f[top] -= take
            diff += take
    cum = np.zeros(ALPHABET + 1, dtype=np.int64)
    np.cumsum(f, out=cum[1:])
    return cum


def code_length(p: Distribution, symbol: int) -> float:
    """Ideal code length in bits of `symbol` under `p`."""
    return -math.log2(float(p[symbol]))


def quantized_code_length(cum: CumFreqTable, symbol: int) -> float:
    return -math.log2((int(cum[symbol + 1]) - int(cum[symbol])) / FREQ_SCALE)


def entropy(p: Distribution) -> float:
    return float(-(p * np.log2(p)).sum())


def cross_entropy(p: Distribution, q: Distribution) -> float:
    # expected bits when the source is p and the code is built for q
    return float(-(p * np.log2(q)).sum())


def quantization_overhead(p: Distribution) -> float:
    """Expected extra bits per symbol from coding p with its quantized table."""
    cum = probs_to_cumfreqs(p)
    q = np.diff(cum).astype(np.float64) / FREQ_SCALE
    return cross_entropy(p, q) - entropy(p)


def entropy_gap(n: float, h_true: float) -> float:
    # first-order excess entropy of a Jeffreys-smoothed context with n observations
    return 128.0 / (n + 128.0) * (math.log2(ALPHABET) - h_true)
