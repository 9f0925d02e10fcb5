# src/midicoth/denoise/tweedie.py
"""
Micro-diffusion: K passes of binary-tree Tweedie denoising.

The 256-way distribution is read as a depth-8 binary tree. Every internal
node i splits its mass S[i] into P(right) = S[2i+1] / S[i]. For each node
the calibration table holds what that P(right) has historically been
(sum_pred) against how often the walk really went right (hits); their
difference, shrunk by a James-Stein factor, is added to P(right). Because
scaling a subtree leaves every node inside it untouched, all 255 nodes
can be corrected at once and the scale factors pushed down to the leaves.

Table layout (flat, C order): [step][bctx][ord][shape][conf][pbin].
"""
from __future__ import annotations

import logging
import math
from typing import List, NamedTuple

import numpy as np

from ..config import (ALPHABET, CALIB_MIN_REAL, CALIB_PRIOR_SQ_ERR, CALIB_PRIOR_WEIGHT, CLAMP_EPS,
                      CONF_BIN_UNIT, DEGENERATE_MASS, LOGIT_RANGE, N_BIT_CTX, N_CONF_BINS, N_ORDER_GROUPS,
                      N_PBINS, N_SHAPE, PRIOR_MASS, SHAPE_THRESHOLDS, SHRINK_SNR, TWEEDIE_MAX_STEPS, TWEEDIE_STEPS)
from ..core.distribution import Distribution, PredictionMeta
from ..core.hashing import fnv1a

log = logging.getLogger(__name__)

LEVELS = 8                 # log2(256)
N_NODES = ALPHABET - 1     # internal nodes 1..255
TREE_SIZE = 2 * ALPHABET   # S[0] unused, S[256:] = leaves


# ------------------ Tree geometry ------------------

def bit_context(level: int, path: int) -> int:
    """Bit context of a node at `level` whose `level` higher bits are `path`."""
    if not 0 <= level < LEVELS or not 0 <= path < (1 << level):
        raise ValueError(f"bad node: level={level} path={path}")
    if level == 0:
        return 0
    if level == 1:
        return 1 + path
    if level == 2:
        return 3 + path
    return 7 + 4 * (level - 3) + fnv1a(bytes((path, level))) % 4


def _node_bctx() -> np.ndarray:
    out = np.empty(N_NODES, dtype=np.int64)
    for i in range(1, ALPHABET):
        level = i.bit_length() - 1
        out[i - 1] = bit_context(level, i - (1 << level))
    return out


NODE_BCTX = _node_bctx()                                   # bctx of node i at [i - 1]
_sym = np.arange(ALPHABET, dtype=np.int64)[:, None]
_lev = np.arange(LEVELS, dtype=np.int64)[None, :]
PATH_NODES = (1 << _lev) | (_sym >> (LEVELS - _lev))      # [symbol, level] -> node on its path
PATH_BITS = (_sym >> (LEVELS - 1 - _lev)) & 1              # [symbol, level] -> 1 = went right
# [symbol, level] -> the factor a leaf picks up at that level, indexed into concat(s_left, s_right)
LEAF_FACTORS = (PATH_NODES - 1) + PATH_BITS * N_NODES
del _sym, _lev


def build_sum_tree(p: Distribution) -> np.ndarray:
    """S[256 + s] = p[s], S[i] = S[2i] + S[2i+1] down to the root S[1]."""
    S = np.zeros(TREE_SIZE, dtype=np.float64)
    S[ALPHABET:] = p
    lo = ALPHABET >> 1
    while lo:
        S[lo:2 * lo] = S[2 * lo:4 * lo:2] + S[2 * lo + 1:4 * lo:2]
        lo >>= 1
    return S


def leaf_scales(s_left: np.ndarray, s_right: np.ndarray) -> np.ndarray:
    """Product of the scale factors along each root-to-leaf path, one multiplier per leaf."""
    return np.concatenate((s_left, s_right))[LEAF_FACTORS].prod(axis=1)


# ------------------ Binning ------------------

def order_group(order: int) -> int:
    if order <= 1:
        return 0
    return 1 if order <= 3 else 2


def shape_bin(p_max: float) -> int:
    return sum(1 for t in SHAPE_THRESHOLDS if t < p_max)


def conf_bin(confidence: float) -> int:
    # floor(log2(1 + C/16)), bins start at C = 16, 48, 112, ...
    return min(N_CONF_BINS - 1, int(math.floor(math.log2(1.0 + max(confidence, 0.0) / CONF_BIN_UNIT))))


def conf_bin_center(c: int) -> float:
    # geometric centre of the bin's (1 + C/16) range
    return CONF_BIN_UNIT * (2.0 ** (c + 0.5) - 1.0)


# bin k starts where logit(p) = -8 + 16k/20; below the first edge is bin 0, above the last bin 19
PBIN_EDGES = 1.0 / (1.0 + np.exp(-(-LOGIT_RANGE + np.arange(1, N_PBINS) * (2 * LOGIT_RANGE / N_PBINS))))


def p_bins(p_right: np.ndarray) -> np.ndarray:
    return np.searchsorted(PBIN_EDGES, np.asarray(p_right, dtype=np.float64), side="right").astype(np.int64)


def _entry_base(step, bctx, ord_g: int, shape: int, conf: int):
    # works for scalar and array bctx
    return ((((step * N_BIT_CTX + bctx) * N_ORDER_GROUPS + ord_g) * N_SHAPE + shape) * N_CONF_BINS + conf) * N_PBINS


NODE_OFFSET = _entry_base(0, NODE_BCTX, 0, 0, 0)           # bctx part of each node's index


def bin_indices(step: int, bctx: int, ppm_order: int, p_max: float, confidence: float, p_right: float) -> int:
    """Flat calibration-table index of one node lookup."""
    base = _entry_base(step, bctx, order_group(ppm_order), shape_bin(p_max), conf_bin(confidence))
    return int(base + p_bins(np.array([p_right]))[0])


# ------------------ Calibration table ------------------

class CalibEntry(NamedTuple):
    sum_pred: float
    hits: float
    total: float
    sum_sq_err: float


def shrunk_corrections(sum_pred, hits, total, sum_sq_err) -> np.ndarray:
    """James-Stein shrunk bias delta' = delta * min(1, SNR / 4), elementwise."""
    sum_pred, hits, total, sum_sq_err = (np.asarray(a, dtype=np.float64)
                                         for a in (sum_pred, hits, total, sum_sq_err))
    delta = hits / total - sum_pred / total
    var = sum_sq_err / total
    with np.errstate(divide="ignore", invalid="ignore"):
        snr = np.where(var > 0.0, delta * delta * total / var, np.inf)
    out = delta * np.minimum(1.0, snr / SHRINK_SNR)
    return np.where(total - CALIB_PRIOR_WEIGHT < CALIB_MIN_REAL, 0.0, out)


def correction(e: CalibEntry) -> float:
    return float(shrunk_corrections([e.sum_pred], [e.hits], [e.total], [e.sum_sq_err])[0])


class CalibTable:
    """Four sufficient statistics per (step, bctx, ord, shape, conf, pbin) cell."""

    def __init__(self, steps: int = TWEEDIE_STEPS) -> None:
        if not 1 <= steps <= TWEEDIE_MAX_STEPS:
            raise ValueError(f"steps must be in 1..{TWEEDIE_MAX_STEPS}, got {steps}")
        self.steps = steps
        self.shape = (steps, N_BIT_CTX, N_ORDER_GROUPS, N_SHAPE, N_CONF_BINS, N_PBINS)
        size = int(np.prod(self.shape))

        # W pseudo-observations at the bin-centre probability, so every raw delta starts at 0
        width = 2 * LOGIT_RANGE / N_PBINS
        centres = 1.0 / (1.0 + np.exp(-(-LOGIT_RANGE + (np.arange(N_PBINS) + 0.5) * width)))
        prior = np.tile(CALIB_PRIOR_WEIGHT * centres, size // N_PBINS)
        self.sum_pred = prior.copy()
        self.hits = prior.copy()
        self.total = np.full(size, CALIB_PRIOR_WEIGHT)
        self.sum_sq_err = np.full(size, CALIB_PRIOR_SQ_ERR)
        # delta' per cell, refreshed only where observe()/set_entry() touch
        self.delta = np.zeros(size)

    def __len__(self) -> int:
        return self.total.size

    def entry(self, index: int) -> CalibEntry:
        return CalibEntry(float(self.sum_pred[index]), float(self.hits[index]),
                          float(self.total[index]), float(self.sum_sq_err[index]))

    def set_entry(self, index: int, e: CalibEntry) -> None:
        self.sum_pred[index], self.hits[index], self.total[index], self.sum_sq_err[index] = e
        self._refresh(index)

    def corrections(self, idx: np.ndarray) -> np.ndarray:
        return self.delta[idx]

    def observe(self, idx: np.ndarray, p_right: np.ndarray, bits: np.ndarray) -> None:
        # add.at keeps repeated indices correct (observe() also takes external batches)
        b = np.asarray(bits, dtype=np.float64)
        np.add.at(self.sum_pred, idx, p_right)
        np.add.at(self.hits, idx, b)
        np.add.at(self.total, idx, 1.0)
        np.add.at(self.sum_sq_err, idx, (b - p_right) ** 2)
        self._refresh(idx)

    def _refresh(self, idx) -> None:
        self.delta[idx] = shrunk_corrections(self.sum_pred[idx], self.hits[idx], self.total[idx],
                                             self.sum_sq_err[idx])

    def observations(self) -> float:
        return float((self.total - CALIB_PRIOR_WEIGHT).sum())

    def digest_into(self, h) -> None:
        for arr in (self.sum_pred, self.hits, self.total, self.sum_sq_err):
            h.update(arr.tobytes())


# ------------------ Denoiser ------------------

class StepSnapshot(NamedTuple):
    """Pre-correction view of all 255 nodes at one step, kept until the byte is known."""
    indices: np.ndarray      # table cell per node
    p_right: np.ndarray      # P(right) per node
    usable: np.ndarray       # False for degenerate nodes


class TweedieDenoiser:
    def __init__(self, steps: int = TWEEDIE_STEPS) -> None:
        self.steps = steps
        self.table = CalibTable(steps)
        self._log: List[StepSnapshot] = []

    def _node_view(self, S: np.ndarray, step: int, ord_g: int, shape: int, conf: int) -> StepSnapshot:
        internal = S[1:ALPHABET]
        pr = S[3:TREE_SIZE:2] / np.maximum(internal, DEGENERATE_MASS)
        usable = (internal >= DEGENERATE_MASS) & (pr > 0.0) & (pr < 1.0)
        pr[~usable] = 0.5
        indices = (_entry_base(step, 0, ord_g, shape, conf) + NODE_OFFSET) + p_bins(pr)
        return StepSnapshot(indices, pr, usable)

    def denoise(self, d: Distribution, meta: PredictionMeta) -> Distribution:
        """Run all steps over `d`; remembers each step's node view for record_outcome()."""
        ord_g = order_group(meta.order)
        conf = conf_bin(meta.confidence)
        self._log = []
        p = np.asarray(d, dtype=np.float64)

        for step in range(self.steps):
            shape = shape_bin(float(p.max()))
            view = self._node_view(build_sum_tree(p), step, ord_g, shape, conf)
            self._log.append(view)

            delta = np.where(view.usable, self.table.corrections(view.indices), 0.0)
            active = delta != 0.0
            if not active.any():
                continue
            # only active nodes are clamped and rescaled; a node with delta' = 0 keeps scale 1
            pr = view.p_right
            pr_new = np.clip(pr + delta, CLAMP_EPS, 1.0 - CLAMP_EPS)
            s_left = np.where(active, (1.0 - pr_new) / (1.0 - pr), 1.0)
            s_right = np.where(active, pr_new / pr, 1.0)

            p = p * leaf_scales(s_left, s_right)
            p = p / p.sum()
        return p

    def record_outcome(self, observed: int) -> int:
        """Feed the true byte's 8 branch outcomes per step into the table; returns cells touched."""
        log_, self._log = self._log, []
        if not log_:
            return 0
        nodes = PATH_NODES[observed] - 1
        ok = np.concatenate([v.usable[nodes] for v in log_])
        idx = np.concatenate([v.indices[nodes] for v in log_])[ok]
        pr = np.concatenate([v.p_right[nodes] for v in log_])[ok]
        bits = np.tile(PATH_BITS[observed], len(log_))[ok]
        # one batch per byte: path cells never repeat across levels or steps
        self.table.observe(idx, pr, bits)
        return int(ok.sum())

    def digest_into(self, h) -> None:
        self.table.digest_into(h)


# ------------------ Diagnostics ------------------

class DiagnosticRow(NamedTuple):
    gamma: float
    c_center: float
    step: int
    mean_abs_delta: float
    weight: float


def score_diagnostics(tbl: CalibTable) -> List[DiagnosticRow]:
    """Observation-weighted mean |delta'| per (confidence bin, step)."""
    deltas = np.abs(shrunk_corrections(tbl.sum_pred, tbl.hits, tbl.total, tbl.sum_sq_err)).reshape(tbl.shape)
    weights = (tbl.total - CALIB_PRIOR_WEIGHT).reshape(tbl.shape)
    rows: List[DiagnosticRow] = []
    for c in range(N_CONF_BINS):
        c_center = conf_bin_center(c)
        gamma = PRIOR_MASS / (c_center + PRIOR_MASS)
        for step in range(tbl.steps):
            w = weights[step, :, :, :, c, :]
            total_w = float(w.sum())
            mean = float((w * deltas[step, :, :, :, c, :]).sum() / total_w) if total_w > 0 else 0.0
            rows.append(DiagnosticRow(gamma, c_center, step, mean, total_w))
    log.debug("diagnostics over %.0f observations", tbl.observations())
    return rows
