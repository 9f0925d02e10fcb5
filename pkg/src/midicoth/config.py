# src/midicoth/config.py
# ---------------------------------------------------------------
# Global constants used across the compressor: coder scale, model
# orders and blend caps, calibration-table geometry, container
# layout and CLI defaults.
# Everything tunable lives here so the encoder and decoder always
# read one and the same set of numbers.
# ---------------------------------------------------------------

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List

# ------------------ Distribution / Arithmetic Coder ------------------

ALPHABET = 256                        # byte alphabet
FLOOR_PROB = 1e-12                    # every symbol keeps at least this mass before normalizing
FREQ_BITS = 14                        # coder frequency precision
FREQ_SCALE = 1 << FREQ_BITS           # T = 16384, cum[256] of every table
CODER_BITS = 32                       # width of low/high/value registers
DECODER_SLACK_BITS = CODER_BITS - 2   # a valid stream ends at most this many bits before the decoder stops reading

# ------------------ PPM (orders 0..4) ------------------

PPM_MAX_ORDER = 4                     # highest PPM order
JEFFREYS = 0.5                        # pseudo-count per symbol
PRIOR_MASS = JEFFREYS * ALPHABET      # 128, initial total of a fresh context
PPM_INITIAL_SLOTS = 1024              # open-addressing slots per order at start
MAX_LOAD = 0.60                       # grow (x2) once occupancy passes this fraction
PPM_STORED_CONDITIONAL = True         # non-excluded symbols share by stored count (real + 0.5); False = seen ones by real count

# ------------------ Match model ------------------

MATCH_LENGTHS = (16, 12, 8, 6, 4)     # scanned longest first
MATCH_BASE_CONF = {4: 0.50, 6: 0.60, 8: 0.70, 12: 0.82, 16: 0.92}  # c_base per context length
MATCH_STREAK_BASE = 0.65              # w = c_base * (0.65 + 0.04 * streak)
MATCH_STREAK_STEP = 0.04
MATCH_W_CAP = 0.96                    # cap on the match prediction weight
MATCH_BLEND_SCALE = 0.85              # w_m = min(w * 0.85, 0.95)
MATCH_BLEND_CAP = 0.95
MATCH_INITIAL_SLOTS = 1 << 16

# ------------------ Word model ------------------

WORD_MAX_LEN = 32                     # longer words are truncated for trie / hash purposes
WORD_NODE_BUDGET = 1 << 20            # trie stops growing after this many nodes
WORD_SMOOTHING = 1e-4                 # add-eps over 256 continuations
WORD_CONF_RAMP = 8.0                  # c_w = V / (V + 8)
WORD_BLEND_SCALE = 0.35               # w_w = min(c_w * 0.35, 0.45)
WORD_BLEND_CAP = 0.45
WORD_INITIAL_SLOTS = 1 << 12

# ------------------ High-order context model (orders 5..8) ------------------

HCTX_ORDERS = (8, 7, 6, 5)            # scanned highest first
HCTX_MIN_TOTAL = 4                    # first order with N >= 4 is used
HCTX_SMOOTHING = 1e-4                 # epsilon of the count smoothing
HCTX_CONF_RAMP = 8.0                  # conf = (N-4)/(N+8) * order factor
HCTX_BLEND_SCALE = 2.0                # w_h = min(conf * 2.0, 0.60)
HCTX_BLEND_CAP = 0.60
HCTX_COUNT_LIMIT = 65535              # uint16 ceiling, halve the entry when reached
HCTX_INITIAL_SLOTS = 1 << 16

# ------------------ Micro-diffusion (Tweedie) ------------------

TWEEDIE_STEPS = 3                     # K, default number of denoising steps
TWEEDIE_MAX_STEPS = 4                 # CLI may ask for 1..4
N_BIT_CTX = 27                        # level + parent-path contexts
N_ORDER_GROUPS = 3                    # PPM order {-1,0,1} / {2,3} / {4+}
SHAPE_THRESHOLDS = (0.05, 0.15, 0.40) # p_max thresholds -> 4 shape bins
N_SHAPE = len(SHAPE_THRESHOLDS) + 1
N_CONF_BINS = 8                       # floor(log2(1 + C/16)) capped at 7
CONF_BIN_UNIT = 16.0
N_PBINS = 20                          # logit-spaced P(right) bins over [-8, 8]
LOGIT_RANGE = 8.0
CALIB_PRIOR_WEIGHT = 32.0             # W pseudo-observations per entry
CALIB_PRIOR_SQ_ERR = 0.25 * CALIB_PRIOR_WEIGHT  # Bernoulli variance at 0.5, times W
CALIB_MIN_REAL = 10                   # below this many real observations the correction is 0
SHRINK_SNR = 4.0                      # full-strength correction at SNR >= 4
CLAMP_EPS = 1e-8                      # a corrected P_R' stays inside [eps, 1 - eps]; uncorrected nodes are not clamped
DEGENERATE_MASS = 1e-300              # nodes lighter than this are left alone

# ------------------ Container ------------------

MAGIC = b"MDCT"
FORMAT_VERSION = 1
HEADER_SIZE = 14                      # magic(4) + version(1) + flags(1) + length(8)

# ------------------ CLI / Bench ------------------

CORPUS_ENV = "MIDICOTH_CORPUS"        # directory holding alice29.txt, enwik8_3M ...
BENCH_FILES = ("alice29.txt", "enwik8_3M")
PROGRESS_EVERY = 1 << 16              # DEBUG progress line every 64 KB


# ------------------ PipelineConfig Dataclass ------------------
# Which layers run and how many denoising steps. The container header
# carries it, so a decoder is always built with the encoder's choice.

@dataclass(frozen=True)
class PipelineConfig:
    enable_match: bool = True
    enable_word: bool = True
    enable_highctx: bool = True
    enable_tweedie: bool = True
    tweedie_steps: int = TWEEDIE_STEPS   # 1..4

    def __post_init__(self) -> None:
        if not 1 <= self.tweedie_steps <= TWEEDIE_MAX_STEPS:
            raise ValueError(f"tweedie_steps must be in 1..{TWEEDIE_MAX_STEPS}, got {self.tweedie_steps}")

    def to_flags(self) -> int:
        # bits 0..3 = layer enables, bits 4..5 = steps - 1
        flags = (int(self.enable_match)
                 | int(self.enable_word) << 1
                 | int(self.enable_highctx) << 2
                 | int(self.enable_tweedie) << 3)
        return flags | (self.tweedie_steps - 1) << 4

    @classmethod
    def from_flags(cls, flags: int) -> "PipelineConfig":
        return cls(
            enable_match=bool(flags & 1),
            enable_word=bool(flags & 2),
            enable_highctx=bool(flags & 4),
            enable_tweedie=bool(flags & 8),
            tweedie_steps=((flags >> 4) & 3) + 1,
        )

    def label(self) -> str:
        # ablation row names, e.g. "+M+W"
        if not (self.enable_match or self.enable_word or self.enable_highctx or self.enable_tweedie):
            return "Base PPM"
        parts = [name for name, on in (("M", self.enable_match), ("W", self.enable_word),
                                       ("H", self.enable_highctx), ("Tweedie", self.enable_tweedie)) if on]
        return "+" + "+".join(parts)

    @classmethod
    def base(cls, tweedie_steps: int = TWEEDIE_STEPS) -> "PipelineConfig":
        return cls(False, False, False, False, tweedie_steps)

    @classmethod
    def cascade(cls, tweedie_steps: int = TWEEDIE_STEPS) -> List["PipelineConfig"]:
        """Ablation rows, each adding one layer to the previous one."""
        rows = [cls.base(tweedie_steps)]
        for field in ("enable_match", "enable_word", "enable_highctx", "enable_tweedie"):
            rows.append(replace(rows[-1], **{field: True}))
        return rows
