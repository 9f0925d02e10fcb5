import hashlib

import numpy as np
import pytest

from midicoth.codec.ablation import layer_bit_accounting
from midicoth.codec.pipeline import Pipeline, compress, decompress
from midicoth.coding.arith import ArithmeticDecoder, ArithmeticEncoder
from midicoth.config import HEADER_SIZE, PipelineConfig
from midicoth.core.distribution import quantized_code_length
from midicoth.denoise.tweedie import score_diagnostics

pytestmark = pytest.mark.slow

CANTERBURY = ("alice29.txt", "asyoulik.txt", "cp.html", "fields.c", "grammar.lsp", "kennedy.xls",
              "lcet10.txt", "plrabn12.txt", "ptt5", "sum", "xargs.1")


def _step_means(tbl):
    rows = score_diagnostics(tbl)
    out = {}
    for step in range(tbl.steps):
        sel = [r for r in rows if r.step == step]
        w = sum(r.weight for r in sel)
        out[step] = sum(r.mean_abs_delta * r.weight for r in sel) / w
    return out, rows


def test_alice29_full_pipeline_size(corpus):
    data = corpus("alice29.txt")
    blob = compress(data).to_bytes()
    assert hashlib.sha256(decompress(blob)).digest() == hashlib.sha256(data).digest()
    assert abs(len(blob) - 40_274) <= 0.05 * 40_274
    assert len(blob) < 43_202          # bzip2 -9
    assert len(blob) < 48_500          # xz -9


def test_alice29_base_ppm_size(corpus):
    blob = compress(corpus("alice29.txt"), PipelineConfig.base()).to_bytes()
    assert abs(len(blob) - 42_672) <= 0.05 * 42_672


@pytest.mark.parametrize("name", ["alice29.txt", "enwik8_3M"])
def test_cascade_is_monotone(corpus, name):
    rows = layer_bit_accounting(corpus(name)[:3_000_000])
    for prev, row in zip(rows, rows[1:]):
        assert row.size < prev.size, row.label
    assert rows[-1].delta_pct >= 1.5


def test_enwik8_3m_full_pipeline_size(corpus):
    data = corpus("enwik8_3M")[:3_000_000]
    c = compress(data)
    assert abs(len(c.to_bytes()) - 751_174) <= 0.05 * 751_174


@pytest.mark.parametrize("name", CANTERBURY)
def test_canterbury_roundtrip(corpus, name):
    data = corpus(name)
    assert hashlib.sha256(decompress(compress(data).to_bytes())).digest() == hashlib.sha256(data).digest()


def test_alice29_diagnostics_shape(corpus):
    pipe = Pipeline(PipelineConfig(), ledger=True)
    pipe.encode(corpus("alice29.txt"))
    means, rows = _step_means(pipe.tweedie.table)
    assert means[2] < means[1] < means[0]

    step0 = sorted((r for r in rows if r.step == 0 and r.weight > 0), key=lambda r: -r.gamma)
    deltas = [r.mean_abs_delta for r in step0]
    assert all(b <= a for a, b in zip(deltas, deltas[1:]))
    assert pipe.ledger.bits["tweedie"] < pipe.ledger.bits["ppm"]


def test_enwik8_diagnostics_invert_at_high_confidence(corpus):
    pipe = Pipeline(PipelineConfig())
    pipe.encode(corpus("enwik8_3M")[:3_000_000])
    means, rows = _step_means(pipe.tweedie.table)
    assert means[2] < means[1] < means[0]
    step0 = {round(r.gamma, 3): r.mean_abs_delta for r in rows if r.step == 0 and r.weight > 0}
    lowest = step0[min(step0)]
    near_02 = step0[min(step0, key=lambda g: abs(g - 0.2))]
    assert lowest > near_02


def _mixed_megabyte() -> bytes:
    rng = np.random.default_rng(5)
    words = [bytes(rng.choice(list(b"etaoinshrdlu"), size=int(n)).tolist()) for n in rng.integers(2, 9, size=400)]
    text = b" ".join(words[int(i)] for i in rng.integers(0, 400, size=120_000))
    parts = [text[:400_000], rng.integers(0, 256, size=200_000, dtype=np.uint8).tobytes(),
             bytes(range(0, 256, 3)) * 2000, b"\x00" * 100_000, text[400_000:]]
    return b"".join(parts)[:1 << 20]


def test_encoder_and_decoder_states_agree_every_64k():
    data = _mixed_megabyte()
    assert len(data) == 1 << 20
    every = 1 << 16

    enc_pipe = Pipeline(PipelineConfig())
    enc = ArithmeticEncoder()
    enc_digests = []
    for i, b in enumerate(data, 1):
        cum = enc_pipe.predict()
        enc.encode_symbol(cum, b)
        enc_pipe.update(b, cum)
        if i % every == 0:
            enc_digests.append(enc_pipe.state_digest())

    dec_pipe = Pipeline(PipelineConfig())
    dec = ArithmeticDecoder(enc.finish())
    for i in range(1, len(data) + 1):
        cum = dec_pipe.predict()
        dec_pipe.update(dec.decode_symbol(cum), cum)
        if i % every == 0:
            assert dec_pipe.state_digest() == enc_digests[i // every - 1], f"diverged before byte {i}"
    assert bytes(dec_pipe.history) == data


@pytest.mark.parametrize("period", [2, 16, 17])
def test_periodic_stream_costs_almost_nothing(period):
    rng = np.random.default_rng(period)
    pattern = rng.permutation(256)[:period].astype(np.uint8).tobytes()
    data = (pattern * (65_536 // period + 1))[:65_536]
    pipe = Pipeline(PipelineConfig())
    bits = 0.0
    for i, b in enumerate(data):
        cum = pipe.predict()
        if i >= 3 * len(data) // 4:
            bits += quantized_code_length(cum, b)
        pipe.update(b, cum)
    assert bits / (len(data) // 4) < 0.2


@pytest.mark.parametrize("size", [0, 1, 1000, 50_000, 1 << 20])
def test_random_strings_roundtrip(size):
    data = np.random.default_rng(size).integers(0, 256, size=size, dtype=np.uint8).tobytes()
    blob = compress(data).to_bytes()
    assert len(blob) >= HEADER_SIZE
    assert decompress(blob) == data
