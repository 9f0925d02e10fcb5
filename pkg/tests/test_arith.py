import numpy as np
import pytest

from midicoth.coding.arith import ArithmeticDecoder, ArithmeticEncoder
from midicoth.config import FREQ_SCALE
from midicoth.core.distribution import normalize, probs_to_cumfreqs, uniform
from midicoth.errors import CorruptStreamError, StreamExhaustedError


def _roundtrip(tables, symbols):
    enc = ArithmeticEncoder()
    for cum, s in zip(tables, symbols):
        enc.encode_symbol(cum, s)
    payload = enc.finish()
    dec = ArithmeticDecoder(payload)
    return [dec.decode_symbol(cum) for cum in tables], payload


def test_every_symbol_under_uniform_table():
    cum = probs_to_cumfreqs(uniform())
    for s in range(256):
        out, payload = _roundtrip([cum], [s])
        assert out == [s]
        assert len(payload) <= 3


def test_random_tables_roundtrip(rng):
    tables, symbols = [], []
    for _ in range(10_000):
        p = normalize(rng.dirichlet(np.full(256, rng.choice([0.02, 0.3, 2.0]))))
        tables.append(probs_to_cumfreqs(p))
        symbols.append(int(rng.choice(256, p=p)))
    out, _ = _roundtrip(tables, symbols)
    assert out == symbols


def test_extreme_tables():
    p = np.full(256, 1e-9)
    p[10] = 1.0
    cum = probs_to_cumfreqs(normalize(p))
    assert int(cum[11] - cum[10]) == FREQ_SCALE - 255

    # near-certain symbol costs ~0.02 bits, the rarest ones 14 bits
    symbols = [10] * 10_000 + [0, 255, 11, 9] * 50
    out, payload = _roundtrip([cum] * len(symbols), symbols)
    assert out == symbols
    assert len(payload) < (10_000 * 0.03 + 200 * 14) / 8 + 64


def test_empty_stream():
    payload = ArithmeticEncoder().finish()
    assert len(payload) <= 2
    ArithmeticDecoder(payload)     # decoding zero symbols is fine


def test_bits_written_tracks_output():
    enc = ArithmeticEncoder()
    cum = probs_to_cumfreqs(uniform())
    for s in b"abcdefgh":
        enc.encode_symbol(cum, s)
    payload = enc.finish()
    assert enc.bits_written == len(payload) * 8
    assert 64 <= enc.bits_written <= 64 + 2 + 8


def test_decoder_stops_past_the_end():
    # 32 bits of register fill from nothing is already past the slack
    with pytest.raises(StreamExhaustedError):
        ArithmeticDecoder(b"")


@pytest.mark.parametrize("cut", [1, 2, 3, 4])
def test_truncated_tail_is_detected(cut):
    # symbol 0 under a uniform table is exactly 8 E1 shifts, so the bit count is fixed
    cum = probs_to_cumfreqs(uniform())
    symbols = [0] * 64
    enc = ArithmeticEncoder()
    for s in symbols:
        enc.encode_symbol(cum, s)
    payload = enc.finish()
    ArithmeticDecoder(payload)
    dec = ArithmeticDecoder(payload[:-cut])
    with pytest.raises(StreamExhaustedError):
        for _ in symbols:
            dec.decode_symbol(cum)


def test_full_payload_never_hits_the_slack(rng):
    for alpha in (0.02, 0.3, 2.0):
        tables, symbols = [], []
        for _ in range(500):
            p = normalize(rng.dirichlet(np.full(256, alpha)))
            tables.append(probs_to_cumfreqs(p))
            symbols.append(int(rng.choice(256, p=p)))
        out, _ = _roundtrip(tables, symbols)
        assert out == symbols


def test_code_length_tracks_cross_entropy(rng):
    enc = ArithmeticEncoder()
    ideal = 0.0
    for _ in range(10_000):
        cum = probs_to_cumfreqs(normalize(rng.dirichlet(np.full(256, 0.5))))
        f = np.diff(cum)
        s = int(rng.choice(256, p=f / FREQ_SCALE))
        enc.encode_symbol(cum, s)
        ideal -= np.log2(f[s] / FREQ_SCALE)
    bits = 8 * len(enc.finish())
    assert ideal - 2 <= bits <= ideal + 16


def test_payload_length_is_checked_at_the_end(rng):
    tables, symbols = [], []
    for _ in range(300):
        p = normalize(rng.dirichlet(np.full(256, 0.3)))
        tables.append(probs_to_cumfreqs(p))
        symbols.append(int(rng.choice(256, p=p)))
    enc = ArithmeticEncoder()
    for cum, s in zip(tables, symbols):
        enc.encode_symbol(cum, s)
    payload = enc.finish()

    dec = ArithmeticDecoder(payload)
    assert [dec.decode_symbol(cum) for cum in tables] == symbols
    dec.check_end()

    # a trailing zero byte decodes the same symbols but is not part of the stream
    dec = ArithmeticDecoder(payload + b"\x00")
    assert [dec.decode_symbol(cum) for cum in tables] == symbols
    with pytest.raises(CorruptStreamError):
        dec.check_end()


def test_empty_stream_end_check():
    payload = ArithmeticEncoder().finish()
    assert len(payload) == 1
    ArithmeticDecoder(payload).check_end()
