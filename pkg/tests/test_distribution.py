import math

import numpy as np
import pytest

from midicoth.config import FLOOR_PROB, FREQ_SCALE
from midicoth.core.distribution import (
    PredictionMeta, code_length, cross_entropy, entropy, entropy_gap, mix, normalize, probs_to_cumfreqs,
    quantization_overhead, quantized_code_length, uniform,
)
from midicoth.errors import ModelFault


def test_normalize_uniform_unchanged():
    u = uniform()
    assert np.allclose(normalize(u), u, rtol=0, atol=1e-15)


def test_normalize_single_mass():
    p = np.zeros(256)
    p[0] = 2.0
    q = normalize(p)
    assert q.sum() == pytest.approx(1.0, abs=1e-12)
    assert q[0] == pytest.approx(1.0, abs=1e-9)
    assert (q[1:] > 0).all()
    assert q[1] == pytest.approx(FLOOR_PROB / (2.0 + 255 * FLOOR_PROB), rel=1e-9)


@pytest.mark.parametrize("bad", [
    np.zeros(256),
    np.full(256, np.nan),
    -np.ones(256),
    np.ones(255),
])
def test_normalize_rejects_bad_vectors(bad):
    with pytest.raises(ModelFault):
        normalize(bad)


def test_cumfreqs_uniform():
    cum = probs_to_cumfreqs(uniform())
    assert cum[0] == 0 and cum[-1] == FREQ_SCALE
    assert (np.diff(cum) == 64).all()


def test_cumfreqs_dominant_symbol():
    p = np.full(256, 0.001 / 255)
    p[65] = 0.999
    f = np.diff(probs_to_cumfreqs(normalize(p)))
    assert f.min() == 1
    assert f.sum() == FREQ_SCALE
    assert f[65] == FREQ_SCALE - 255


def test_cumfreqs_random_tables_valid(rng):
    for _ in range(200):
        alpha = rng.choice([0.01, 0.1, 1.0])
        p = normalize(rng.dirichlet(np.full(256, alpha)))
        cum = probs_to_cumfreqs(p)
        assert cum.shape == (257,)
        assert cum[0] == 0 and cum[-1] == FREQ_SCALE
        assert (np.diff(cum) >= 1).all()


def test_mix_is_convex():
    a = uniform()
    b = np.zeros(256)
    b[7] = 1.0
    m = mix(a, b, 0.25)
    assert m.sum() == pytest.approx(1.0)
    assert m[7] == pytest.approx(0.75 / 256 + 0.25)


def test_code_lengths():
    u = uniform()
    assert code_length(u, 3) == pytest.approx(8.0)
    assert quantized_code_length(probs_to_cumfreqs(u), 200) == pytest.approx(8.0)
    assert entropy(u) == pytest.approx(8.0)
    assert cross_entropy(u, u) == pytest.approx(entropy(u))


def test_quantization_overhead_nonnegative(rng):
    for _ in range(50):
        p = normalize(rng.dirichlet(np.full(256, 0.05)))
        assert quantization_overhead(p) >= -1e-9
    assert quantization_overhead(uniform()) == pytest.approx(0.0, abs=1e-12)


def test_entropy_gap():
    assert entropy_gap(0, 0.0) == pytest.approx(8.0)
    assert entropy_gap(128, 4.0) == pytest.approx(2.0)
    assert entropy_gap(10_000, 2.0) < 0.1


def test_prediction_meta_noise_level():
    assert PredictionMeta().order == -1
    assert PredictionMeta(confidence=128.0, order=3).noise_level == pytest.approx(0.5)
    assert PredictionMeta(confidence=8192.0 - 128.0, order=4).noise_level == pytest.approx(128 / 8192)
    assert math.isclose(PredictionMeta(0.0).noise_level, 1.0)


def test_quantization_holds_on_many_tables(rng):
    alphas = rng.choice([0.01, 0.05, 0.5, 5.0], size=10_000)
    for a in alphas:
        f = np.diff(probs_to_cumfreqs(normalize(rng.dirichlet(np.full(256, a)))))
        assert f.sum() == FREQ_SCALE and f.min() == 1
