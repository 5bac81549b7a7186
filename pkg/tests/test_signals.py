import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fbff.signals import (
    FilterBank,
    Signal,
    analysis_apply,
    bank_from_json,
    bank_to_json,
    circ_convolve,
    downsample,
    inner,
    involution,
    modulate,
    periodize,
    signal_from_json,
    signal_to_json,
    synthesis_apply,
    translate,
    upsample,
)

S3 = np.sqrt(3.0)


def _random_signal(rng, period):
    return Signal(rng.standard_normal(period) + 1j * rng.standard_normal(period))


def _mercedes_bank(inner_period):
    # 3-channel, 2-downsampled constant bank with projection channels
    p = 2 * inner_period
    phi0 = Signal.delta(0, p)
    phi1 = 0.5 * (-Signal.delta(0, p) + S3 * Signal.delta(1, p))
    phi2 = 0.5 * (-Signal.delta(0, p) - S3 * Signal.delta(1, p))
    return FilterBank((phi0, phi1, phi2), 2)


def test_convolve_with_delta_is_identity():
    rng = np.random.default_rng(0)
    x = _random_signal(rng, 6)
    assert circ_convolve(x, Signal.delta(0, 6)) == x


def test_convolve_shifts_compose():
    assert circ_convolve(Signal.delta(1, 4), Signal.delta(1, 4)) == Signal.delta(2, 4)


def test_convolution_theorem_oracle():
    rng = np.random.default_rng(1)
    x = _random_signal(rng, 8)
    h = _random_signal(rng, 8)
    lhs = np.fft.fft(circ_convolve(x, h).samples)
    rhs = np.fft.fft(x.samples) * np.fft.fft(h.samples)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_convolve_period_mismatch():
    with pytest.raises(ValueError):
        circ_convolve(Signal.zero(4), Signal.zero(6))


def test_upsample_delta():
    assert upsample(Signal.delta(0, 3), 2) == Signal.delta(0, 6)


def test_upsample_by_definition():
    assert upsample(Signal([1, 2]), 2) == Signal([1, 0, 2, 0])


def test_upsample_preserves_norm():
    rng = np.random.default_rng(2)
    y = _random_signal(rng, 5)
    assert upsample(y, 3).norm() == pytest.approx(y.norm(), abs=1e-12)


def test_downsample_inverts_upsample():
    rng = np.random.default_rng(3)
    y = _random_signal(rng, 5)
    assert downsample(upsample(y, 4), 4) == y


def test_downsample_by_definition():
    assert downsample(Signal([1, 2, 3, 4]), 2) == Signal([1, 3])


def test_downsample_matches_indexing_oracle():
    rng = np.random.default_rng(4)
    x = _random_signal(rng, 12)
    expected = np.array([x.samples[3 * p] for p in range(4)])
    np.testing.assert_array_equal(downsample(x, 3).samples, expected)


def test_downsample_requires_divisor():
    with pytest.raises(ValueError):
        downsample(Signal.zero(5), 2)


def test_translate_trivials():
    rng = np.random.default_rng(5)
    x = _random_signal(rng, 8)
    assert translate(x, 0) == x
    assert translate(Signal.delta(0, 8), 3) == Signal.delta(3, 8)


def test_translate_group_law():
    rng = np.random.default_rng(6)
    x = _random_signal(rng, 9)
    assert translate(translate(x, 2), 5) == translate(x, 7)


def test_modulate_trivials():
    rng = np.random.default_rng(7)
    x = _random_signal(rng, 8)
    assert modulate(x, 0) == x
    np.testing.assert_allclose(
        modulate(Signal.delta(0, 8), 3).samples, Signal.delta(0, 8).samples
    )
    np.testing.assert_allclose(
        np.abs(modulate(x, 5).samples), np.abs(x.samples), atol=1e-14
    )


def test_involution_involutive():
    rng = np.random.default_rng(8)
    x = _random_signal(rng, 7)
    assert involution(involution(x)) == x


def test_involution_of_delta():
    assert involution(Signal.delta(2, 5)) == Signal.delta(-2, 5)


def test_involution_turns_convolution_into_correlation():
    # <x, T^k phi> equals (involution(phi) * x)[k]
    rng = np.random.default_rng(9)
    x = _random_signal(rng, 8)
    phi = _random_signal(rng, 8)
    conv = circ_convolve(involution(phi), x)
    for k in range(8):
        direct = inner(x, translate(phi, k))
        assert conv.samples[k] == pytest.approx(direct, abs=1e-12)


def test_synthesis_zero_inputs():
    fb = _mercedes_bank(3)
    out = synthesis_apply(fb, [Signal.zero(3)] * 3)
    assert out == Signal.zero(6)


def test_synthesis_single_delta_channel_upsamples():
    fb = FilterBank((Signal.delta(0, 8),), 2)
    rng = np.random.default_rng(10)
    y = _random_signal(rng, 4)
    assert synthesis_apply(fb, [y]) == upsample(y, 2)


def test_synthesis_analysis_adjoint_identity():
    rng = np.random.default_rng(11)
    fb = FilterBank(tuple(_random_signal(rng, 12) for _ in range(4)), 3)
    ys = [_random_signal(rng, 4) for _ in range(4)]
    x = _random_signal(rng, 12)
    lhs = inner(synthesis_apply(fb, ys), x)
    channels = analysis_apply(fb, x)
    rhs = sum(inner(y, c) for y, c in zip(ys, channels))
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_analysis_zero():
    fb = _mercedes_bank(2)
    for c in analysis_apply(fb, Signal.zero(4)):
        assert c == Signal.zero(2)


def test_analysis_samples_are_frame_coefficients():
    rng = np.random.default_rng(12)
    fb = FilterBank(tuple(_random_signal(rng, 10) for _ in range(3)), 2)
    x = _random_signal(rng, 10)
    channels = analysis_apply(fb, x)
    for phi, c in zip(fb.filters, channels):
        for p in range(5):
            assert c.samples[p] == pytest.approx(
                inner(x, translate(phi, 2 * p)), abs=1e-12
            )


def test_tight_bank_round_trip_scales_by_bound():
    fb = _mercedes_bank(4)
    rng = np.random.default_rng(13)
    x = _random_signal(rng, 8)
    back = synthesis_apply(fb, analysis_apply(fb, x))
    np.testing.assert_allclose(back.samples, 1.5 * x.samples, atol=1e-10)


def test_tight_bank_analysis_energy():
    fb = _mercedes_bank(4)
    rng = np.random.default_rng(14)
    x = _random_signal(rng, 8)
    energy = sum(c.norm() ** 2 for c in analysis_apply(fb, x))
    assert energy == pytest.approx(1.5 * x.norm() ** 2, rel=1e-9)


def test_upsample_convolution_commutation():
    # phi * up(psi * y) == (phi * up(psi)) * up(y)
    rng = np.random.default_rng(15)
    m = 2
    phi = _random_signal(rng, 12)
    psi = _random_signal(rng, 6)
    y = _random_signal(rng, 6)
    lhs = circ_convolve(phi, upsample(circ_convolve(psi, y), m))
    rhs = circ_convolve(circ_convolve(phi, upsample(psi, m)), upsample(y, m))
    np.testing.assert_allclose(lhs.samples, rhs.samples, atol=1e-10)


def test_periodize_identity():
    rng = np.random.default_rng(16)
    x = _random_signal(rng, 8)
    assert periodize(x, 8) == x


def test_periodize_folds():
    x = Signal.delta(0, 8) + Signal.delta(4, 8)
    assert periodize(x, 4) == Signal([2, 0, 0, 0])


def test_periodize_requires_divisor():
    with pytest.raises(ValueError):
        periodize(Signal.zero(9), 4)


def test_filterbank_validation():
    with pytest.raises(ValueError):
        FilterBank((), 2)
    with pytest.raises(ValueError):
        FilterBank((Signal.zero(4), Signal.zero(6)), 2)
    with pytest.raises(ValueError):
        FilterBank((Signal.zero(5),), 2)
    with pytest.raises(ValueError):
        synthesis_apply(_mercedes_bank(2), [Signal.zero(2)] * 2)
    with pytest.raises(ValueError):
        analysis_apply(_mercedes_bank(2), Signal.zero(6))


def test_signal_json_round_trip():
    rng = np.random.default_rng(17)
    x = _random_signal(rng, 6)
    again = signal_from_json(json.loads(json.dumps(signal_to_json(x))))
    assert again == x


def test_bank_json_round_trip():
    fb = _mercedes_bank(3)
    again = bank_from_json(json.loads(json.dumps(bank_to_json(fb))))
    assert again.downsample == fb.downsample
    assert all(a == b for a, b in zip(again.filters, fb.filters))


def test_bank_json_validates_inner_period():
    obj = bank_to_json(_mercedes_bank(3))
    obj["inner_period"] = 5
    with pytest.raises(ValueError):
        bank_from_json(obj)


@given(
    st.lists(st.floats(min_value=-5, max_value=5, allow_nan=False), min_size=2, max_size=12),
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=-20, max_value=20),
)
def test_translate_group_property(samples, j, k):
    x = Signal(samples)
    assert translate(translate(x, j), k) == translate(x, j + k)
