"""Field model tests: config validation, scatterer statistics, synthesis
equivalence, modal noise, serialization round trips."""

import math

import numpy as np
import pytest

from wavedof.channel import (
    ChannelConfig,
    FieldSamples,
    ModalSpectrum,
    ScattererSet,
    make_scatterers,
    modal_coefficients,
    modal_truncation_order,
    noise_modal_coefficient,
    received_order_spectrum,
    symmetric_orders,
    synth_field_circle,
    synth_field_modal,
    synth_field_planewave,
)
from wavedof.specfun import bessel_j

SEED = 4151


def base_cfg(**kw):
    d = dict(f0=2.4e9, half_bw=0.5e9, radius=0.1, obs_time=0.0, wave_speed=3e8)
    d.update(kw)
    return ChannelConfig(**d)


class TestChannelConfig:
    def test_band_properties(self):
        cfg = base_cfg()
        assert cfg.band_low == 1.9e9
        assert cfg.band_high == 2.9e9
        assert cfg.k_max == pytest.approx(2.0 * math.pi * 2.9e9 / 3e8, rel=1e-15)

    def test_invalid_band(self):
        with pytest.raises(ValueError, match="band"):
            base_cfg(f0=1e9, half_bw=1.5e9)
        with pytest.raises(ValueError, match="band"):
            base_cfg(half_bw=0.0)

    @pytest.mark.parametrize(
        "field,value",
        [
            ("radius", -0.1),
            ("obs_time", -1e-9),
            ("wave_speed", 0.0),
            ("noise_var", -1.0),
            ("p_max", -0.5),
            ("gamma", 0.0),
        ],
    )
    def test_invalid_fields(self, field, value):
        with pytest.raises(ValueError, match=field):
            base_cfg(**{field: value})

    def test_degenerate_zeros_accepted(self):
        base_cfg(radius=0.0)
        base_cfg(noise_var=0.0)
        base_cfg(p_max=0.0)
        base_cfg(obs_time=0.0)

    def test_dict_round_trip(self):
        cfg = base_cfg(gamma=2.5, p_max=3.0)
        assert ChannelConfig.from_dict(cfg.to_dict()) == cfg


class TestMakeScatterers:
    def test_deterministic(self):
        cfg = base_cfg()
        a = make_scatterers(cfg, 20, 5, seed=SEED)
        b = make_scatterers(cfg, 20, 5, seed=SEED)
        assert np.array_equal(a.angles, b.angles)
        assert np.array_equal(a.gains, b.gains)
        c = make_scatterers(cfg, 20, 5, seed=SEED + 1)
        assert not np.array_equal(a.gains, c.gains)

    def test_gain_power_normalization(self):
        # total ensemble power is p_max; each quadrature part of a gain
        # carries p_max / (2 J)
        cfg = base_cfg(p_max=2.0)
        s = make_scatterers(cfg, 10_000, 4, seed=SEED)
        target = cfg.p_max / (2 * 10_000)
        assert np.var(s.gains.real) == pytest.approx(target, rel=0.05)
        assert np.var(s.gains.imag) == pytest.approx(target, rel=0.05)

    def test_angle_range_and_grid(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 50, 6, seed=SEED)
        assert np.all((s.angles >= 0.0) & (s.angles < 2.0 * math.pi))
        assert s.freq_grid[0] == cfg.band_low
        assert s.freq_grid[-1] == cfg.band_high
        assert s.freq_grid.size == 6

    def test_freq_span_override(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 5, 4, seed=SEED, freq_span=(1e8, 3e9))
        assert s.freq_grid[0] == 1e8
        assert s.freq_grid[-1] == 3e9

    def test_validation(self):
        cfg = base_cfg()
        with pytest.raises(ValueError):
            make_scatterers(cfg, 0, 4, seed=SEED)
        with pytest.raises(ValueError):
            make_scatterers(cfg, 5, 1, seed=SEED)
        with pytest.raises(ValueError):
            make_scatterers(cfg, 5, 4, seed=SEED, freq_span=(2e9, 1e9))


class TestModalCoefficients:
    def test_shape_and_orders(self):
        s = make_scatterers(base_cfg(), 10, 3, seed=SEED)
        ms = modal_coefficients(s, 4)
        assert np.array_equal(ms.orders, np.arange(-4, 5))
        assert ms.coeffs.shape == (9, 3)
        assert ms.n_max == 4

    def test_conjugate_pairing_for_real_gains(self):
        # real gain profile makes the angular density real, so the modal
        # transform is Hermitian in the order index
        rng = np.random.default_rng(SEED)
        s = ScattererSet(
            angles=rng.uniform(0, 2 * math.pi, 12),
            gains=rng.standard_normal((12, 4)).astype(complex),
            freq_grid=np.linspace(1e9, 2e9, 4),
        )
        ms = modal_coefficients(s, 6)
        for n in range(1, 7):
            assert np.allclose(ms.order_row(-n), np.conj(ms.order_row(n)), rtol=0, atol=1e-13)

    def test_order_zero_is_plain_sum(self):
        s = make_scatterers(base_cfg(), 15, 3, seed=SEED)
        ms = modal_coefficients(s, 2)
        assert np.allclose(ms.order_row(0), s.gains.sum(axis=0), rtol=1e-13)

    def test_order_row_range(self):
        s = make_scatterers(base_cfg(), 5, 3, seed=SEED)
        ms = modal_coefficients(s, 2)
        with pytest.raises(ValueError):
            ms.order_row(3)

    def test_negative_n_max(self):
        s = make_scatterers(base_cfg(), 5, 3, seed=SEED)
        with pytest.raises(ValueError):
            modal_coefficients(s, -1)


class TestFieldSynthesis:
    def test_single_scatterer_closed_form(self):
        cfg = base_cfg()
        s = ScattererSet(
            angles=np.array([0.7]),
            gains=np.array([[1.5 - 0.25j, 0.5 + 1.0j]]),
            freq_grid=np.array([2.0e9, 2.5e9]),
        )
        omega = 2 * math.pi * 2.5e9
        r, phi = 0.06, 1.9
        k = omega / cfg.wave_speed
        expect = (0.5 + 1.0j) * np.exp(1j * k * r * math.cos(phi - 0.7))
        assert synth_field_planewave(s, cfg, (r, phi), omega) == pytest.approx(expect, rel=1e-14)

    def test_modal_matches_planewave(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 25, 5, seed=SEED)
        ms = modal_coefficients(s, modal_truncation_order(cfg))
        rng = np.random.default_rng(SEED + 9)
        for _ in range(10):
            r = float(rng.uniform(0, cfg.radius))
            phi = float(rng.uniform(0, 2 * math.pi))
            omega = 2 * math.pi * float(s.freq_grid[rng.integers(0, 5)])
            a = synth_field_planewave(s, cfg, (r, phi), omega)
            b = synth_field_modal(ms, cfg, (r, phi), omega)
            assert b == pytest.approx(a, rel=1e-10, abs=1e-12)

    def test_center_value_is_order_zero(self):
        # at r = 0 only J_0 survives
        cfg = base_cfg()
        s = make_scatterers(cfg, 12, 3, seed=SEED)
        ms = modal_coefficients(s, 5)
        omega = 2 * math.pi * float(s.freq_grid[1])
        v = synth_field_modal(ms, cfg, (0.0, 0.3), omega)
        assert v == pytest.approx(complex(ms.order_row(0)[1]), rel=1e-14)

    def test_position_outside_disk(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 5, 3, seed=SEED)
        ms = modal_coefficients(s, 3)
        omega = 2 * math.pi * float(s.freq_grid[0])
        with pytest.raises(ValueError, match="radius"):
            synth_field_planewave(s, cfg, (0.2, 0.0), omega)
        with pytest.raises(ValueError, match="radius"):
            synth_field_modal(ms, cfg, (0.2, 0.0), omega)

    def test_off_grid_frequency(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 5, 3, seed=SEED)
        with pytest.raises(ValueError, match="grid"):
            synth_field_planewave(s, cfg, (0.05, 0.0), 2 * math.pi * 2.123e9)

    def test_undertruncated_modal_sum_warns(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 5, 3, seed=SEED)
        ms = modal_coefficients(s, 2)
        omega = 2 * math.pi * float(s.freq_grid[-1])
        with pytest.warns(RuntimeWarning, match="truncation"):
            synth_field_modal(ms, cfg, (cfg.radius, 0.0), omega)

    def test_truncation_order_rule(self):
        cfg = base_cfg()
        expect = math.ceil(math.e * cfg.k_max * cfg.radius / 2.0) + 12
        assert modal_truncation_order(cfg) == expect
        assert modal_truncation_order(cfg, r=0.0) == 12
        assert modal_truncation_order(base_cfg(radius=0.2)) > modal_truncation_order(cfg)


class TestModalNoise:
    def test_zero_noise_var(self):
        cfg = base_cfg(noise_var=0.0)
        nu = noise_modal_coefficient(cfg, 4, 32, seed=SEED)
        assert np.array_equal(nu, np.zeros(9, dtype=complex))

    def test_deterministic(self):
        cfg = base_cfg()
        a = noise_modal_coefficient(cfg, 4, 32, seed=SEED)
        b = noise_modal_coefficient(cfg, 4, 32, seed=SEED)
        assert np.array_equal(a, b)

    def test_aliasing_guard(self):
        cfg = base_cfg()
        with pytest.raises(ValueError, match="alias"):
            noise_modal_coefficient(cfg, 16, 32, seed=SEED)
        noise_modal_coefficient(cfg, 15, 32, seed=SEED)

    def test_second_moment(self):
        # E|nu_n|^2 = 2 pi noise_var independent of order
        cfg = base_cfg(noise_var=0.7)
        target = 2 * math.pi * 0.7
        draws = np.array([noise_modal_coefficient(cfg, 3, 16, seed=SEED + k) for k in range(2500)])
        for col in range(7):
            est = np.mean(np.abs(draws[:, col]) ** 2)
            se = np.std(np.abs(draws[:, col]) ** 2) / math.sqrt(2500)
            assert abs(est - target) < 5 * se

    def test_symmetric_orders_helper(self):
        assert np.array_equal(symmetric_orders(2), [-2, -1, 0, 1, 2])
        assert np.array_equal(symmetric_orders(0), [0])


class TestReceivedSpectrum:
    def test_noiseless_is_alpha_times_bessel(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 10, 4, seed=SEED)
        ms = modal_coefficients(s, 3)
        for n in (-3, 0, 2):
            got = received_order_spectrum(ms, cfg, n)
            sign = -1.0 if (n < 0 and n % 2) else 1.0
            jn = np.array(
                [sign * bessel_j(abs(n), 2 * math.pi * f * cfg.radius / cfg.wave_speed) for f in s.freq_grid]
            )
            assert np.allclose(got, ms.order_row(n) * jn, rtol=1e-12)

    def test_noise_requires_seed(self):
        cfg = base_cfg()
        ms = modal_coefficients(make_scatterers(cfg, 5, 3, seed=SEED), 2)
        with pytest.raises(ValueError, match="seed"):
            received_order_spectrum(ms, cfg, 0, with_noise=True)

    def test_noise_deterministic(self):
        cfg = base_cfg()
        ms = modal_coefficients(make_scatterers(cfg, 5, 3, seed=SEED), 2)
        a = received_order_spectrum(ms, cfg, 1, with_noise=True, seed=11)
        b = received_order_spectrum(ms, cfg, 1, with_noise=True, seed=11)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, received_order_spectrum(ms, cfg, 1))


class TestFieldCircle:
    def test_matches_pointwise_synthesis(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 8, 3, seed=SEED)
        omega = 2 * math.pi * float(s.freq_grid[2])
        fs = synth_field_circle(s, cfg, 16, omega)
        assert not fs.noise_included
        for p in range(16):
            r, phi = fs.positions[p]
            assert complex(fs.values[p, 0]) == pytest.approx(
                synth_field_planewave(s, cfg, (r, phi), omega), rel=1e-12
            )

    def test_noise_flag(self):
        cfg = base_cfg()
        s = make_scatterers(cfg, 8, 3, seed=SEED)
        omega = 2 * math.pi * float(s.freq_grid[0])
        fs = synth_field_circle(s, cfg, 16, omega, with_noise=True, seed=5)
        assert fs.noise_included
        with pytest.raises(ValueError, match="seed"):
            synth_field_circle(s, cfg, 16, omega, with_noise=True)


class TestSerialization:
    def test_scatterer_round_trip(self):
        s = make_scatterers(base_cfg(), 7, 3, seed=SEED)
        s2 = ScattererSet.from_json(s.to_json())
        assert np.array_equal(s.angles, s2.angles)
        assert np.array_equal(s.gains, s2.gains)
        assert np.array_equal(s.freq_grid, s2.freq_grid)

    def test_modal_round_trip(self):
        ms = modal_coefficients(make_scatterers(base_cfg(), 7, 3, seed=SEED), 4)
        ms2 = ModalSpectrum.from_json(ms.to_json())
        assert np.array_equal(ms.orders, ms2.orders)
        assert np.array_equal(ms.coeffs, ms2.coeffs)

    def test_scatterer_validation(self):
        with pytest.raises(ValueError):
            ScattererSet(angles=np.array([]), gains=np.zeros((0, 2)), freq_grid=np.array([1.0, 2.0]))
        with pytest.raises(ValueError, match="shape"):
            ScattererSet(angles=np.array([0.1]), gains=np.zeros((2, 2)), freq_grid=np.array([1.0, 2.0]))
        with pytest.raises(ValueError, match="increasing"):
            ScattererSet(angles=np.array([0.1]), gains=np.zeros((1, 2)), freq_grid=np.array([2.0, 1.0]))
        with pytest.raises(ValueError, match="finite"):
            ScattererSet(
                angles=np.array([0.1]),
                gains=np.array([[np.nan, 0.0]]),
                freq_grid=np.array([1.0, 2.0]),
            )

    def test_modal_validation(self):
        with pytest.raises(ValueError, match="symmetric"):
            ModalSpectrum(
                orders=np.array([0, 1]),
                coeffs=np.zeros((2, 2), dtype=complex),
                freq_grid=np.array([1.0, 2.0]),
            )

    def test_field_samples_validation(self):
        with pytest.raises(ValueError):
            FieldSamples(
                positions=np.zeros((3, 3)),
                freq_grid=np.array([1.0]),
                values=np.zeros((3, 1), dtype=complex),
            )
        with pytest.raises(ValueError):
            FieldSamples(
                positions=np.zeros((3, 2)),
                freq_grid=np.array([1.0, 2.0]),
                values=np.zeros((3, 1), dtype=complex),
            )
