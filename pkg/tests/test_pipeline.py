import numpy as np
import pytest

from wheq import (
    EmeParams,
    EnhanceConfig,
    GammaGrid,
    compute_eme,
    compute_histogram,
    enhance_hsv,
    enhance_image,
    enhance_plane,
    hsv_to_rgb,
    optimize_gamma,
    quantize_channel,
    rgb_to_hsv,
    segment_cdf,
    segment_weights,
    split_pdf,
)
from wheq.threshold import find_threshold

from conftest import synth_plane, synth_rgb


def _optimizer_inputs(plane):
    hist = compute_histogram(plane)
    t = find_threshold(hist).t
    lower_pdf, upper_pdf = split_pdf(hist, t)
    weights = segment_weights(lower_pdf, upper_pdf, t)
    x0 = int(np.flatnonzero(hist)[0])
    return t, weights, segment_cdf(lower_pdf), segment_cdf(upper_pdf), x0


class TestOptimizeGamma:
    def test_singleton_grid(self, rng):
        plane = synth_plane(rng, 32, 32)
        gamma, curve, _, sweep = optimize_gamma(
            plane, *_optimizer_inputs(plane), grid=GammaGrid((0.5,)))
        assert gamma == 0.5
        assert curve.gamma == 0.5
        assert len(sweep) == 1

    def test_returned_score_is_sweep_max(self, rng):
        for _ in range(20):
            plane = synth_plane(rng, 32, 32)
            gamma, _, enhanced, sweep = optimize_gamma(plane, *_optimizer_inputs(plane))
            best = max(score for _, score in sweep)
            assert compute_eme(enhanced).value == best
            winners = [g for g, score in sweep if score == best]
            assert gamma == min(winners)

    def test_tie_breaks_to_smallest_gamma(self):
        # Fully occupied histogram: omega=1 so every gamma yields the same
        # curve; the first grid entry must win.
        plane = np.arange(256, dtype=np.uint8).reshape(16, 16)
        gamma, _, _, sweep = optimize_gamma(
            plane, *_optimizer_inputs(plane), grid=GammaGrid((0.3, 0.6)))
        assert sweep[0][1] == sweep[1][1]
        assert gamma == 0.3


class TestEnhancePlane:
    def test_constant_plane_falls_back(self):
        plane = np.full((16, 16), 80, dtype=np.uint8)
        out, report = enhance_plane(plane)
        assert report.fallback
        assert np.array_equal(out, plane)
        assert report.eme_after == report.eme_before

    def test_ramp_image_report_complete(self):
        plane = np.arange(256, dtype=np.uint8).reshape(16, 16)
        out, report = enhance_plane(plane)
        assert not report.fallback
        assert out.shape == plane.shape
        assert np.all(np.diff(report.curve.lut.astype(int)) >= 0)
        assert report.gamma in (g for g, _ in report.sweep)
        assert report.threshold is not None and report.x0 == 0
        assert report.eme_after == max(s for _, s in report.sweep)

    def test_argmax_dominates_unity_gamma(self, rng):
        for _ in range(10):
            plane = synth_plane(rng, 48, 48)
            _, report = enhance_plane(plane)
            unity = [s for g, s in report.sweep if g == 1.0]
            assert unity and report.eme_after >= unity[0]

    def test_histogram_total_preserved(self, rng):
        plane = synth_plane(rng, 40, 40)
        out, _ = enhance_plane(plane)
        assert compute_histogram(out).sum() == plane.size


class TestEnhanceImage:
    def test_grayscale_s_falls_back(self, rng):
        gray = synth_plane(rng, 64, 64)
        img = np.repeat(gray[:, :, None], 3, axis=2)
        _, report = enhance_image(img, EnhanceConfig(channels="sv"))
        assert report.channels["s"].fallback
        assert not report.channels["v"].fallback

    def test_pure_hue_image_passthrough(self):
        # Constant s and v: both planes fall back, so the output equals the
        # input and hue is trivially untouched.
        h = np.linspace(0.0, 350.0, 64 * 64).reshape(64, 64)
        hsv = np.stack([h, np.ones_like(h), np.ones_like(h)], axis=-1)
        img = hsv_to_rgb(hsv)
        out, report = enhance_image(img)
        assert all(rep.fallback for rep in report.channels.values())
        assert np.array_equal(out, img)

    def test_hue_plane_bit_identical(self, rng):
        hsv = rgb_to_hsv(synth_rgb(rng, 64, 64))
        out_hsv, reports = enhance_hsv(hsv)
        assert np.array_equal(out_hsv[..., 0], hsv[..., 0])
        assert not reports["v"].fallback

    def test_v_only_leaves_saturation(self, rng):
        hsv = rgb_to_hsv(synth_rgb(rng, 64, 64))
        out_hsv, reports = enhance_hsv(hsv, EnhanceConfig(channels="v"))
        assert set(reports) == {"v"}
        assert np.array_equal(out_hsv[..., 1], hsv[..., 1])

    def test_low_contrast_gains_eme(self, rng):
        from wheq import contrast_distort
        v = contrast_distort(synth_plane(rng, 96, 96), "heavy")
        _, report = enhance_plane(v)
        assert report.eme_after > report.eme_before

    def test_deterministic(self, rng):
        img = synth_rgb(rng, 48, 48)
        out1, rep1 = enhance_image(img)
        out2, rep2 = enhance_image(img)
        assert np.array_equal(out1, out2)
        assert rep1.channels["v"].sweep == rep2.channels["v"].sweep

    def test_rerun_on_output_is_well_formed(self, rng):
        img = synth_rgb(rng, 48, 48)
        out, _ = enhance_image(img)
        again, report = enhance_image(out)
        assert again.shape == img.shape
        assert set(report.channels) == {"v", "s"}

    def test_one_pixel_image(self):
        img = np.array([[[9, 200, 40]]], dtype=np.uint8)
        out, report = enhance_image(img)
        assert np.array_equal(out, img)
        assert all(rep.fallback for rep in report.channels.values())


class TestConfig:
    def test_gamma_grid_validation(self):
        with pytest.raises(ValueError):
            GammaGrid(())
        with pytest.raises(ValueError):
            GammaGrid((0.5, 0.5))
        with pytest.raises(ValueError):
            GammaGrid((0.0, 1.0))
        with pytest.raises(ValueError):
            GammaGrid((0.5, 1.2))

    def test_channel_policy_validation(self):
        with pytest.raises(ValueError):
            EnhanceConfig(channels="hsv")

    def test_custom_eme_params_flow_through(self, rng):
        plane = synth_plane(rng, 32, 32)
        cfg = EnhanceConfig(eme=EmeParams(block_w=4, block_h=4))
        _, report = enhance_plane(plane, cfg)
        assert report.eme_before == compute_eme(plane, cfg.eme).value
