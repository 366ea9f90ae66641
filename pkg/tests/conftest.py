import numpy as np
import pytest

from wheq import quantize_channel, save_image


def synth_scene(rng, height=128, width=128):
    """Smooth multi-scale test scene as a float field in [0, 1].

    Low-frequency waves plus a few Gaussian blobs and fine texture, spanning
    the full range; a stand-in for natural photographic content.
    """
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    y /= height
    x /= width
    field = np.zeros((height, width))
    for _ in range(5):
        fx, fy = rng.uniform(-3.0, 3.0, size=2)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        amp = rng.uniform(0.3, 1.0)
        field += amp * np.cos(2.0 * np.pi * (fx * x + fy * y) + phase)
    for _ in range(int(rng.integers(2, 5))):
        cx, cy = rng.uniform(0.1, 0.9, size=2)
        sigma = rng.uniform(0.05, 0.25)
        amp = rng.uniform(-1.5, 1.5)
        field += amp * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * sigma ** 2))
    field += rng.normal(0.0, 0.03, size=field.shape)
    lo, hi = field.min(), field.max()
    return (field - lo) / (hi - lo)


def synth_rgb(rng, height=128, width=128):
    """Synthetic color image: correlated channels over one scene."""
    unit = synth_scene(rng, height, width)
    img = np.empty((height, width, 3), dtype=np.uint8)
    for c in range(3):
        gain = rng.uniform(0.7, 1.0)
        bias = rng.uniform(0.0, 0.2)
        img[..., c] = quantize_channel(np.clip(unit * gain + bias, 0.0, 1.0))
    return img


def synth_plane(rng, height=128, width=128):
    return quantize_channel(synth_scene(rng, height, width))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    """Directory of 12 synthetic scenes saved as PNG, for harness runs."""
    rng = np.random.default_rng(7121)
    root = tmp_path_factory.mktemp("corpus")
    for k in range(12):
        save_image(root / f"scene{k:02d}.png", synth_rgb(rng))
    return root
