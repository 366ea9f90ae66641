"""Image I/O, RGB/HSV conversion, and channel quantization.

Images are plain numpy arrays:

* RGB image  -- uint8 array of shape (height, width, 3)
* HSV image  -- float64 array of shape (height, width, 3) holding
  (hue in degrees [0, 360), saturation [0, 1], value [0, 1])
* plane      -- integer array of shape (height, width) with values in
  [0, LEVELS - 1]

All functions are pure: inputs are never modified in place, so images can be
processed concurrently without locking.
"""

from __future__ import annotations

import io
import re
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptImageError, UnsupportedFormatError

LEVELS = 256

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def round_half_up(values):
    """Round non-negative values half away from zero.

    The single rounding convention used across the library, so lookup tables
    come out identical on every platform (numpy's own round() ties to even).
    Only valid for values >= -0.5.
    """
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def _require_rgb(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) RGB array, got shape {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    if img.dtype != np.uint8:
        raise ValueError(f"expected uint8 RGB data, got {img.dtype}")
    return img


# ---------------------------------------------------------------------------
# Loading / saving: PNG (8-bit), PPM P6, PGM P5
# ---------------------------------------------------------------------------

def load_image(path) -> np.ndarray:
    """Decode a PNG / PPM(P6) / PGM(P5) file to a (H, W, 3) uint8 array.

    Grayscale inputs are replicated to three channels so the rest of the
    pipeline only ever sees RGB. The format is detected from the file's
    magic bytes, not its extension.

    Raises FileNotFoundError, UnsupportedFormatError, or CorruptImageError.
    """
    data = Path(path).read_bytes()
    if data.startswith(_PNG_SIGNATURE):
        return _decode_png(data, path)
    if data[:2] in (b"P5", b"P6"):
        return _decode_pnm(data, path)
    raise UnsupportedFormatError(f"{path}: not a PNG, PPM(P6), or PGM(P5) file")


def _decode_png(data: bytes, path) -> np.ndarray:
    # IHDR bit-depth byte sits at offset 24; 16-bit imagery is out of scope.
    if len(data) > 24 and data[24] == 16:
        raise UnsupportedFormatError(f"{path}: 16-bit PNG is not supported")
    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            if im.mode != "RGB":
                im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise CorruptImageError(f"{path}: undecodable PNG ({exc})") from exc
    return arr


def _decode_pnm(data: bytes, path) -> np.ndarray:
    magic = data[:2]
    tokens, offset = _pnm_header_tokens(data, path)
    width, height, maxval = tokens
    if width < 1 or height < 1:
        raise CorruptImageError(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedFormatError(f"{path}: maxval {maxval} unsupported (must be 255)")
    channels = 3 if magic == b"P6" else 1
    need = width * height * channels
    payload = data[offset:offset + need]
    if len(payload) < need:
        raise CorruptImageError(f"{path}: truncated pixel data ({len(payload)} of {need} bytes)")
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, channels)
    if channels == 1:
        arr = np.repeat(arr, 3, axis=2)
    return arr.copy()


def _pnm_header_tokens(data: bytes, path):
    """Parse width/height/maxval after the magic, honoring '#' comments."""
    pos = 2
    values = []
    while len(values) < 3:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            eol = data.find(b"\n", pos)
            if eol == -1:
                raise CorruptImageError(f"{path}: unterminated header comment")
            pos = eol + 1
            continue
        match = re.match(rb"\d+", data[pos:pos + 32])
        if not match:
            raise CorruptImageError(f"{path}: malformed header")
        values.append(int(match.group()))
        pos += match.end()
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise CorruptImageError(f"{path}: missing whitespace after header")
    return values, pos + 1


def save_image(path, img: np.ndarray) -> None:
    """Write an RGB image as PNG, PPM(P6), or PGM(P5) based on extension.

    The written file round-trips bit-exact through load_image. PGM can only
    hold grayscale, so saving a color image as .pgm raises
    UnsupportedFormatError rather than silently dropping channels.
    """
    img = _require_rgb(img)
    suffix = Path(path).suffix.lower()
    if suffix == ".png":
        with open(path, "wb") as fh:
            Image.fromarray(img, mode="RGB").save(fh, format="PNG")
    elif suffix == ".ppm":
        header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
        with open(path, "wb") as fh:
            fh.write(header + img.tobytes())
    elif suffix == ".pgm":
        if not (np.array_equal(img[..., 0], img[..., 1])
                and np.array_equal(img[..., 0], img[..., 2])):
            raise UnsupportedFormatError(f"{path}: cannot save color image as PGM")
        header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
        with open(path, "wb") as fh:
            fh.write(header + img[..., 0].tobytes())
    else:
        raise UnsupportedFormatError(f"{path}: unsupported extension {suffix!r}")


# ---------------------------------------------------------------------------
# RGB <-> HSV (hexcone model)
# ---------------------------------------------------------------------------

def rgb_to_hsv(img: np.ndarray) -> np.ndarray:
    """Convert uint8 RGB to float HSV (h in degrees, s and v in [0, 1]).

    Hexcone model: v = max(r, g, b); s = 0 whenever v = 0; h = 0 for
    achromatic pixels by convention.
    """
    img = _require_rgb(img)
    rgb = img.astype(np.float64) / 255.0
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]

    v = rgb.max(axis=-1)
    mn = rgb.min(axis=-1)
    delta = v - mn

    s = np.zeros_like(v)
    np.divide(delta, v, out=s, where=v > 0)

    safe = np.where(delta > 0, delta, 1.0)
    h = np.select(
        [delta == 0, v == r, v == g],
        [0.0, 60.0 * (g - b) / safe, 60.0 * (b - r) / safe + 120.0],
        default=60.0 * (r - g) / safe + 240.0,
    )
    h = np.mod(h, 360.0)
    return np.stack([h, s, v], axis=-1)


def hsv_to_rgb(hsv: np.ndarray) -> np.ndarray:
    """Convert float HSV (degrees, [0,1], [0,1]) back to uint8 RGB.

    Inverse of rgb_to_hsv up to 8-bit quantization: a full round trip moves
    each channel by at most one level.
    """
    hsv = np.asarray(hsv, dtype=np.float64)
    if hsv.ndim != 3 or hsv.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) HSV array, got shape {hsv.shape}")
    h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]

    h6 = np.mod(h, 360.0) / 60.0
    sector = np.floor(h6)
    f = h6 - sector
    sector = sector.astype(np.int64) % 6

    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    conds = [sector == k for k in range(6)]
    r = np.select(conds, [v, q, p, p, t, v])
    g = np.select(conds, [t, v, v, q, p, p])
    b = np.select(conds, [p, p, t, v, v, q])

    rgb = np.stack([r, g, b], axis=-1)
    out = round_half_up(rgb * 255.0)
    return np.clip(out, 0, 255).astype(np.uint8)


# ---------------------------------------------------------------------------
# Quantization between float channels and integer planes
# ---------------------------------------------------------------------------

def quantize_channel(values: np.ndarray, levels: int = LEVELS) -> np.ndarray:
    """Map fractions in [0, 1] to integer levels 0..levels-1.

    x = round(value * (levels - 1)), half away from zero, clamped.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise ValueError("channel values must lie in [0, 1]")
    x = round_half_up(values * (levels - 1))
    return np.clip(x, 0, levels - 1).astype(np.uint8 if levels <= 256 else np.int64)


def dequantize_channel(plane: np.ndarray, levels: int = LEVELS) -> np.ndarray:
    """Map integer levels back to fractions x / (levels - 1).

    quantize_channel(dequantize_channel(p)) == p exactly, for every level.
    """
    plane = np.asarray(plane)
    return plane.astype(np.float64) / (levels - 1)
