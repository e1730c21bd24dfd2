"""Image decoding, pixel containers, and color-space conversions.

All brightness-like quantities stay on the 0-255 scale: HSV value is the max
channel and HSL lightness is (max+min)/2.  Hue is degrees in [0,360) and is
defined as 0 for achromatic pixels so downstream histograms are total.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, ImageFile

from .errors import CorruptStream, UnsupportedFormat

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_JPEG_MAGIC = b"\xff\xd8\xff"


@dataclass(frozen=True)
class Raster:
    """Decoded 8-bit RGB image; ``pixels`` is a read-only (h, w, 3) uint8 array."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("raster must be at least 1x1")
        if self.pixels.shape != (self.height, self.width, 3):
            raise ValueError(
                f"pixel buffer shape {self.pixels.shape} does not match "
                f"{self.height}x{self.width}x3"
            )
        if self.pixels.dtype != np.uint8:
            raise ValueError("pixels must be uint8")

    @property
    def pixel_count(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class HsvPixel:
    hue: float  # degrees in [0, 360)
    saturation: float  # fraction in [0, 1]
    value: float  # level in [0, 255]


@dataclass(frozen=True)
class HslPixel:
    hue: float  # degrees in [0, 360)
    saturation: float  # fraction in [0, 1]
    lightness: float  # level in [0, 255]


def raster_from_array(pixels: np.ndarray) -> Raster:
    """Wrap an (h, w, 3) uint8 array as an immutable Raster."""
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError("expected an (h, w, 3) array")
    pixels.setflags(write=False)
    return Raster(width=pixels.shape[1], height=pixels.shape[0], pixels=pixels)


def decode_image(data: bytes) -> Raster:
    """Decode a PNG or JPEG byte stream into a Raster.

    Alpha channels are dropped; decoding is deterministic.  Raises
    UnsupportedFormat for anything that is not a PNG/JPEG stream and
    CorruptStream when a recognized stream fails to decode fully.
    """
    if not (data.startswith(_PNG_MAGIC) or data.startswith(_JPEG_MAGIC)):
        raise UnsupportedFormat("only PNG and JPEG streams are supported")
    # refuse to silently patch up truncated files
    old_flag = ImageFile.LOAD_TRUNCATED_IMAGES
    ImageFile.LOAD_TRUNCATED_IMAGES = False
    try:
        with Image.open(io.BytesIO(data)) as img:
            rgb = img.convert("RGB")
            pixels = np.asarray(rgb, dtype=np.uint8)
    except UnsupportedFormat:
        raise
    except Exception as exc:
        raise CorruptStream(f"failed to decode image: {exc}") from exc
    finally:
        ImageFile.LOAD_TRUNCATED_IMAGES = old_flag
    return raster_from_array(pixels)


def load_image(path: str | Path) -> Raster:
    """Read and decode an image file."""
    return decode_image(Path(path).read_bytes())


def rgb_to_hsv(pixel: tuple[int, int, int]) -> HsvPixel:
    """Standard hexcone conversion of one RGB triple (channels in 0-255)."""
    r, g, b = (float(c) for c in pixel)
    _check_channels(r, g, b)
    mx = max(r, g, b)
    mn = min(r, g, b)
    c = mx - mn
    sat = 0.0 if mx == 0 else c / mx
    return HsvPixel(hue=_hue_degrees(r, g, b, mx, c), saturation=sat, value=mx)


def rgb_to_hsl(pixel: tuple[int, int, int]) -> HslPixel:
    """Standard bi-hexcone conversion of one RGB triple (channels in 0-255)."""
    r, g, b = (float(c) for c in pixel)
    _check_channels(r, g, b)
    mx = max(r, g, b)
    mn = min(r, g, b)
    c = mx - mn
    light = (mx + mn) / 2.0
    sat = 0.0 if c == 0 else c / (255.0 - abs(mx + mn - 255.0))
    return HslPixel(hue=_hue_degrees(r, g, b, mx, c), saturation=sat, lightness=light)


def _check_channels(r: float, g: float, b: float) -> None:
    for v in (r, g, b):
        if not 0 <= v <= 255:
            raise ValueError(f"channel value {v} outside [0, 255]")


def _hue_degrees(r: float, g: float, b: float, mx: float, c: float) -> float:
    if c == 0:
        return 0.0
    if mx == r:
        t = (g - b) / c
        if t < 0.0:
            t += 6.0
        return 60.0 * t
    if mx == g:
        return 60.0 * ((b - r) / c + 2.0)
    return 60.0 * ((r - g) / c + 4.0)
