"""Color features: channel weight, dominant colors in RGB/HSV histograms,
and dominant-hue count/contrast.

Histogram conventions: 8 uniform levels per channel give 512 bins in both
RGB and HSV; hues use 20 bins of 18 degrees.  Bin edges are half-open
[lo, hi) with the final bin closed, so boundary values land deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .imaging import Raster


@dataclass(frozen=True)
class ColorFeatureConfig:
    """Thresholds for the color features.

    c1/c2 are the dominant-color and dominant-hue threshold fractions;
    gray_diff_threshold is the mean absolute channel difference separating
    near-grayscale from colored images; pixels below saturation_floor are
    ignored when building the hue histogram.
    """

    c1: float = 0.01
    c2: float = 0.01
    gray_diff_threshold: float = 10.0
    saturation_floor: float = 0.2
    rgb_bins_per_channel: int = 8
    hue_bins: int = 20

    def __post_init__(self):
        if not 0 < self.c1 < 1 or not 0 < self.c2 < 1:
            raise ValueError("c1 and c2 must be in (0, 1)")
        if self.gray_diff_threshold < 0 or self.saturation_floor < 0:
            raise ValueError("thresholds must be non-negative")
        # the histogram kernels are specialized to these bin counts
        if self.rgb_bins_per_channel != 8 or self.hue_bins != 20:
            raise ValueError("supported binnings: 8 levels per channel, 20 hue bins")


@dataclass(frozen=True)
class ColorFeatures:
    f1: float  # channel weight in {0, 0.5, 1}
    f2: int  # number of RGB dominant colors
    f3: float  # degree of RGB dominant colors in [0, 1]
    f4: int  # number of HSV dominant colors
    f5: float  # degree of HSV dominant colors in [0, 1]
    f6: int  # number of dominant hues (out of 20 bins)
    f7: float  # contrast of dominant hues, degrees in [0, 180]

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.f1, self.f2, self.f3, self.f4, self.f5, self.f6, self.f7],
            dtype=np.float64,
        )


def channel_weight(image: Raster, cfg: ColorFeatureConfig | None = None) -> float:
    """0 for exact grayscale, 0.5 for near-grayscale, 1 for colored images.

    Near-grayscale means the per-pixel mean of |R-G|, |G-B|, |R-B| averaged
    over the image stays below ``gray_diff_threshold``.
    """
    cfg = cfg or ColorFeatureConfig()
    px = image.pixels.astype(np.int64)
    r, g, b = px[..., 0], px[..., 1], px[..., 2]
    dsum = int(np.abs(r - g).sum() + np.abs(g - b).sum() + np.abs(r - b).sum())
    if dsum == 0:
        return 0.0
    mean_diff = dsum / (3.0 * image.pixel_count)
    return 0.5 if mean_diff < cfg.gray_diff_threshold else 1.0


def dominant_color_stats(
    image: Raster, space: str, cfg: ColorFeatureConfig | None = None
) -> tuple[int, float]:
    """Dominant-color count and degree over the 512-bin histogram.

    A bin is dominant when its count clears c1 times the largest bin; the
    degree is the largest bin's share of all pixels.  ``space`` is "rgb" or
    "hsv" (HSV quantizes hue/saturation/value to 8 levels each).
    """
    cfg = cfg or ColorFeatureConfig()
    if space == "rgb":
        hist = kernels.rgb_hist512(image.pixels)
    elif space == "hsv":
        hue, sat, val = kernels.hsv_channels(image.pixels)
        hist = kernels.hsv_hist512(hue, sat, val)
    else:
        raise ValueError(f"unknown color space {space!r} (expected 'rgb' or 'hsv')")
    return _dominant_stats(hist, cfg.c1, image.pixel_count)


def _dominant_stats(hist: np.ndarray, c1: float, total: int) -> tuple[int, float]:
    peak = int(hist.max())
    count = int(np.count_nonzero(hist >= c1 * peak)) if peak > 0 else 0
    return count, peak / total


def hue_features(image: Raster, cfg: ColorFeatureConfig | None = None) -> tuple[int, float]:
    """Dominant-hue count f6 and contrast f7.

    Low-saturation pixels are dropped before binning hues into 20 bins of
    18 degrees.  A bin is dominant when its count reaches c2 times the FULL
    image pixel count.  f7 is the maximum circular distance between dominant
    bin centers (0 with fewer than two dominant bins).
    """
    cfg = cfg or ColorFeatureConfig()
    hue, sat, _ = kernels.hsv_channels(image.pixels)
    hist = kernels.hue_hist20(hue, sat, cfg.saturation_floor)
    dominant = np.flatnonzero(hist >= cfg.c2 * image.pixel_count)
    f6 = int(len(dominant))
    if f6 < 2:
        return f6, 0.0
    span = 0
    n_bins = len(hist)
    for a in range(len(dominant)):
        for b in range(a + 1, len(dominant)):
            steps = int(dominant[b] - dominant[a])
            steps = min(steps, n_bins - steps)
            span = max(span, steps)
    return f6, span * (360.0 / n_bins)


def extract_color_features(image: Raster, cfg: ColorFeatureConfig | None = None) -> ColorFeatures:
    """Compute all seven color features of an image."""
    cfg = cfg or ColorFeatureConfig()
    f1 = channel_weight(image, cfg)
    f2, f3 = dominant_color_stats(image, "rgb", cfg)
    f4, f5 = dominant_color_stats(image, "hsv", cfg)
    f6, f7 = hue_features(image, cfg)
    return ColorFeatures(f1=f1, f2=f2, f3=f3, f4=f4, f5=f5, f6=f6, f7=f7)
