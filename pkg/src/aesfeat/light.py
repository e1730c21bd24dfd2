"""Light features: mean and population standard deviation of the HSV value
and HSL lightness channels, all on the 0-255 scale."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .imaging import Raster


@dataclass(frozen=True)
class LightFeatures:
    f1: float  # mean of HSV value
    f2: float  # population std of HSV value
    f3: float  # mean of HSL lightness
    f4: float  # population std of HSL lightness

    def as_array(self) -> np.ndarray:
        return np.array([self.f1, self.f2, self.f3, self.f4], dtype=np.float64)


def extract_light_features(image: Raster, *, lightness_first: bool = False) -> LightFeatures:
    """Compute the four light features of an image.

    The default ordering puts the value-channel pair first (f1/f2) and the
    lightness-channel pair second (f3/f4); ``lightness_first=True`` swaps the
    two pairs for anyone who prefers the opposite channel assignment.
    """
    _, _, value = kernels.hsv_channels(image.pixels)
    _, _, lightness = kernels.hsl_channels(image.pixels)
    v_mean = float(np.mean(value))
    v_std = float(np.std(value))
    l_mean = float(np.mean(lightness))
    l_std = float(np.std(lightness))
    if lightness_first:
        return LightFeatures(f1=l_mean, f2=l_std, f3=v_mean, f4=v_std)
    return LightFeatures(f1=v_mean, f2=v_std, f3=l_mean, f4=l_std)
