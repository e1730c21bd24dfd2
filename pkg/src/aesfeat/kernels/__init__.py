"""Kernel backend selection.

The compiled extension is preferred when present; the NumPy fallback is
selected otherwise.  Set AESFEAT_KERNELS=numpy or AESFEAT_KERNELS=cython to
force a backend (the latter raises if the extension was not built).
"""

from __future__ import annotations

import math
import os

import numpy as np

_forced = os.environ.get("AESFEAT_KERNELS")
if _forced == "numpy":
    from . import _numpy as _impl
elif _forced == "cython":
    from . import _cython as _impl  # type: ignore[no-redef]
elif _forced:
    raise ImportError(f"unknown AESFEAT_KERNELS backend: {_forced!r}")
else:
    try:
        from . import _cython as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _numpy as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND_NAME

hsv_channels = _impl.hsv_channels
hsl_channels = _impl.hsl_channels
rgb_to_gray = _impl.rgb_to_gray
rgb_hist512 = _impl.rgb_hist512
hsv_hist512 = _impl.hsv_hist512
hue_hist20 = _impl.hue_hist20
gaussian_blur = _impl.gaussian_blur
sobel_magnitude = _impl.sobel_magnitude
hough_line_accumulator = _impl.hough_line_accumulator
hough_circle_votes = _impl.hough_circle_votes


def gaussian_taps(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian taps truncated at 3 sigma (backend-shared)."""
    radius = max(1, int(math.ceil(3.0 * sigma)))
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    taps = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    return taps / taps.sum()


__all__ = [
    "BACKEND",
    "hsv_channels",
    "hsl_channels",
    "rgb_to_gray",
    "rgb_hist512",
    "hsv_hist512",
    "hue_hist20",
    "gaussian_blur",
    "sobel_magnitude",
    "hough_line_accumulator",
    "hough_circle_votes",
    "gaussian_taps",
]
