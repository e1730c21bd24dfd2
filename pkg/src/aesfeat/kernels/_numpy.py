"""Pure-NumPy implementations of the hot per-pixel kernels.

This is the fallback backend used when the compiled extension is not
available.  Every function here mirrors the arithmetic of the Cython twin
operation-for-operation (same expressions, same accumulation order) so the
two backends produce bit-identical outputs on the same input.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def hsv_channels(rgb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hexcone HSV per pixel: hue in [0,360), saturation in [0,1], value in [0,255]."""
    r = rgb[..., 0].astype(np.float64)
    g = rgb[..., 1].astype(np.float64)
    b = rgb[..., 2].astype(np.float64)
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    c = mx - mn

    val = mx
    sat = np.zeros_like(mx)
    np.divide(c, mx, out=sat, where=mx > 0)

    hue = np.zeros_like(mx)
    chroma = c > 0
    safe_c = np.where(chroma, c, 1.0)
    rmask = chroma & (mx == r)
    gmask = chroma & ~rmask & (mx == g)
    bmask = chroma & ~rmask & ~gmask
    # red sector: t in [-1,1], wrap negatives by +6 (cheaper than fmod, same result)
    t = (g - b) / safe_c
    t = np.where(t < 0.0, t + 6.0, t)
    hue = np.where(rmask, 60.0 * t, hue)
    hue = np.where(gmask, 60.0 * ((b - r) / safe_c + 2.0), hue)
    hue = np.where(bmask, 60.0 * ((r - g) / safe_c + 4.0), hue)
    return hue, sat, val


def hsl_channels(rgb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Bi-hexcone HSL per pixel: hue in [0,360), saturation in [0,1], lightness in [0,255]."""
    r = rgb[..., 0].astype(np.float64)
    g = rgb[..., 1].astype(np.float64)
    b = rgb[..., 2].astype(np.float64)
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    c = mx - mn

    light = (mx + mn) / 2.0
    denom = 255.0 - np.abs(mx + mn - 255.0)
    sat = np.zeros_like(mx)
    np.divide(c, denom, out=sat, where=c > 0)

    hue, _, _ = hsv_channels(rgb)
    return hue, sat, light


def rgb_to_gray(rgb: np.ndarray) -> np.ndarray:
    """Rec.601 luma on the 0-255 scale."""
    r = rgb[..., 0].astype(np.float64)
    g = rgb[..., 1].astype(np.float64)
    b = rgb[..., 2].astype(np.float64)
    return (0.299 * r + 0.587 * g) + 0.114 * b


def rgb_hist512(rgb: np.ndarray) -> np.ndarray:
    """512-bin RGB histogram, 8 uniform levels per channel."""
    r = rgb[..., 0].astype(np.int64) >> 5
    g = rgb[..., 1].astype(np.int64) >> 5
    b = rgb[..., 2].astype(np.int64) >> 5
    idx = (r << 6) | (g << 3) | b
    return np.bincount(idx.ravel(), minlength=512).astype(np.int64)


def hsv_hist512(hue: np.ndarray, sat: np.ndarray, val: np.ndarray) -> np.ndarray:
    """512-bin HSV histogram, 8 uniform levels per channel over [0,360)/[0,1]/[0,255]."""
    hq = np.minimum((hue / 45.0).astype(np.int64), 7)
    sq = np.minimum((sat * 8.0).astype(np.int64), 7)
    vq = np.minimum((val / 32.0).astype(np.int64), 7)
    idx = hq * 64 + sq * 8 + vq
    return np.bincount(idx.ravel(), minlength=512).astype(np.int64)


def hue_hist20(hue: np.ndarray, sat: np.ndarray, sat_floor: float) -> np.ndarray:
    """20-bin hue histogram (18 degree bins); pixels below the saturation floor are dropped."""
    keep = sat >= sat_floor
    bins = np.minimum((hue[keep] / 18.0).astype(np.int64), 19)
    return np.bincount(bins.ravel(), minlength=20).astype(np.int64)


def _blur_axis(img: np.ndarray, taps: np.ndarray, axis: int) -> np.ndarray:
    pad = len(taps) // 2
    widths = [(0, 0), (0, 0)]
    widths[axis] = (pad, pad)
    padded = np.pad(img, widths, mode="symmetric")
    out = np.zeros_like(img)
    sl = [slice(None), slice(None)]
    for k in range(len(taps)):
        sl[axis] = slice(k, k + img.shape[axis])
        out += taps[k] * padded[tuple(sl)]
    return out


def gaussian_blur(img: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Separable blur with symmetric boundary reflection; horizontal pass first."""
    return _blur_axis(_blur_axis(img, taps, 1), taps, 0)


def sobel_magnitude(img: np.ndarray) -> np.ndarray:
    """3x3 Sobel gradient magnitude with symmetric boundary reflection."""
    p = np.pad(img, 1, mode="symmetric")
    h, w = img.shape

    def at(dy: int, dx: int) -> np.ndarray:
        return p[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]

    gx = (at(-1, 1) + 2.0 * at(0, 1) + at(1, 1)) - (at(-1, -1) + 2.0 * at(0, -1) + at(1, -1))
    gy = (at(1, -1) + 2.0 * at(1, 0) + at(1, 1)) - (at(-1, -1) + 2.0 * at(-1, 0) + at(-1, 1))
    return np.sqrt(gx * gx + gy * gy)


def hough_line_accumulator(
    xs: np.ndarray,
    ys: np.ndarray,
    cos_t: np.ndarray,
    sin_t: np.ndarray,
    rho_offset: int,
    n_rho: int,
) -> np.ndarray:
    """Vote counts per (rho bin, theta) for the given point set.

    rho = x*cos(theta) + y*sin(theta), binned at 1 px via floor(rho + 0.5).
    """
    n_theta = len(cos_t)
    acc = np.zeros((n_rho, n_theta), dtype=np.int64)
    if len(xs) == 0:
        return acc
    for t in range(n_theta):
        idx = np.floor(xs * cos_t[t] + ys * sin_t[t] + 0.5).astype(np.int64) + rho_offset
        acc[:, t] += np.bincount(idx, minlength=n_rho)
    return acc


def hough_circle_votes(
    xs: np.ndarray,
    ys: np.ndarray,
    radius: float,
    cos_a: np.ndarray,
    sin_a: np.ndarray,
    width: int,
    height: int,
) -> np.ndarray:
    """Center votes for one radius: each point votes along its candidate-center circle."""
    votes = np.zeros((height, width), dtype=np.int32)
    if len(xs) == 0:
        return votes
    for k in range(len(cos_a)):
        cx = np.floor(xs - radius * cos_a[k] + 0.5).astype(np.int64)
        cy = np.floor(ys - radius * sin_a[k] + 0.5).astype(np.int64)
        ok = (cx >= 0) & (cx < width) & (cy >= 0) & (cy < height)
        np.add.at(votes, (cy[ok], cx[ok]), 1)
    return votes
