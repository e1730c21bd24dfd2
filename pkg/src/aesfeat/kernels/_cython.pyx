# cython: language_level=3
"""Compiled implementations of the hot per-pixel kernels.

Arithmetic mirrors the NumPy fallback expression-for-expression (and the
extension is compiled with -ffp-contract=off) so both backends produce
bit-identical outputs.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor, sqrt

cnp.import_array()

BACKEND_NAME = "cython"


def hsv_channels(cnp.uint8_t[:, :, ::1] rgb):
    """Hexcone HSV per pixel: hue in [0,360), saturation in [0,1], value in [0,255]."""
    cdef Py_ssize_t h = rgb.shape[0], w = rgb.shape[1]
    hue_arr = np.zeros((h, w), dtype=np.float64)
    sat_arr = np.zeros((h, w), dtype=np.float64)
    val_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, ::1] hue = hue_arr, sat = sat_arr, val = val_arr
    cdef Py_ssize_t y, x
    cdef double r, g, b, mx, mn, c, t
    for y in range(h):
        for x in range(w):
            r = rgb[y, x, 0]
            g = rgb[y, x, 1]
            b = rgb[y, x, 2]
            mx = r if r >= g else g
            if b > mx:
                mx = b
            mn = r if r <= g else g
            if b < mn:
                mn = b
            c = mx - mn
            val[y, x] = mx
            if mx > 0:
                sat[y, x] = c / mx
            if c > 0:
                if mx == r:
                    t = (g - b) / c
                    if t < 0.0:
                        t = t + 6.0
                    hue[y, x] = 60.0 * t
                elif mx == g:
                    hue[y, x] = 60.0 * ((b - r) / c + 2.0)
                else:
                    hue[y, x] = 60.0 * ((r - g) / c + 4.0)
    return hue_arr, sat_arr, val_arr


def hsl_channels(cnp.uint8_t[:, :, ::1] rgb):
    """Bi-hexcone HSL per pixel: hue in [0,360), saturation in [0,1], lightness in [0,255]."""
    cdef Py_ssize_t h = rgb.shape[0], w = rgb.shape[1]
    hue_arr = np.zeros((h, w), dtype=np.float64)
    sat_arr = np.zeros((h, w), dtype=np.float64)
    light_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, ::1] hue = hue_arr, sat = sat_arr, light = light_arr
    cdef Py_ssize_t y, x
    cdef double r, g, b, mx, mn, c, t, s, denom
    for y in range(h):
        for x in range(w):
            r = rgb[y, x, 0]
            g = rgb[y, x, 1]
            b = rgb[y, x, 2]
            mx = r if r >= g else g
            if b > mx:
                mx = b
            mn = r if r <= g else g
            if b < mn:
                mn = b
            c = mx - mn
            light[y, x] = (mx + mn) / 2.0
            if c > 0:
                s = mx + mn - 255.0
                if s < 0.0:
                    s = -s
                denom = 255.0 - s
                sat[y, x] = c / denom
                if mx == r:
                    t = (g - b) / c
                    if t < 0.0:
                        t = t + 6.0
                    hue[y, x] = 60.0 * t
                elif mx == g:
                    hue[y, x] = 60.0 * ((b - r) / c + 2.0)
                else:
                    hue[y, x] = 60.0 * ((r - g) / c + 4.0)
    return hue_arr, sat_arr, light_arr


def rgb_to_gray(cnp.uint8_t[:, :, ::1] rgb):
    """Rec.601 luma on the 0-255 scale."""
    cdef Py_ssize_t h = rgb.shape[0], w = rgb.shape[1]
    gray_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, ::1] gray = gray_arr
    cdef Py_ssize_t y, x
    for y in range(h):
        for x in range(w):
            gray[y, x] = (0.299 * <double> rgb[y, x, 0] + 0.587 * <double> rgb[y, x, 1]) \
                + 0.114 * <double> rgb[y, x, 2]
    return gray_arr


def rgb_hist512(cnp.uint8_t[:, :, ::1] rgb):
    """512-bin RGB histogram, 8 uniform levels per channel."""
    cdef Py_ssize_t h = rgb.shape[0], w = rgb.shape[1]
    hist_arr = np.zeros(512, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    cdef Py_ssize_t y, x
    cdef int idx
    for y in range(h):
        for x in range(w):
            idx = ((rgb[y, x, 0] >> 5) << 6) | ((rgb[y, x, 1] >> 5) << 3) | (rgb[y, x, 2] >> 5)
            hist[idx] += 1
    return hist_arr


def hsv_hist512(double[:, ::1] hue, double[:, ::1] sat, double[:, ::1] val):
    """512-bin HSV histogram, 8 uniform levels per channel over [0,360)/[0,1]/[0,255]."""
    cdef Py_ssize_t h = hue.shape[0], w = hue.shape[1]
    hist_arr = np.zeros(512, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    cdef Py_ssize_t y, x
    cdef long hq, sq, vq
    for y in range(h):
        for x in range(w):
            hq = <long> (hue[y, x] / 45.0)
            if hq > 7:
                hq = 7
            sq = <long> (sat[y, x] * 8.0)
            if sq > 7:
                sq = 7
            vq = <long> (val[y, x] / 32.0)
            if vq > 7:
                vq = 7
            hist[hq * 64 + sq * 8 + vq] += 1
    return hist_arr


def hue_hist20(double[:, ::1] hue, double[:, ::1] sat, double sat_floor):
    """20-bin hue histogram (18 degree bins); pixels below the saturation floor are dropped."""
    cdef Py_ssize_t h = hue.shape[0], w = hue.shape[1]
    hist_arr = np.zeros(20, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    cdef Py_ssize_t y, x
    cdef long b
    for y in range(h):
        for x in range(w):
            if sat[y, x] >= sat_floor:
                b = <long> (hue[y, x] / 18.0)
                if b > 19:
                    b = 19
                hist[b] += 1
    return hist_arr


cdef inline Py_ssize_t _reflect(Py_ssize_t p, Py_ssize_t n):
    # symmetric reflection with edge repeat, matching np.pad(mode="symmetric")
    while p < 0 or p >= n:
        if p < 0:
            p = -p - 1
        if p >= n:
            p = 2 * n - 1 - p
    return p


def gaussian_blur(double[:, ::1] img, double[::1] taps):
    """Separable blur with symmetric boundary reflection; horizontal pass first."""
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef Py_ssize_t nt = taps.shape[0], pad = taps.shape[0] // 2
    tmp_arr = np.zeros((h, w), dtype=np.float64)
    out_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, ::1] tmp = tmp_arr, out = out_arr
    cdef Py_ssize_t y, x, k
    cdef double acc
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for k in range(nt):
                acc += taps[k] * img[y, _reflect(x + k - pad, w)]
            tmp[y, x] = acc
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for k in range(nt):
                acc += taps[k] * tmp[_reflect(y + k - pad, h), x]
            out[y, x] = acc
    return out_arr


def sobel_magnitude(double[:, ::1] img):
    """3x3 Sobel gradient magnitude with symmetric boundary reflection."""
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    out_arr = np.zeros((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t y, x, ym, yp, xm, xp
    cdef double gx, gy
    for y in range(h):
        ym = _reflect(y - 1, h)
        yp = _reflect(y + 1, h)
        for x in range(w):
            xm = _reflect(x - 1, w)
            xp = _reflect(x + 1, w)
            gx = (img[ym, xp] + 2.0 * img[y, xp] + img[yp, xp]) \
                - (img[ym, xm] + 2.0 * img[y, xm] + img[yp, xm])
            gy = (img[yp, xm] + 2.0 * img[yp, x] + img[yp, xp]) \
                - (img[ym, xm] + 2.0 * img[ym, x] + img[ym, xp])
            out[y, x] = sqrt(gx * gx + gy * gy)
    return out_arr


def hough_line_accumulator(
    double[::1] xs,
    double[::1] ys,
    double[::1] cos_t,
    double[::1] sin_t,
    long rho_offset,
    long n_rho,
):
    """Vote counts per (rho bin, theta) for the given point set.

    rho = x*cos(theta) + y*sin(theta), binned at 1 px via floor(rho + 0.5).
    """
    cdef Py_ssize_t n = xs.shape[0], n_theta = cos_t.shape[0]
    acc_arr = np.zeros((n_rho, n_theta), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] acc = acc_arr
    cdef Py_ssize_t i, t
    cdef long idx
    for t in range(n_theta):
        for i in range(n):
            idx = <long> floor(xs[i] * cos_t[t] + ys[i] * sin_t[t] + 0.5) + rho_offset
            acc[idx, t] += 1
    return acc_arr


def hough_circle_votes(
    double[::1] xs,
    double[::1] ys,
    double radius,
    double[::1] cos_a,
    double[::1] sin_a,
    long width,
    long height,
):
    """Center votes for one radius: each point votes along its candidate-center circle."""
    cdef Py_ssize_t n = xs.shape[0], m = cos_a.shape[0]
    votes_arr = np.zeros((height, width), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] votes = votes_arr
    cdef Py_ssize_t i, k
    cdef long cx, cy
    for k in range(m):
        for i in range(n):
            cx = <long> floor(xs[i] - radius * cos_a[k] + 0.5)
            cy = <long> floor(ys[i] - radius * sin_a[k] + 0.5)
            if 0 <= cx < width and 0 <= cy < height:
                votes[cy, cx] += 1
    return votes_arr
