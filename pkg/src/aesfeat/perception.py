"""Saliency maps, line segments, and circles feeding the composition features.

Detections either come from a sidecar file (externally computed, e.g. by deep
models) or from the built-in classical fallbacks: difference-of-Gaussians
saliency, a Sobel + Hough line finder, and a Hough circle finder.  Every
fallback is deterministic: identical input produces identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DimensionMismatch, MalformedSidecar, MissingEntry
from .imaging import Raster, load_image

DEFAULT_MAX_LINES = 10


@dataclass(frozen=True)
class SaliencyMap:
    width: int
    height: int
    values: np.ndarray  # (h, w) float64 in [0, 1]

    def __post_init__(self):
        if self.values.shape != (self.height, self.width):
            raise DimensionMismatch(
                f"saliency shape {self.values.shape} does not match "
                f"{self.height}x{self.width}"
            )


@dataclass(frozen=True)
class LineSegment:
    x1: float
    y1: float
    x2: float
    y2: float
    strength: float = 1.0

    def __post_init__(self):
        if self.x1 == self.x2 and self.y1 == self.y2:
            raise ValueError("degenerate segment: endpoints coincide")
        if self.strength < 0:
            raise ValueError("strength must be non-negative")

    def angle_degrees(self) -> float:
        """Angle to the horizontal axis, in [0, 180)."""
        ang = math.degrees(math.atan2(self.y2 - self.y1, self.x2 - self.x1)) % 180.0
        return ang


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class PerceptionBundle:
    saliency: SaliencyMap | None
    lines: tuple[LineSegment, ...]  # sorted by descending strength
    circles: tuple[Circle, ...]

    def __post_init__(self):
        strengths = [ln.strength for ln in self.lines]
        if strengths != sorted(strengths, reverse=True):
            raise ValueError("lines must be sorted by descending strength")


# ---------------------------------------------------------------------------
# sidecar ingestion
# ---------------------------------------------------------------------------

def load_sidecar(
    path: str | Path,
    image_id: str,
    image_size: tuple[int, int] | None = None,
) -> PerceptionBundle:
    """Load recorded detections for one image from a JSON-lines sidecar.

    Each line is an object {"id", "saliency"?, "lines", "circles"}; the
    saliency value is a path (relative to the sidecar file) of an 8-bit
    grayscale image, normalized to [0,1] on load.  When ``image_size`` is
    given (w, h), the saliency dimensions and line endpoints are validated
    against it.
    """
    path = Path(path)
    entry = _read_sidecar_entries(path).get(image_id)
    if entry is None:
        raise MissingEntry(f"sidecar has no entry for id {image_id!r}")
    return _bundle_from_entry(entry, path.parent, image_size)


def _read_sidecar_entries(path: Path) -> dict[str, dict]:
    entries: dict[str, dict] = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedSidecar(f"cannot read sidecar {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedSidecar(f"{path}:{lineno}: invalid JSON: {exc}") from exc
        if not isinstance(obj, dict) or not isinstance(obj.get("id"), str):
            raise MalformedSidecar(f"{path}:{lineno}: entry must be an object with a string 'id'")
        entries[obj["id"]] = obj
    return entries


def _bundle_from_entry(
    entry: dict, base_dir: Path, image_size: tuple[int, int] | None
) -> PerceptionBundle:
    saliency = None
    if entry.get("saliency") is not None:
        saliency = _load_saliency_image(base_dir / entry["saliency"], image_size)

    lines = []
    for obj in entry.get("lines", []):
        try:
            seg = LineSegment(
                x1=float(obj["x1"]), y1=float(obj["y1"]),
                x2=float(obj["x2"]), y2=float(obj["y2"]),
                strength=float(obj["strength"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedSidecar(f"bad line entry {obj!r}: {exc}") from exc
        if image_size is not None:
            w, h = image_size
            for x, y in ((seg.x1, seg.y1), (seg.x2, seg.y2)):
                if not (-0.5 <= x <= w + 0.5 and -0.5 <= y <= h + 0.5):
                    raise MalformedSidecar(f"line endpoint ({x}, {y}) outside image frame")
        lines.append(seg)
    lines.sort(key=lambda s: -s.strength)

    circles = []
    for obj in entry.get("circles", []):
        try:
            circles.append(Circle(cx=float(obj["cx"]), cy=float(obj["cy"]), radius=float(obj["r"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedSidecar(f"bad circle entry {obj!r}: {exc}") from exc

    return PerceptionBundle(saliency=saliency, lines=tuple(lines), circles=tuple(circles))


def _load_saliency_image(path: Path, image_size: tuple[int, int] | None) -> SaliencyMap:
    try:
        raster = load_image(path)
    except Exception as exc:
        raise MalformedSidecar(f"cannot load saliency image {path}: {exc}") from exc
    if image_size is not None and (raster.width, raster.height) != image_size:
        raise DimensionMismatch(
            f"saliency {raster.width}x{raster.height} does not match "
            f"image {image_size[0]}x{image_size[1]}"
        )
    # grayscale PNG decoded as RGB: all channels equal, take the first
    values = raster.pixels[..., 0].astype(np.float64) / 255.0
    return SaliencyMap(width=raster.width, height=raster.height, values=values)


# ---------------------------------------------------------------------------
# classical fallbacks
# ---------------------------------------------------------------------------

def fallback_saliency(
    image: Raster, sigma_center: float = 2.0, sigma_surround: float = 16.0
) -> SaliencyMap:
    """Difference-of-Gaussians saliency on grayscale, min-max normalized.

    Constant images produce the all-zero map.
    """
    gray = kernels.rgb_to_gray(image.pixels)
    center = kernels.gaussian_blur(gray, kernels.gaussian_taps(sigma_center))
    surround = kernels.gaussian_blur(gray, kernels.gaussian_taps(sigma_surround))
    dog = np.abs(center - surround)
    lo = float(dog.min())
    hi = float(dog.max())
    if hi <= lo:
        values = np.zeros_like(dog)
    else:
        values = (dog - lo) / (hi - lo)
    return SaliencyMap(width=image.width, height=image.height, values=values)


def otsu_threshold(levels: np.ndarray) -> int:
    """Otsu's threshold over 256 integer levels; smallest argmax on ties."""
    hist = np.bincount(levels.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    bins = np.arange(256, dtype=np.float64)
    w0 = np.cumsum(hist)
    sum0 = np.cumsum(hist * bins)
    total_sum = sum0[-1]
    w1 = total - w0
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = np.where(w0 > 0, sum0 / w0, 0.0)
        mu1 = np.where(w1 > 0, (total_sum - sum0) / w1, 0.0)
    between = w0 * w1 * (mu0 - mu1) ** 2
    return int(np.argmax(between))


def salient_centroid(saliency: SaliencyMap) -> tuple[float, float]:
    """Centroid of the salient area: Otsu-binarize, then average coordinates.

    Salience is quantized to 256 levels; pixels strictly above the Otsu
    threshold form the salient area.  If nothing exceeds the threshold the
    image center (w/2, h/2) is returned.
    """
    levels = np.clip(np.floor(saliency.values * 255.0 + 0.5), 0, 255).astype(np.int64)
    thresh = otsu_threshold(levels)
    mask = levels > thresh
    if not mask.any():
        return saliency.width / 2.0, saliency.height / 2.0
    ys, xs = np.nonzero(mask)
    return float(xs.mean()), float(ys.mean())


def _edge_points(image: Raster, percentile: float = 90.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Edge pixels: Sobel magnitude strictly above its given percentile.

    Returns (xs, ys, edge_mask); a constant image yields no edge points.
    """
    gray = kernels.rgb_to_gray(image.pixels)
    mag = kernels.sobel_magnitude(gray)
    thresh = float(np.percentile(mag, percentile))
    mask = mag > thresh
    ys, xs = np.nonzero(mask)
    return xs.astype(np.float64), ys.astype(np.float64), mask


def fallback_lines(image: Raster, max_lines: int = DEFAULT_MAX_LINES) -> list[LineSegment]:
    """Deterministic Hough line finder on the Sobel edge map.

    1 px radial and 1 degree angular resolution; peaks are extracted
    iteratively (supporting pixels are removed after each extraction) and
    segment endpoints are the extreme supporting pixels along the line.
    Returns up to ``max_lines`` segments, strongest first.
    """
    xs, ys, _ = _edge_points(image)
    if len(xs) < 2:
        return []
    thetas = np.deg2rad(np.arange(180, dtype=np.float64))
    cos_t = np.cos(thetas)
    sin_t = np.sin(thetas)
    rho_max = int(math.ceil(math.hypot(image.width, image.height)))
    n_rho = 2 * rho_max + 1

    acc = kernels.hough_line_accumulator(xs, ys, cos_t, sin_t, rho_max, n_rho)
    alive = np.ones(len(xs), dtype=bool)
    segments: list[LineSegment] = []
    min_votes = 2
    while len(segments) < max_lines:
        flat = int(np.argmax(acc))
        votes = int(acc.ravel()[flat])
        if votes < min_votes:
            break
        rho_idx, theta_idx = divmod(flat, acc.shape[1])
        c, s = cos_t[theta_idx], sin_t[theta_idx]
        proj = np.floor(xs * c + ys * s + 0.5).astype(np.int64) + rho_max
        support = alive & (proj == rho_idx)
        seg = _segment_from_support(xs, ys, support, c, s, votes)
        if seg is not None:
            segments.append(seg)
        # retire the supporting pixels and take their votes out of the board
        sub = kernels.hough_line_accumulator(
            xs[support], ys[support], cos_t, sin_t, rho_max, n_rho
        )
        acc -= sub
        alive &= ~support
    return segments


def _segment_from_support(
    xs: np.ndarray, ys: np.ndarray, support: np.ndarray, c: float, s: float, votes: int
) -> LineSegment | None:
    sx = xs[support]
    sy = ys[support]
    if len(sx) < 2:
        return None
    # position along the line direction (-sin, cos)
    t = -sx * s + sy * c
    i_lo = int(np.argmin(t))
    i_hi = int(np.argmax(t))
    if t[i_lo] == t[i_hi]:
        return None
    return LineSegment(
        x1=float(sx[i_lo]), y1=float(sy[i_lo]),
        x2=float(sx[i_hi]), y2=float(sy[i_hi]),
        strength=float(votes),
    )


def fallback_circles(
    image: Raster,
    radius_step: int = 2,
    support_fraction: float = 0.6,
    n_samples: int = 360,
) -> list[Circle]:
    """Hough circle finder over radii from 5% to 50% of the short side.

    A candidate must be supported by edge pixels (within one pixel,
    Chebyshev) on at least ``support_fraction`` of its perimeter samples.
    Overlapping detections collapse to the best-supported circle.
    """
    xs, ys, mask = _edge_points(image)
    short = min(image.width, image.height)
    r_lo = max(2, int(round(0.05 * short)))
    r_hi = int(0.5 * short)
    if len(xs) == 0 or r_lo > r_hi:
        return []
    angles = np.deg2rad(np.arange(n_samples, dtype=np.float64) * (360.0 / n_samples))
    cos_a = np.cos(angles)
    sin_a = np.sin(angles)
    # padded mask lets the 3x3 support lookup skip bounds checks
    padded = np.zeros((image.height + 2, image.width + 2), dtype=bool)
    padded[1:-1, 1:-1] = mask

    candidates: list[tuple[float, int, int, int, int]] = []
    for r in range(r_lo, r_hi + 1, radius_step):
        votes = kernels.hough_circle_votes(xs, ys, float(r), cos_a, sin_a, image.width, image.height)
        # enough votes to possibly reach the support fraction
        min_votes = max(4, int(support_fraction * 2.0 * math.pi * r * 0.5))
        peak_ys, peak_xs = np.nonzero(votes >= min_votes)
        for cy, cx in zip(peak_ys.tolist(), peak_xs.tolist()):
            frac = _perimeter_support(padded, float(cx), float(cy), float(r), cos_a, sin_a)
            if frac >= support_fraction:
                candidates.append((frac, int(votes[cy, cx]), r, cy, cx))

    candidates.sort(key=lambda c: (-c[0], -c[1], c[2], c[3], c[4]))
    accepted: list[Circle] = []
    for frac, _votes, r, cy, cx in candidates:
        if any(
            math.hypot(cx - a.cx, cy - a.cy) <= max(3.0, 0.25 * a.radius)
            and abs(r - a.radius) <= 2 * radius_step
            for a in accepted
        ):
            continue
        accepted.append(Circle(cx=float(cx), cy=float(cy), radius=float(r)))
    return accepted


def _perimeter_support(
    padded_mask: np.ndarray, cx: float, cy: float, r: float,
    cos_a: np.ndarray, sin_a: np.ndarray,
) -> float:
    px = np.floor(cx + r * cos_a + 0.5).astype(np.int64)
    py = np.floor(cy + r * sin_a + 0.5).astype(np.int64)
    h, w = padded_mask.shape[0] - 2, padded_mask.shape[1] - 2
    inside = (px >= 0) & (px < w) & (py >= 0) & (py < h)
    hits = 0
    for x, y in zip(px[inside] + 1, py[inside] + 1):
        if padded_mask[y - 1 : y + 2, x - 1 : x + 2].any():
            hits += 1
    return hits / len(cos_a)


def fallback_bundle(image: Raster, max_lines: int = DEFAULT_MAX_LINES) -> PerceptionBundle:
    """All three classical fallbacks packed into one bundle."""
    return PerceptionBundle(
        saliency=fallback_saliency(image),
        lines=tuple(fallback_lines(image, max_lines)),
        circles=tuple(fallback_circles(image)),
    )


def with_saliency(bundle: PerceptionBundle, image: Raster) -> PerceptionBundle:
    """Fill in fallback saliency when a sidecar entry did not provide one."""
    if bundle.saliency is not None:
        return bundle
    return replace(bundle, saliency=fallback_saliency(image))
