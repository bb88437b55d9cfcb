"""Binary mask representations, COCO-compatible RLE codecs, rasterization and geometry.

A binary mask is a 2D numpy bool array of shape (height, width).  RLE uses the
COCO convention: column-major pixel order, first run counts background pixels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegeneratePolygonError,
    EmptyMaskError,
    MalformedRleError,
    MalformedStringError,
    NoNegativeAvailableError,
    StrideMismatchError,
)


@dataclass(frozen=True)
class RleMask:
    """Column-major run-length encoding; counts[0] is the leading zero run."""

    height: int
    width: int
    counts: tuple

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise MalformedRleError(f"invalid size {self.height}x{self.width}")
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise MalformedRleError("negative run length")
        if any(c == 0 for c in counts[1:]):
            raise MalformedRleError("interior zero run")
        if sum(counts) != self.height * self.width:
            raise MalformedRleError(
                f"counts sum {sum(counts)} != {self.height * self.width}"
            )

    def to_coco(self, compressed=True):
        counts = rle_to_string(self) if compressed else list(self.counts)
        return {"size": [self.height, self.width], "counts": counts}


@dataclass(frozen=True)
class MaskStats:
    """Tight bbox (x0, y0, x1, y1 inclusive), pixel area, and centroid of pixel centers."""

    bbox: tuple
    area: int
    centroid: tuple


def validate_mask(mask):
    mask = np.asarray(mask)
    if mask.ndim != 2 or mask.shape[0] < 1 or mask.shape[1] < 1:
        raise ValueError(f"mask must be 2D non-degenerate, got shape {mask.shape}")
    return mask.astype(bool)


def encode_rle(mask) -> RleMask:
    """Encode a binary mask as column-major RLE with a leading zero run."""
    mask = validate_mask(mask)
    h, w = mask.shape
    flat = mask.ravel(order="F")
    counts = []
    run_val = False
    run_len = 0
    for v in flat:
        if v == run_val:
            run_len += 1
        else:
            counts.append(run_len)
            run_val = v
            run_len = 1
    counts.append(run_len)
    return RleMask(h, w, tuple(counts))


def decode_rle(rle: RleMask):
    """Inverse of encode_rle."""
    flat = np.zeros(rle.height * rle.width, dtype=bool)
    pos = 0
    val = False
    for c in rle.counts:
        if val:
            flat[pos : pos + c] = True
        pos += c
        val = not val
    return flat.reshape((rle.width, rle.height)).T.copy()


# Compact string codec: the COCO scheme.  Each run (delta-coded against the
# run two back, from index 3 on, matching the reference C implementation) is
# written little-endian in 5-bit groups; bit 5 is the continuation flag and
# every 6-bit unit is offset by 48 into printable ASCII 48..111.

_CHAR_LO, _CHAR_HI = 48, 111


def rle_to_string(rle: RleMask) -> str:
    out = []
    counts = rle.counts
    for i, c in enumerate(counts):
        x = c - (counts[i - 2] if i > 2 else 0)
        more = True
        while more:
            unit = x & 0x1F
            x >>= 5
            more = (x != -1) if (unit & 0x10) else (x != 0)
            if more:
                unit |= 0x20
            out.append(chr(unit + _CHAR_LO))
    return "".join(out)


def rle_from_string(s: str, height: int, width: int) -> RleMask:
    counts = []
    p = 0
    n = len(s)
    while p < n:
        x = 0
        k = 0
        more = True
        while more:
            if p >= n:
                raise MalformedStringError("truncated string: dangling continuation bit")
            code = ord(s[p])
            if code < _CHAR_LO or code > _CHAR_HI:
                raise MalformedStringError(f"character {s[p]!r} outside 48..111 codomain")
            unit = code - _CHAR_LO
            x |= (unit & 0x1F) << (5 * k)
            more = bool(unit & 0x20)
            p += 1
            k += 1
            if not more and (unit & 0x10):
                x |= -1 << (5 * k)
        if len(counts) > 2:
            x += counts[len(counts) - 2]
        counts.append(x)
    try:
        return RleMask(height, width, tuple(counts))
    except MalformedRleError as exc:
        raise MalformedStringError(str(exc)) from exc


def from_coco_segmentation(segmentation, height: int, width: int):
    """Decode a COCO-style segmentation (polygon list or RLE dict) to a binary mask."""
    if isinstance(segmentation, dict):
        counts = segmentation["counts"]
        h, w = segmentation.get("size", (height, width))
        if isinstance(counts, str):
            rle = rle_from_string(counts, h, w)
        else:
            rle = RleMask(h, w, tuple(counts))
        return decode_rle(rle)
    if isinstance(segmentation, (list, tuple)):
        mask = np.zeros((height, width), dtype=bool)
        for flat_poly in segmentation:
            pts = [(flat_poly[i], flat_poly[i + 1]) for i in range(0, len(flat_poly), 2)]
            mask |= rasterize_polygon(pts, height, width)
        return mask
    raise MalformedRleError(f"unsupported segmentation type {type(segmentation)!r}")


def rasterize_polygon(vertices: Sequence, height: int, width: int):
    """Rasterize under even-odd fill: pixel set iff its center lies strictly inside.

    Vertices are clamped to the image bounds before filling.
    """
    if height < 1 or width < 1:
        raise ValueError(f"invalid raster size {height}x{width}")
    if len(vertices) < 3:
        raise DegeneratePolygonError(f"{len(vertices)} vertices")
    xs = np.clip(np.asarray([v[0] for v in vertices], dtype=float), 0.0, float(width))
    ys = np.clip(np.asarray([v[1] for v in vertices], dtype=float), 0.0, float(height))

    cx = np.arange(width) + 0.5
    cy = np.arange(height) + 0.5
    px, py = np.meshgrid(cx, cy)  # (h, w)

    inside = np.zeros((height, width), dtype=bool)
    n = len(xs)
    for i in range(n):
        x0, y0 = xs[i], ys[i]
        x1, y1 = xs[(i + 1) % n], ys[(i + 1) % n]
        if y0 == y1:
            continue
        # half-open edge rule: crossing counted when py is in [min, max)
        cond = ((y0 <= py) & (py < y1)) | ((y1 <= py) & (py < y0))
        with np.errstate(invalid="ignore"):
            x_at = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
        inside ^= cond & (px < x_at)
    return inside


def mask_stats(mask) -> MaskStats:
    """Tight bbox, exact area, and the mean of foreground pixel centers."""
    mask = validate_mask(mask)
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        raise EmptyMaskError("mask has no foreground pixels")
    bbox = (int(cols.min()), int(rows.min()), int(cols.max()), int(rows.max()))
    centroid = (float(np.mean(cols) + 0.5), float(np.mean(rows) + 0.5))
    return MaskStats(bbox=bbox, area=int(rows.size), centroid=centroid)


def coverage_downsample(mask, target_h: int, target_w: int):
    """Fractional foreground coverage of each stride x stride block, in [0, 1]."""
    mask = validate_mask(mask)
    h, w = mask.shape
    if target_h < 1 or target_w < 1 or target_h > h or target_w > w:
        raise StrideMismatchError(f"target {target_h}x{target_w} invalid for {h}x{w}")
    if h % target_h or w % target_w:
        raise StrideMismatchError(
            f"source {h}x{w} not divisible by target {target_h}x{target_w}"
        )
    sh, sw = h // target_h, w // target_w
    blocks = mask.reshape(target_h, sh, target_w, sw)
    return blocks.mean(axis=(1, 3))


def resize_fixed(mask, side: int = 224):
    """Nearest-neighbor resample at output pixel centers to a side x side mask."""
    mask = validate_mask(mask)
    h, w = mask.shape
    rows = np.minimum((np.arange(side) + 0.5) * (h / side), h - 1).astype(int)
    cols = np.minimum((np.arange(side) + 0.5) * (w / side), w - 1).astype(int)
    return mask[np.ix_(rows, cols)]


def nearest_region(target_index: int, regions: Sequence):
    """Differently-labeled candidate with minimal centroid distance to the target.

    regions is a list of (MaskStats, category); ties resolve to the lowest index.
    """
    if not 0 <= target_index < len(regions):
        raise IndexError(f"target index {target_index} out of range")
    t_stats, t_cat = regions[target_index]
    best = None
    for i, (stats, cat) in enumerate(regions):
        if i == target_index or cat == t_cat:
            continue
        d = math.dist(stats.centroid, t_stats.centroid)
        if best is None or d < best[0]:
            best = (d, i, cat)
    if best is None:
        raise NoNegativeAvailableError(f"no differently-labeled region near {t_cat!r}")
    return best[1], best[2]
