"""Mask-aware visual extractor.

Pools feature-pyramid cells that fall inside a region's mask into one vector per
level, fuses the four levels through per-level projections, a summation and an
MLP to produce the mask token, and projects the flattened 224x224-resized mask
into the spatial token.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import erf

from .errors import EmptyMaskError, InvalidDimsError, StrideMismatchError
from .masks import coverage_downsample, resize_fixed, validate_mask

SPATIAL_SIDE = 224
DEFAULT_STRIDES = (4, 8, 16, 32)


@dataclass(frozen=True)
class FeaturePyramid:
    """Exactly 4 feature maps, each (H_j, W_j, C_j), with strictly increasing strides."""

    levels: tuple
    strides: tuple = DEFAULT_STRIDES

    def __post_init__(self):
        levels = tuple(np.asarray(l, dtype=np.float64) for l in self.levels)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "strides", tuple(int(s) for s in self.strides))
        if len(levels) != 4 or len(self.strides) != 4:
            raise InvalidDimsError("pyramid must have exactly 4 levels")
        if any(l.ndim != 3 for l in levels):
            raise InvalidDimsError("each level must be (H, W, C)")
        if any(b <= a for a, b in zip(self.strides, self.strides[1:])):
            raise InvalidDimsError("strides must be strictly increasing")
        h0 = levels[0].shape[0] * self.strides[0]
        w0 = levels[0].shape[1] * self.strides[1 - 1]
        for l, s in zip(levels, self.strides):
            if l.shape[0] * s != h0 or l.shape[1] * s != w0:
                raise InvalidDimsError("levels disagree on the input image size")

    @property
    def input_shape(self):
        return (
            self.levels[0].shape[0] * self.strides[0],
            self.levels[0].shape[1] * self.strides[0],
        )

    @property
    def channels(self):
        return tuple(l.shape[2] for l in self.levels)


@dataclass(frozen=True)
class PooledFeature:
    level: int
    values: np.ndarray


@dataclass(frozen=True)
class RegionTokens:
    mask_token: np.ndarray
    spatial_token: np.ndarray


@dataclass(frozen=True)
class ExtractorWeights:
    """Seeded affine maps: 4 per-level projections, a 2-layer GELU MLP, and the
    flattened-mask projection.  Immutable after construction."""

    channels: tuple
    hidden_dim: int
    out_dim: int
    projections: tuple = field(repr=False)  # 4 x (W: (D, C_j), b: (D,))
    mlp: tuple = field(repr=False)  # ((W1, b1), (W2, b2))
    spatial_proj: tuple = field(repr=False)  # (W: (D_out, side*side), b: (D_out,))


def gelu(x):
    x = np.asarray(x, dtype=np.float64)
    return 0.5 * x * (1.0 + erf(x / np.sqrt(2.0)))


def _affine_init(rng, out_dim, in_dim):
    bound = 1.0 / np.sqrt(in_dim)
    w = rng.uniform(-bound, bound, size=(out_dim, in_dim))
    b = rng.uniform(-bound, bound, size=out_dim)
    return w, b


def init_weights(seed: int, channels: Sequence[int], hidden_dim: int = 1024,
                 out_dim: int = 512, spatial_side: int = SPATIAL_SIDE) -> ExtractorWeights:
    """Deterministic uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialization."""
    channels = tuple(int(c) for c in channels)
    if len(channels) != 4:
        raise InvalidDimsError("expected 4 channel counts")
    if min(channels) < 1 or hidden_dim < 1 or out_dim < 1 or spatial_side < 1:
        raise InvalidDimsError("all dims must be >= 1")
    rng = np.random.default_rng(seed)
    projections = tuple(_affine_init(rng, hidden_dim, c) for c in channels)
    mlp = (_affine_init(rng, hidden_dim, hidden_dim),
           _affine_init(rng, out_dim, hidden_dim))
    spatial = _affine_init(rng, out_dim, spatial_side * spatial_side)
    return ExtractorWeights(channels=channels, hidden_dim=hidden_dim,
                            out_dim=out_dim, projections=projections,
                            mlp=mlp, spatial_proj=spatial)


def mask_pool(mask, level, stride: int, binary: bool = False) -> np.ndarray:
    """Coverage-weighted mean of feature cells inside the mask.

    level is (H, W, C); mask dims must equal level dims x stride.  With
    binary=True every cell with any coverage gets unit weight instead.
    """
    mask = validate_mask(mask)
    level = np.asarray(level, dtype=np.float64)
    if level.ndim != 3:
        raise InvalidDimsError("level must be (H, W, C)")
    h, w = mask.shape
    lh, lw, _ = level.shape
    if lh * stride != h or lw * stride != w:
        raise StrideMismatchError(
            f"mask {h}x{w} != level {lh}x{lw} at stride {stride}"
        )
    weights = coverage_downsample(mask, lh, lw)
    if binary:
        weights = (weights > 0).astype(np.float64)
    total = weights.sum()
    if total == 0:
        raise EmptyMaskError("mask covers no feature cells")
    return np.tensordot(weights, level, axes=([0, 1], [0, 1])) / total


def fuse_pre_mlp(pooled: Sequence[np.ndarray], weights: ExtractorWeights) -> np.ndarray:
    """Sum of the four per-level projections (the affine part before the MLP)."""
    if len(pooled) != 4:
        raise InvalidDimsError("expected 4 pooled features")
    acc = np.zeros(weights.hidden_dim)
    for vec, c, (w, b) in zip(pooled, weights.channels, weights.projections):
        vec = np.asarray(vec, dtype=np.float64)
        if vec.shape != (c,):
            raise InvalidDimsError(f"pooled feature shape {vec.shape} != ({c},)")
        acc += w @ vec + b
    return acc


def apply_mlp(x, weights: ExtractorWeights) -> np.ndarray:
    (w1, b1), (w2, b2) = weights.mlp
    return w2 @ gelu(w1 @ x + b1) + b2


def fuse_tokens(pooled: Sequence[np.ndarray], weights: ExtractorWeights) -> np.ndarray:
    """Project each pooled level, sum, and pass through the fusion MLP."""
    return apply_mlp(fuse_pre_mlp(pooled, weights), weights)


def spatial_token(mask, weights: ExtractorWeights) -> np.ndarray:
    """Resize to the projection's side, flatten row-major to 0/1, and project."""
    mask = validate_mask(mask)
    w, b = weights.spatial_proj
    side = int(round(np.sqrt(w.shape[1])))
    if side * side != w.shape[1]:
        raise InvalidDimsError(f"spatial projection input {w.shape[1]} is not square")
    resized = resize_fixed(mask, side)
    return w @ resized.astype(np.float64).ravel() + b


def extract_region_tokens(mask, pyramid: FeaturePyramid, weights: ExtractorWeights,
                          binary: bool = False) -> RegionTokens:
    """Mask token from per-level pooling + fusion; spatial token from the resized mask."""
    mask = validate_mask(mask)
    if mask.shape != pyramid.input_shape:
        raise StrideMismatchError(
            f"mask {mask.shape} != pyramid input {pyramid.input_shape}"
        )
    pooled = [mask_pool(mask, level, stride, binary=binary)
              for level, stride in zip(pyramid.levels, pyramid.strides)]
    return RegionTokens(mask_token=fuse_tokens(pooled, weights),
                        spatial_token=spatial_token(mask, weights))
