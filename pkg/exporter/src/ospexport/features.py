"""Multi-level image feature export.

Each image is resized to side x side and pushed through a backbone that emits
four stage outputs at strides 4/8/16/32 (named "img{k}/level{j}") plus the
stage-3 image-level map ("img{k}/res4").  The default backbone is synthetic:
block-averaged pixels passed through seeded random projections, fully
deterministic and dependency-free.  Passing a real model identifier attempts a
pretrained convolutional backbone; load failure aborts the run.
"""

import json
import logging

import numpy as np
from PIL import Image

from .containers import ExportError, write_tensors

log = logging.getLogger("ospexport")

STRIDES = (4, 8, 16, 32)
DEFAULT_SIDE = 512
DEFAULT_CHANNELS = (96, 192, 384, 768)
SYNTHETIC_MODEL_ID = "synthetic"


def load_image(path, side):
    """RGB pixels in [0, 1], resized to side x side (bilinear)."""
    with Image.open(path) as img:
        img = img.convert("RGB").resize((side, side), Image.BILINEAR)
        return np.asarray(img, dtype=np.float64) / 255.0


def _block_mean(pixels, stride):
    side = pixels.shape[0]
    g = side // stride
    return pixels.reshape(g, stride, g, stride, 3).mean(axis=(1, 3))


class SyntheticBackbone:
    """Deterministic stand-in for a pretrained pyramid backbone.

    Per level: block-average the pixels to the level grid, apply a seeded
    random 3 -> C_j projection, and squash with tanh.  Identical seed and
    channel widths give identical outputs on every run.
    """

    def __init__(self, channels=DEFAULT_CHANNELS, seed=0):
        if len(channels) != len(STRIDES):
            raise ExportError(f"need {len(STRIDES)} channel widths")
        self.channels = tuple(int(c) for c in channels)
        rng = np.random.default_rng(seed)
        self.projections = []
        for c in self.channels:
            w = rng.normal(size=(3, c)) / np.sqrt(3.0)
            b = rng.normal(size=c) * 0.1
            self.projections.append((w, b))

    def forward(self, pixels):
        levels = []
        for stride, (w, b) in zip(STRIDES, self.projections):
            pooled = _block_mean(pixels, stride)
            levels.append(np.tanh(pooled @ w + b))
        return levels


def load_pretrained_backbone(model_id):
    """Wrap a torchvision ConvNeXt so it yields the 4 stage outputs.

    Any import or weight-loading failure aborts: a silently wrong backbone
    would poison every downstream artifact.
    """
    try:
        import torch
        from torchvision.models import get_model
    except ImportError as exc:
        raise ExportError(f"model {model_id!r} requires torch/torchvision: {exc}")
    try:
        model = get_model(model_id, weights="DEFAULT")
    except Exception as exc:
        raise ExportError(f"failed to load model {model_id!r}: {exc}")
    model.eval()

    class _Wrapper:
        channels = None

        def forward(self, pixels):
            x = torch.from_numpy(pixels.transpose(2, 0, 1)[None]).float()
            feats = []
            with torch.no_grad():
                for stage in model.features:
                    x = stage(x)
                    feats.append(x)
            # ConvNeXt interleaves downsampling and block stages; keep the
            # block outputs (odd indices) as the 4 stride levels
            outs = [feats[i][0].permute(1, 2, 0).numpy() for i in (1, 3, 5, 7)]
            return outs

    return _Wrapper()


def export_features(image_paths, out_path, side=DEFAULT_SIDE,
                    model_id=SYNTHETIC_MODEL_ID, channels=DEFAULT_CHANNELS,
                    seed=0):
    """Write one OSPT file covering all readable images.

    Returns the list of exported image indices; unreadable images are skipped
    and logged, matching the per-entry error contract.
    """
    if side % STRIDES[-1]:
        raise ExportError(f"side {side} must be divisible by {STRIDES[-1]}")
    if model_id == SYNTHETIC_MODEL_ID:
        backbone = SyntheticBackbone(channels, seed)
    else:
        backbone = load_pretrained_backbone(model_id)

    tensors = {}
    exported = []
    skipped = []
    for k, path in enumerate(image_paths):
        try:
            pixels = load_image(path, side)
        except (OSError, ValueError) as exc:
            log.warning("skipping unreadable image %s: %s", path, exc)
            skipped.append(str(path))
            continue
        levels = backbone.forward(pixels)
        for j, level in enumerate(levels, start=1):
            tensors[f"img{k}/level{j}"] = level
        tensors[f"img{k}/res4"] = levels[2]
        exported.append(k)
    write_tensors(out_path, tensors)

    meta = {
        "model_id": model_id,
        "side": side,
        "strides": list(STRIDES),
        "preprocessing": f"RGB, bilinear resize to {side}x{side}, pixels scaled to [0,1]",
        "images": [str(p) for p in image_paths],
        "skipped": skipped,
        "seed": seed,
    }
    with open(str(out_path) + ".json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return exported
