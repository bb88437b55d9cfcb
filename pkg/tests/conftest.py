import json
import os

import numpy as np
import pytest

from maskregion.forge.types import RegionAnnotation
from maskregion.masks import RleMask, encode_rle

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURE_DIR, name)


def read_fixture_text(name):
    with open(fixture_path(name), "r", encoding="utf-8") as fh:
        return fh.read()


def random_mask(rng, max_side=64):
    h = int(rng.integers(1, max_side + 1))
    w = int(rng.integers(1, max_side + 1))
    density = rng.uniform(0.0, 1.0)
    return rng.random((h, w)) < density


def rect_mask(h, w, r0, c0, rh, rw):
    m = np.zeros((h, w), dtype=bool)
    m[r0 : r0 + rh, c0 : c0 + rw] = True
    return m


def rect_rle(h, w, r0, c0, rh, rw):
    return encode_rle(rect_mask(h, w, r0, c0, rh, rw))


def make_region(region_id, category, h=16, w=16, r0=2, c0=2, rh=4, rw=4,
                captions=(), attributes=None):
    rle = rect_rle(h, w, r0, c0, rh, rw)
    bbox = (c0 / w, r0 / h, (c0 + rw) / w, (r0 + rh) / h)
    return RegionAnnotation(region_id=region_id, category=category, mask=rle,
                            bbox_norm=bbox, captions=tuple(captions),
                            attributes=attributes)


@pytest.fixture
def market_regions():
    """Three person regions with the referring captions from the market scene."""
    caps = [
        ("gray shirt wearing glasses.",
         "woman with gray shirt standing next to man.",
         "woman in gray shirt facing camera on right.",
         "the woman in the grey shirt with a watch on her wrist.",
         "a short haired woman in jeans shopping."),
        ("the lady with the blue shirt.",
         "the back of an older woman with her hair in a barrette with a blue  jacket on.",
         "navy blue shirt.", "woman back in blue.",
         "a woman is wearing blue sweater."),
        ("a woman in glasses shops in an open air fruit market.",
         "a woman in a gray coat and scarf."),
    ]
    boxes = [
        (0.507, 0.409, 0.698, 0.740),
        (0.243, 0.469, 0.558, 0.746),
        (0.196, 0.422, 0.395, 0.708),
    ]
    regions = []
    for i, (cap, box) in enumerate(zip(caps, boxes)):
        r = make_region(i, "person", h=32, w=32, r0=2 * i, c0=3 * i,
                        captions=cap)
        regions.append(RegionAnnotation(r.region_id, r.category, r.mask,
                                        box, r.captions, None))
    return regions


@pytest.fixture
def tableware_regions():
    """Eight part-level regions with attribute annotations."""
    spec = [
        ("spoon", ("dark grey", "plain", "metal", "opaque")),
        ("bowl", ("dark green", "plain", "ceramic", "opaque")),
        ("spoon:tip", ("dark grey", "plain", "metal", "opaque")),
        ("spoon:bowl", ("light grey", "plain", "metal", "opaque")),
        ("spoon:neck", ("dark grey", "plain", "metal", "opaque")),
        ("spoon:handle", ("dark grey", "plain", "metal", "opaque")),
        ("bowl:inner body", ("dark green", "plain", "ceramic", "opaque")),
        ("bowl:rim", ("dark green", "plain", "ceramic", "opaque")),
    ]
    regions = []
    for i, (cat, (color, pattern, material, refl)) in enumerate(spec):
        attrs = {"colors": (color,), "patterns_markings": (pattern,),
                 "materials": (material,), "reflectance": (refl,)}
        regions.append(make_region(i, cat, h=24, w=24, r0=i, c0=i,
                                   attributes=attrs))
    return regions


@pytest.fixture(scope="session")
def lvis_corpus():
    with open(fixture_path("lvis_regions.json"), "r") as fh:
        return json.load(fh)
