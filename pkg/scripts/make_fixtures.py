"""Regenerate the committed synthetic test fixtures.

Run from the repo root: python3 scripts/make_fixtures.py
Everything is seeded, so reruns are byte-identical.
"""

import json
import os

import numpy as np

from maskregion import containers
from maskregion.masks import encode_rle

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")

LVIS_LIKE_CATEGORIES = [
    "sock", "calf", "soccer_ball", "spoon", "fork", "soup", "salad", "bowl",
    "mug", "cup", "teacup", "kettle", "teapot", "pitcher", "jug", "vase",
    "bottle", "flask", "jar", "can", "tin", "box", "crate", "basket",
    "handbag", "backpack", "suitcase", "wallet", "purse", "glove", "mitten",
    "scarf", "hat", "cap", "helmet", "boot", "shoe", "sandal", "slipper",
    "sneaker",
]


def make_lvis_regions(path, n_regions=200, side=48, seed=7):
    rng = np.random.default_rng(seed)
    images = []
    annotations = []
    n_images = 20
    per_image = n_regions // n_images
    ann_id = 0
    for img_id in range(n_images):
        images.append({"id": img_id, "file_name": f"img{img_id:03d}.jpg",
                       "height": side, "width": side})
        for _ in range(per_image):
            r0, c0 = rng.integers(0, side - 8, size=2)
            h, w = rng.integers(3, 8, size=2)
            mask = np.zeros((side, side), dtype=bool)
            mask[r0 : r0 + h, c0 : c0 + w] = True
            rle = encode_rle(mask)
            cat = int(rng.integers(len(LVIS_LIKE_CATEGORIES)))
            annotations.append({
                "id": ann_id,
                "image_id": img_id,
                "category_id": cat,
                "segmentation": {"size": [side, side], "counts": list(rle.counts)},
                "bbox": [int(c0), int(r0), int(w), int(h)],
                "captions": [f"a {LVIS_LIKE_CATEGORIES[cat].replace('_', ' ')} in the scene"],
            })
            ann_id += 1
    coco = {
        "images": images,
        "annotations": annotations,
        "categories": [{"id": i, "name": n} for i, n in enumerate(LVIS_LIKE_CATEGORIES)],
    }
    with open(path, "w") as fh:
        json.dump(coco, fh, indent=1, sort_keys=True)
        fh.write("\n")


def make_embeddings(path, dim=16, seed=11):
    rng = np.random.default_rng(seed)
    vectors = rng.normal(size=(len(LVIS_LIKE_CATEGORIES), dim))
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
    containers.write_embeddings(path, LVIS_LIKE_CATEGORIES, vectors)


def make_feature_pyramid(path, image_side=512, channels=(8, 8, 8, 8), seed=13):
    rng = np.random.default_rng(seed)
    tensors = {}
    for j, (stride, c) in enumerate(zip((4, 8, 16, 32), channels), start=1):
        s = image_side // stride
        tensors[f"img0/level{j}"] = rng.normal(size=(s, s, c)).astype(np.float32)
    tensors["img0/res4"] = rng.normal(size=(image_side // 16, image_side // 16,
                                            channels[2])).astype(np.float32)
    containers.write_tensors(path, tensors)


def make_small_feature_pyramid(path, image_side=64, channels=(3, 4, 5, 6), seed=17):
    rng = np.random.default_rng(seed)
    tensors = {}
    for j, (stride, c) in enumerate(zip((4, 8, 16, 32), channels), start=1):
        s = image_side // stride
        tensors[f"img0/level{j}"] = rng.normal(size=(s, s, c)).astype(np.float32)
    containers.write_tensors(path, tensors)


def main():
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    make_lvis_regions(os.path.join(FIXTURE_DIR, "lvis_regions.json"))
    make_embeddings(os.path.join(FIXTURE_DIR, "labels.ospe"))
    make_feature_pyramid(os.path.join(FIXTURE_DIR, "features_512.ospt"))
    make_small_feature_pyramid(os.path.join(FIXTURE_DIR, "features_small.ospt"))
    print(f"fixtures written to {FIXTURE_DIR}")


if __name__ == "__main__":
    main()
