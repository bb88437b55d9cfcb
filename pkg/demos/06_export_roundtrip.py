"""Cross-package round trip: exporter containers consumed by the core.

The `ospexport` package (installed separately from exporter/) writes feature
pyramids and label embeddings using only the published OSPT/OSPE binary
layouts.  This demo exports both for a synthetic image, then loads them with
the core toolkit and extracts region tokens.
"""

import os
import tempfile

import numpy as np
from PIL import Image

from ospexport.embeddings import export_embeddings
from ospexport.features import export_features

from maskregion.cli import _pyramids_from_tensors
from maskregion.containers import read_tensors
from maskregion.embeddings import EmbeddingTable
from maskregion.extractor import extract_region_tokens, init_weights

tmp = tempfile.mkdtemp()

# Export a 4-level pyramid for one synthetic 512x512 image.
image_path = os.path.join(tmp, "photo.png")
rng = np.random.default_rng(0)
Image.fromarray(rng.integers(0, 256, (480, 640, 3), dtype=np.uint8)).save(image_path)

features_path = os.path.join(tmp, "features.ospt")
export_features([image_path], features_path, side=512, channels=(8, 8, 8, 8))

pyramids = _pyramids_from_tensors(read_tensors(features_path))
pyramid = pyramids["img0"]
print("levels:", [lv.shape for lv in pyramid.levels])
print("strides:", pyramid.strides)

# The exported pyramid feeds straight into region-token extraction.
mask = np.zeros(pyramid.input_shape, dtype=bool)
mask[100:300, 150:400] = True
weights = init_weights(seed=0, channels=pyramid.channels, hidden_dim=64,
                       out_dim=32, spatial_side=24)
tokens = extract_region_tokens(mask, pyramid, weights)
print("mask token shape:", tokens.mask_token.shape)

# Export label embeddings and read them back as a lookup table.
labels_path = os.path.join(tmp, "labels.txt")
with open(labels_path, "w") as fh:
    fh.write("sock\ncalf\nspoon\nbowl\n")
embeddings_path = os.path.join(tmp, "labels.ospe")
export_embeddings(labels_path, embeddings_path, dim=32)

table = EmbeddingTable.load(embeddings_path)
print("labels:", table.labels, "dim:", table.dim)
v = table.vector("sock")
print("self-cosine:", float(v @ v / (np.linalg.norm(v) ** 2)))
