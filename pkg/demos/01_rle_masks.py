"""Binary masks, run-length encoding, and the compact string codec.

A region mask is stored as column-major run lengths starting with the zero
run.  The string codec packs those counts into printable ASCII with a delta
scheme, so masks survive JSON round-trips cheaply.
"""

import numpy as np

from maskregion.masks import (
    decode_rle,
    encode_rle,
    mask_stats,
    rasterize_polygon,
    rle_from_string,
    rle_to_string,
)

# A small mask with a 3x4 rectangle of foreground.
mask = np.zeros((8, 10), dtype=bool)
mask[2:5, 3:7] = True

rle = encode_rle(mask)
print("size:", (rle.height, rle.width))
print("counts:", rle.counts)

# The codec is lossless in both directions.
s = rle_to_string(rle)
print("string form:", s)
assert rle_from_string(s, rle.height, rle.width) == rle
assert np.array_equal(decode_rle(rle), mask)

# Geometry summaries used by downstream negative mining.
stats = mask_stats(mask)
print("area:", stats.area)
print("bbox (x0, y0, x1, y1 inclusive):", stats.bbox)
print("centroid (x, y) of pixel centers:", stats.centroid)

# Polygons rasterize with the even-odd rule, matching COCO-style annotations.
poly = [(1.0, 1.0), (1.0, 8.0), (6.0, 8.0), (6.0, 1.0)]
from_poly = rasterize_polygon(poly, 8, 10)
print("polygon area:", int(from_poly.sum()))
