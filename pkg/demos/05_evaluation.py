"""Region-understanding metrics.

Word-overlap IoU for short answers, a consensus n-gram caption score, and
panoptic-style recognition quality over ground-truth segments.
"""

import numpy as np

from maskregion.evalsuite import cider_scores, recognition_metrics, semantic_iou
from maskregion.evalsuite.recognition import LabeledSegment
from maskregion.masks import encode_rle

# Word-level intersection over union after lowercasing and punctuation strip.
print("semantic IoU:", semantic_iou("a red sock", "the red sock"))

# Consensus caption score: TF-IDF weighted n-gram cosine against references,
# averaged over n = 1..4 and scaled by 10.  Needs at least two images so the
# document frequencies are meaningful.
candidates = {
    "img0": "a dog runs across the grass",
    "img1": "a cat sleeps on the sofa",
}
references = {
    "img0": ["a dog runs across the grass", "a dog running on a lawn"],
    "img1": ["a cat sleeps on the sofa", "a sleeping cat on a couch"],
}
for image, score in cider_scores(candidates, references).items():
    print(f"caption consensus {image}: {score:.3f}")

# Recognition on ground-truth masks: each segment carries its true category
# and a predicted category; the summary is panoptic quality plus mean IoU.
def rect(r0, c0):
    m = np.zeros((16, 16), dtype=bool)
    m[r0:r0 + 5, c0:c0 + 5] = True
    return encode_rle(m)

segments = {"img0": [
    LabeledSegment(rect(0, 0), "cat", "cat"),
    LabeledSegment(rect(0, 8), "dog", "dog"),
    LabeledSegment(rect(8, 0), "cup", "bowl"),
]}
result = recognition_metrics(segments)
print(f"panoptic quality: {result['pq']:.2f}")
print(f"mean IoU: {result['miou']:.2f}")
