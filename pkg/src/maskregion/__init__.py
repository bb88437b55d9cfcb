"""Mask-based region toolkit.

Subpackages and modules:
  masks      - binary masks, COCO-compatible RLE codecs, rasterization, geometry
  extractor  - mask-aware visual extractor (mask pooling, fusion, spatial token)
  sequencer  - interleaved region-token sequence protocol
  forge      - instruction-data construction pipeline
  evalsuite  - region-understanding evaluation metrics
  containers - OSPT/OSPE binary container I/O
  cli        - batch entry point
"""

__version__ = "0.1.0"
