"""Writers for the OSPT/OSPE little-endian binary containers.

This package talks to the core toolkit only through these file formats, so
the writers are implemented here against the published layout rather than
imported.

OSPT: magic b"OSPT", version u32, tensor count u32, then per tensor:
name length u32 + UTF-8 bytes, dtype code u8 (0 = f32), ndim u32, dims as
u64 list, payload row-major f32.

OSPE: magic b"OSPE", version u32, entry count u32, dim u32, then per entry:
label length u32 + UTF-8 bytes, dim f32 values.
"""

import struct

import numpy as np

OSPT_MAGIC = b"OSPT"
OSPE_MAGIC = b"OSPE"
VERSION = 1
DTYPE_F32 = 0


class ExportError(Exception):
    pass


def _write_str(fh, s):
    raw = s.encode("utf-8")
    fh.write(struct.pack("<I", len(raw)))
    fh.write(raw)


def write_tensors(path, tensors):
    """tensors: ordered {name: ndarray}; names must be unique."""
    with open(path, "wb") as fh:
        fh.write(OSPT_MAGIC)
        fh.write(struct.pack("<II", VERSION, len(tensors)))
        for name, arr in tensors.items():
            arr = np.ascontiguousarray(arr, dtype="<f4")
            _write_str(fh, name)
            fh.write(struct.pack("<BI", DTYPE_F32, arr.ndim))
            fh.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
            fh.write(arr.tobytes())


def write_embeddings(path, labels, vectors):
    labels = list(labels)
    seen = set()
    for label in labels:
        if label in seen:
            raise ExportError(f"duplicate label: {label!r}")
        seen.add(label)
    vectors = np.ascontiguousarray(vectors, dtype="<f4")
    if vectors.ndim != 2 or vectors.shape[0] != len(labels):
        raise ExportError("vectors must be (len(labels), dim)")
    with open(path, "wb") as fh:
        fh.write(OSPE_MAGIC)
        fh.write(struct.pack("<III", VERSION, len(labels), vectors.shape[1]))
        for label, vec in zip(labels, vectors):
            _write_str(fh, label)
            fh.write(vec.tobytes())
