"""Little-endian binary containers for tensors (OSPT) and label embeddings (OSPE).

OSPT layout: magic b"OSPT", version u32, tensor count u32, then per tensor:
name length u32 + UTF-8 bytes, dtype code u8 (0 = f32), ndim u32, dims as u64
list, payload row-major f32.

OSPE layout: magic b"OSPE", version u32, entry count u32, dim u32, then per
entry: label length u32 + UTF-8 bytes, dim f32 values.
"""

from __future__ import annotations

import struct
from typing import Dict, Iterable, List, Tuple

import numpy as np

from .errors import MaskRegionError

OSPT_MAGIC = b"OSPT"
OSPE_MAGIC = b"OSPE"
VERSION = 1
DTYPE_F32 = 0


class ContainerFormatError(MaskRegionError):
    """Container file is malformed or has an unsupported version."""


def _write_str(fh, s: str):
    raw = s.encode("utf-8")
    fh.write(struct.pack("<I", len(raw)))
    fh.write(raw)


def _read_exact(fh, n: int) -> bytes:
    raw = fh.read(n)
    if len(raw) != n:
        raise ContainerFormatError("unexpected end of file")
    return raw


def _read_str(fh) -> str:
    (n,) = struct.unpack("<I", _read_exact(fh, 4))
    return _read_exact(fh, n).decode("utf-8")


def write_tensors(path, tensors: Dict[str, np.ndarray]):
    """Write named f32 tensors; names must be unique (dict keys guarantee it)."""
    with open(path, "wb") as fh:
        fh.write(OSPT_MAGIC)
        fh.write(struct.pack("<II", VERSION, len(tensors)))
        for name, arr in tensors.items():
            arr = np.ascontiguousarray(arr, dtype="<f4")
            _write_str(fh, name)
            fh.write(struct.pack("<BI", DTYPE_F32, arr.ndim))
            fh.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
            fh.write(arr.tobytes())


def read_tensors(path) -> Dict[str, np.ndarray]:
    with open(path, "rb") as fh:
        if _read_exact(fh, 4) != OSPT_MAGIC:
            raise ContainerFormatError(f"{path}: not an OSPT file")
        version, count = struct.unpack("<II", _read_exact(fh, 8))
        if version != VERSION:
            raise ContainerFormatError(f"{path}: unsupported version {version}")
        out: Dict[str, np.ndarray] = {}
        for _ in range(count):
            name = _read_str(fh)
            if name in out:
                raise ContainerFormatError(f"{path}: duplicate tensor {name!r}")
            dtype, ndim = struct.unpack("<BI", _read_exact(fh, 5))
            if dtype != DTYPE_F32:
                raise ContainerFormatError(f"{path}: unknown dtype code {dtype}")
            dims = struct.unpack(f"<{ndim}Q", _read_exact(fh, 8 * ndim))
            n = int(np.prod(dims)) if ndim else 1
            arr = np.frombuffer(_read_exact(fh, 4 * n), dtype="<f4").reshape(dims)
            out[name] = arr.astype(np.float64)
        return out


def write_embeddings(path, labels: Iterable[str], vectors: np.ndarray):
    labels = list(labels)
    vectors = np.ascontiguousarray(vectors, dtype="<f4")
    if len(set(labels)) != len(labels):
        raise ContainerFormatError("duplicate labels")
    if vectors.ndim != 2 or vectors.shape[0] != len(labels):
        raise ContainerFormatError("vectors must be (len(labels), dim)")
    with open(path, "wb") as fh:
        fh.write(OSPE_MAGIC)
        fh.write(struct.pack("<III", VERSION, len(labels), vectors.shape[1]))
        for label, vec in zip(labels, vectors):
            _write_str(fh, label)
            fh.write(vec.tobytes())


def read_embeddings(path) -> Tuple[List[str], np.ndarray]:
    with open(path, "rb") as fh:
        if _read_exact(fh, 4) != OSPE_MAGIC:
            raise ContainerFormatError(f"{path}: not an OSPE file")
        version, count, dim = struct.unpack("<III", _read_exact(fh, 12))
        if version != VERSION:
            raise ContainerFormatError(f"{path}: unsupported version {version}")
        labels: List[str] = []
        vectors = np.empty((count, dim), dtype=np.float64)
        for i in range(count):
            label = _read_str(fh)
            if label in labels:
                raise ContainerFormatError(f"{path}: duplicate label {label!r}")
            labels.append(label)
            vectors[i] = np.frombuffer(_read_exact(fh, 4 * dim), dtype="<f4")
        return labels, vectors
