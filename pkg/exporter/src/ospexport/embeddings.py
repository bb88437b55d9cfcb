"""Label embedding export.

The default backend derives each vector deterministically from the label text
itself (hash-seeded), so identical labels produce identical vectors across
runs and even across machines.  Passing a real model identifier attempts a
pretrained sentence-embedding model; load failure aborts.
"""

import hashlib

import numpy as np

from .containers import ExportError, write_embeddings

DEFAULT_DIM = 384
SYNTHETIC_MODEL_ID = "synthetic"


def read_labels(path):
    with open(path, "r", encoding="utf-8") as fh:
        labels = [line.strip() for line in fh if line.strip()]
    if not labels:
        raise ExportError(f"{path}: no labels found")
    seen = set()
    for label in labels:
        if label in seen:
            raise ExportError(f"duplicate label: {label!r}")
        seen.add(label)
    return labels


def synthetic_vector(label, dim=DEFAULT_DIM):
    """Unit vector seeded from the label text; stable across runs."""
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    seed = int.from_bytes(digest[:8], "little")
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def load_sentence_model(model_id):
    try:
        from sentence_transformers import SentenceTransformer
    except ImportError as exc:
        raise ExportError(f"model {model_id!r} requires sentence-transformers: {exc}")
    try:
        return SentenceTransformer(model_id)
    except Exception as exc:
        raise ExportError(f"failed to load model {model_id!r}: {exc}")


def export_embeddings(labels_path, out_path, model_id=SYNTHETIC_MODEL_ID,
                      dim=DEFAULT_DIM):
    labels = read_labels(labels_path)
    if model_id == SYNTHETIC_MODEL_ID:
        vectors = np.stack([synthetic_vector(l, dim) for l in labels])
    else:
        model = load_sentence_model(model_id)
        vectors = np.asarray(model.encode(labels, normalize_embeddings=True))
    write_embeddings(out_path, labels, vectors)
    return labels
