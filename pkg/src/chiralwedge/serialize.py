"""Key-value document serialization shared by every module.

Documents are JSON objects; floats round-trip through repr, which carries
17 significant digits. Complex sequences are stored as [re, im] pairs.
Hashes are SHA-256 over the canonical (sorted-keys, compact) encoding.
"""

import hashlib
import json

import numpy as np


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [[float(z.real), float(z.imag)] for z in obj.ravel()]
        return [_plain(v) for v in obj.ravel()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj


def complex_pairs(values):
    """Encode a complex sequence as [re, im] pairs."""
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def from_complex_pairs(pairs):
    arr = np.asarray(pairs, dtype=float)
    if arr.size == 0:
        return np.zeros(0, dtype=complex)
    return arr[:, 0] + 1j * arr[:, 1]


def dump_doc(obj, path=None):
    """Serialize to the on-disk document format; returns the text."""
    text = json.dumps(_plain(obj), sort_keys=True, indent=1)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def load_doc(path):
    with open(path) as fh:
        return json.load(fh)


def doc_hash(obj):
    """SHA-256 of the canonical encoding; stable across runs."""
    canon = json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()
