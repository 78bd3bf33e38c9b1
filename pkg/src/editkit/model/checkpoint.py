"""Versioned binary checkpoints: JSON header plus named float32 tensor blobs.

Layout (all integers little-endian):
    magic b"EDKT" | u32 format version | u32 header length | header JSON
    u32 tensor count | per tensor: u16 name length, name utf-8, u8 ndim,
    ndim * u64 dims, row-major float32 data.
Tensor records are sorted by name so identical states serialize identically.
"""

import json
import struct
from pathlib import Path

import numpy as np

from .config import EncoderConfig
from .vocab import Vocabulary

__all__ = ["save_checkpoint", "load_checkpoint", "FORMAT_VERSION"]

MAGIC = b"EDKT"
FORMAT_VERSION = 1


def save_checkpoint(path: str | Path, config: EncoderConfig, params: dict, vocab: Vocabulary) -> None:
    header = {
        "format_version": FORMAT_VERSION,
        "config": config.to_dict(),
        "vocab": vocab.tokens,
    }
    header_bytes = json.dumps(header, ensure_ascii=False, sort_keys=True).encode("utf-8")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", FORMAT_VERSION, len(header_bytes)))
        fh.write(header_bytes)
        fh.write(struct.pack("<I", len(params)))
        for name in sorted(params):
            tensor = np.ascontiguousarray(params[name], dtype="<f4")
            encoded = name.encode("utf-8")
            fh.write(struct.pack("<H", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack("<B", tensor.ndim))
            fh.write(struct.pack(f"<{tensor.ndim}Q", *tensor.shape))
            fh.write(tensor.tobytes(order="C"))


def load_checkpoint(path: str | Path) -> tuple[EncoderConfig, dict, Vocabulary]:
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ValueError(f"{path}: not a checkpoint file")
        version, header_len = struct.unpack("<II", fh.read(8))
        if version != FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported format version {version}")
        header = json.loads(fh.read(header_len).decode("utf-8"))
        config = EncoderConfig.from_dict(header["config"])
        vocab = Vocabulary(tokens=list(header["vocab"]))
        (count,) = struct.unpack("<I", fh.read(4))
        params: dict = {}
        for _ in range(count):
            (name_len,) = struct.unpack("<H", fh.read(2))
            name = fh.read(name_len).decode("utf-8")
            (ndim,) = struct.unpack("<B", fh.read(1))
            shape = struct.unpack(f"<{ndim}Q", fh.read(8 * ndim))
            size = int(np.prod(shape)) if shape else 1
            data = np.frombuffer(fh.read(4 * size), dtype="<f4").reshape(shape)
            params[name] = data.astype(np.float32).copy()
    return config, params, vocab
