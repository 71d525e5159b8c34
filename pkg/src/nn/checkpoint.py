"""Checkpoint files: one JSON manifest line, then a little-endian float64 blob.

Manifest offsets are byte offsets into the blob, which starts right after the
newline that ends the manifest.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from core import CheckpointError

from .models import ModelSpec
from .params import ParamSet

CHECKPOINT_FORMAT = "fedmode-checkpoint"
CHECKPOINT_VERSION = 1
_DTYPE = np.dtype("<f8")


def encode_checkpoint(params: ParamSet, spec: ModelSpec | None = None, extra: dict[str, Any] | None = None) -> bytes:
    tensors = []
    chunks: list[bytes] = []
    offset = 0
    for name, value in params.items():
        raw = np.ascontiguousarray(value, dtype=_DTYPE).tobytes()
        tensors.append({"name": name, "shape": list(value.shape), "offset": offset})
        chunks.append(raw)
        offset += len(raw)
    manifest = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "tensors": tensors,
        "blob_bytes": offset,
        "spec": spec.to_dict() if spec is not None else None,
        "extra": extra or {},
    }
    header = json.dumps(manifest, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return header + b"\n" + b"".join(chunks)


def decode_checkpoint(payload: bytes) -> tuple[ParamSet, ModelSpec | None, dict[str, Any]]:
    newline = payload.find(b"\n")
    if newline < 0:
        raise CheckpointError("missing manifest terminator", operation="load_checkpoint")
    try:
        manifest = json.loads(payload[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"unreadable manifest: {exc}", operation="load_checkpoint") from exc
    if manifest.get("format") != CHECKPOINT_FORMAT or manifest.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError("not a fedmode checkpoint", operation="load_checkpoint")

    blob = payload[newline + 1 :]
    if len(blob) != manifest["blob_bytes"]:
        raise CheckpointError(
            f"blob has {len(blob)} bytes, manifest declares {manifest['blob_bytes']}",
            operation="load_checkpoint",
        )
    items = []
    for entry in manifest["tensors"]:
        shape = tuple(entry["shape"])
        count = int(np.prod(shape)) if shape else 1
        start = entry["offset"]
        end = start + count * _DTYPE.itemsize
        if end > len(blob):
            raise CheckpointError(f"tensor '{entry['name']}' runs past the blob", operation="load_checkpoint")
        items.append((entry["name"], np.frombuffer(blob[start:end], dtype=_DTYPE).reshape(shape)))
    spec = ModelSpec.from_dict(manifest["spec"]) if manifest.get("spec") else None
    return ParamSet(items), spec, manifest.get("extra", {})


def save_checkpoint(
    path: Path | str,
    params: ParamSet,
    spec: ModelSpec | None = None,
    extra: dict[str, Any] | None = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_checkpoint(params, spec, extra))
    return path


def load_checkpoint(path: Path | str) -> tuple[ParamSet, ModelSpec | None, dict[str, Any]]:
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"checkpoint {path} does not exist", operation="load_checkpoint")
    return decode_checkpoint(path.read_bytes())
