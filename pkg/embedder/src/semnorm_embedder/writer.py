"""Writer for the semnorm embedding-stream interchange format.

Implements the published file schema directly so this package stays
decoupled from the analytics implementation; the format is the contract.

Binary (".semb"), all integers little-endian:
    b"SEMB", u32 version=1, u32 dim, u32+utf8 model_id, u32+utf8
    corpus_label, u64 record_count, then per record: u32+utf8 word_type,
    u64 instance_id, u32+utf8 sentence, dim little-endian binary32 values.

JSONL: header line {"version","dim","model_id","corpus_label","record_count"},
then one {"w","id","sent","vec"} object per record.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"SEMB"
VERSION = 1

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")


@dataclass(frozen=True)
class Record:
    word_type: str
    instance_id: int
    sentence: str
    vector: np.ndarray  # binary32 on the wire


def _check(rec: Record, dim: int) -> np.ndarray:
    vec = np.asarray(rec.vector, dtype="<f4")
    if vec.shape != (dim,):
        raise ValueError(
            f"record {rec.instance_id}: vector shape {vec.shape} does not match dim {dim}"
        )
    if not np.all(np.isfinite(vec)):
        raise ValueError(f"record {rec.instance_id}: non-finite vector component")
    if not np.any(vec):
        raise ValueError(f"record {rec.instance_id}: zero vector")
    if not rec.word_type or rec.word_type != rec.word_type.lower():
        raise ValueError(f"word_type must be non-empty lowercase: {rec.word_type!r}")
    return vec


def _lp(text: str) -> bytes:
    raw = text.encode("utf-8")
    return _U32.pack(len(raw)) + raw


def write_stream(
    dim: int, model_id: str, corpus_label: str, records: list[Record], format: str = "binary"
) -> bytes:
    if format == "binary":
        parts = [
            MAGIC,
            _U32.pack(VERSION),
            _U32.pack(dim),
            _lp(model_id),
            _lp(corpus_label),
            _U64.pack(len(records)),
        ]
        for rec in records:
            vec = _check(rec, dim)
            parts.extend((_lp(rec.word_type), _U64.pack(rec.instance_id), _lp(rec.sentence)))
            parts.append(vec.tobytes())
        return b"".join(parts)
    if format == "jsonl":
        lines = [
            json.dumps(
                {
                    "version": VERSION,
                    "dim": dim,
                    "model_id": model_id,
                    "corpus_label": corpus_label,
                    "record_count": len(records),
                },
                ensure_ascii=False,
            )
        ]
        for rec in records:
            vec = _check(rec, dim)
            lines.append(
                json.dumps(
                    {
                        "w": rec.word_type,
                        "id": rec.instance_id,
                        "sent": rec.sentence,
                        "vec": [float(x) for x in vec],
                    },
                    ensure_ascii=False,
                )
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown stream format {format!r}")


def extension(format: str) -> str:
    return "semb" if format == "binary" else "jsonl"
