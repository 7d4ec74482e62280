"""Embedding-stream interchange format.

A stream carries one corpus worth of contextualized word-instance vectors
from any embedder to the analytics core.  Two on-disk variants encode the
same information:

Binary (extension ``.semb``), all integers little-endian::

    magic   4 bytes  b"SEMB"
    u32     version (currently 1)
    u32     d, vector dimensionality (> 0)
    u32+utf8  model_id (length-prefixed)
    u32+utf8  corpus_label (length-prefixed)
    u64     record_count
    then record_count records:
        u32+utf8  word_type
        u64       instance_id
        u32+utf8  sentence
        d x f32   vector components (IEEE-754 binary32, little-endian)

JSONL: first line is the header object
``{"version", "dim", "model_id", "corpus_label", "record_count"}``, then one
``{"w", "id", "sent", "vec"}`` object per record.  Components are written as
shortest round-tripping decimals of their binary32 values, so both variants
carry bit-identical vectors.

Vectors are stored raw, exactly as the embedder produced them; normalization
to unit length happens when the analytics read them (see :func:`normalize`).
Components are binary32 on the wire; all downstream accumulation is float64.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ValidationError

MAGIC = b"SEMB"
VERSION = 1

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
_U64_MAX = 2**64 - 1

_HEADER_KEYS = ("version", "dim", "model_id", "corpus_label", "record_count")
_RECORD_KEYS = ("w", "id", "sent", "vec")


class StreamFormatError(ValueError):
    """Base for undecodable stream bytes; ``offset`` locates the failure."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class BadMagicError(StreamFormatError):
    """Input does not start like either stream variant."""


class UnsupportedVersionError(StreamFormatError):
    """Header declares a version this reader does not understand."""


class TruncatedStreamError(StreamFormatError):
    """Input ended in the middle of a field or record."""


class RecordCountError(StreamFormatError):
    """Actual record count disagrees with the header's record_count."""


class InvalidRecordError(StreamFormatError):
    """A decoded record violates the record invariants."""


@dataclass(frozen=True)
class StreamHeader:
    version: int
    dim: int
    model_id: str
    corpus_label: str
    record_count: int


class InstanceRecord:
    """One word occurrence: its type, the sentence it occurred in, a unique
    id within the stream, and the raw (unnormalized) vector as binary32."""

    __slots__ = ("word_type", "instance_id", "sentence", "vector")

    def __init__(self, word_type: str, instance_id: int, sentence: str, vector):
        self.word_type = word_type
        self.instance_id = int(instance_id)
        self.sentence = sentence
        self.vector = np.asarray(vector, dtype="<f4")

    def __eq__(self, other):
        if not isinstance(other, InstanceRecord):
            return NotImplemented
        return (
            self.word_type == other.word_type
            and self.instance_id == other.instance_id
            and self.sentence == other.sentence
            and np.array_equal(self.vector, other.vector)
        )

    def __repr__(self):
        return (
            f"InstanceRecord({self.word_type!r}, {self.instance_id}, "
            f"{self.sentence!r}, dim={self.vector.shape[0]})"
        )


def normalize(vector) -> np.ndarray:
    """Scale a finite nonzero vector to Euclidean norm 1 (float64).

    Components are pre-scaled by the largest magnitude so that vectors with
    tiny components (whose squares would underflow) still normalize exactly.
    """
    v = np.asarray(vector, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise ValidationError("normalize expects a non-empty 1-d vector")
    if not np.all(np.isfinite(v)):
        raise ValidationError("cannot normalize a vector with non-finite components")
    m = float(np.max(np.abs(v)))
    if m == 0.0:
        raise ValidationError("cannot normalize the zero vector")
    scaled = v / m
    return scaled / np.linalg.norm(scaled)


def _check_header(header: StreamHeader) -> None:
    if header.version != VERSION:
        raise ValidationError(f"writer supports version {VERSION}, got {header.version}")
    if header.dim <= 0:
        raise ValidationError(f"dim must be positive, got {header.dim}")
    if header.record_count < 0:
        raise ValidationError("record_count must be >= 0")


def _check_record(rec: InstanceRecord, dim: int, seen_ids: set) -> np.ndarray:
    """Validate one record against the header; returns the binary32 vector."""
    if not rec.word_type:
        raise ValidationError("word_type must be non-empty")
    if rec.word_type != rec.word_type.lower():
        raise ValidationError(f"word_type must be lowercase: {rec.word_type!r}")
    if not 0 <= rec.instance_id <= _U64_MAX:
        raise ValidationError(f"instance_id out of u64 range: {rec.instance_id}")
    if rec.instance_id in seen_ids:
        raise ValidationError(f"duplicate instance_id {rec.instance_id}")
    seen_ids.add(rec.instance_id)
    vec = np.asarray(rec.vector, dtype="<f4")
    if vec.ndim != 1 or vec.shape[0] != dim:
        raise ValidationError(
            f"record {rec.instance_id}: vector has {vec.shape} components, header dim is {dim}"
        )
    if not np.all(np.isfinite(vec)):
        raise ValidationError(f"record {rec.instance_id}: non-finite vector component")
    if not np.any(vec):
        raise ValidationError(f"record {rec.instance_id}: zero vector")
    return vec


def write_stream(
    header: StreamHeader,
    records: Sequence[InstanceRecord] | Iterable[InstanceRecord],
    format: str = "binary",
) -> bytes:
    """Serialize a header plus records to one of the two stream variants.

    record_count in the header must equal the number of records; every
    record must carry a finite, nonzero vector of exactly ``header.dim``
    components (checked on the binary32 values actually written).
    """
    records = list(records)
    _check_header(header)
    if header.record_count != len(records):
        raise ValidationError(
            f"header says {header.record_count} records, got {len(records)}"
        )
    if format == "binary":
        return _write_binary(header, records)
    if format == "jsonl":
        return _write_jsonl(header, records)
    raise ValidationError(f"unknown stream format {format!r}")


def _lp(text: str) -> bytes:
    raw = text.encode("utf-8")
    return _U32.pack(len(raw)) + raw


def _write_binary(header: StreamHeader, records: list) -> bytes:
    parts = [
        MAGIC,
        _U32.pack(header.version),
        _U32.pack(header.dim),
        _lp(header.model_id),
        _lp(header.corpus_label),
        _U64.pack(header.record_count),
    ]
    seen: set = set()
    for rec in records:
        vec = _check_record(rec, header.dim, seen)
        parts.append(_lp(rec.word_type))
        parts.append(_U64.pack(rec.instance_id))
        parts.append(_lp(rec.sentence))
        parts.append(vec.tobytes())
    return b"".join(parts)


def _write_jsonl(header: StreamHeader, records: list) -> bytes:
    lines = [
        json.dumps(
            {
                "version": header.version,
                "dim": header.dim,
                "model_id": header.model_id,
                "corpus_label": header.corpus_label,
                "record_count": header.record_count,
            },
            ensure_ascii=False,
        )
    ]
    seen: set = set()
    for rec in records:
        vec = _check_record(rec, header.dim, seen)
        lines.append(
            json.dumps(
                {
                    "w": rec.word_type,
                    "id": rec.instance_id,
                    "sent": rec.sentence,
                    # float() of a binary32 is exact; json round-trips it
                    "vec": [float(x) for x in vec],
                },
                ensure_ascii=False,
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_stream(data: bytes) -> tuple[StreamHeader, list[InstanceRecord]]:
    """Decode either stream variant, auto-detected from the first bytes.

    Round-trips :func:`write_stream` exactly, including bit-exact binary32
    vector components.  Raises a :class:`StreamFormatError` subclass with the
    byte offset on malformed input.
    """
    header, it = iter_stream(data)
    return header, list(it)


def iter_stream(data: bytes) -> tuple[StreamHeader, Iterator[InstanceRecord]]:
    """Like :func:`read_stream` but records come as a lazy iterator."""
    if data[:4] == MAGIC:
        return _read_binary(data)
    if data[:1] in (b"{", b" ", b"\t"):
        return _read_jsonl(data)
    raise BadMagicError(
        f"not an embedding stream: expected magic {MAGIC!r} or a JSONL header", 0
    )


class _Cursor:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, what: str) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedStreamError(f"stream ends inside {what}", self.pos)
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u32(self, what: str) -> int:
        return _U32.unpack(self.take(4, what))[0]

    def u64(self, what: str) -> int:
        return _U64.unpack(self.take(8, what))[0]

    def text(self, what: str) -> str:
        start = self.pos
        n = self.u32(f"{what} length")
        raw = self.take(n, what)
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidRecordError(f"{what} is not valid UTF-8: {exc}", start)


def _read_binary(data: bytes):
    cur = _Cursor(data)
    cur.take(4, "magic")
    version = cur.u32("version")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported stream version {version}", 4)
    dim = cur.u32("dim")
    if dim == 0:
        raise InvalidRecordError("header dim must be positive", 8)
    model_id = cur.text("model_id")
    corpus_label = cur.text("corpus_label")
    record_count = cur.u64("record_count")
    header = StreamHeader(version, dim, model_id, corpus_label, record_count)

    def gen():
        seen: set = set()
        vec_bytes = 4 * dim
        for _ in range(record_count):
            start = cur.pos
            word_type = cur.text("word_type")
            instance_id = cur.u64("instance_id")
            sentence = cur.text("sentence")
            vec = np.frombuffer(cur.take(vec_bytes, "vector"), dtype="<f4").copy()
            _validate_read(word_type, instance_id, vec, dim, seen, start)
            yield InstanceRecord(word_type, instance_id, sentence, vec)
        if cur.pos != len(data):
            raise RecordCountError(
                f"{len(data) - cur.pos} trailing bytes after "
                f"{record_count} records",
                cur.pos,
            )

    return header, gen()


def _validate_read(word_type, instance_id, vec, dim, seen, offset) -> None:
    if not word_type:
        raise InvalidRecordError("empty word_type", offset)
    if word_type != word_type.lower():
        raise InvalidRecordError(f"word_type not lowercase: {word_type!r}", offset)
    if instance_id in seen:
        raise InvalidRecordError(f"duplicate instance_id {instance_id}", offset)
    seen.add(instance_id)
    if vec.shape[0] != dim:
        raise InvalidRecordError(
            f"vector has {vec.shape[0]} components, header dim is {dim}", offset
        )
    if not np.all(np.isfinite(vec)):
        raise InvalidRecordError("non-finite vector component", offset)
    if not np.any(vec):
        raise InvalidRecordError("zero vector", offset)


def _read_jsonl(data: bytes):
    nl = data.find(b"\n")
    header_end = nl if nl >= 0 else len(data)
    try:
        obj = json.loads(data[:header_end])
    except json.JSONDecodeError as exc:
        raise BadMagicError(f"first line is not a JSON header: {exc.msg}", 0)
    if not isinstance(obj, dict) or any(k not in obj for k in _HEADER_KEYS):
        raise BadMagicError(
            f"JSONL header must carry fields {_HEADER_KEYS}", 0
        )
    if obj["version"] != VERSION:
        raise UnsupportedVersionError(f"unsupported stream version {obj['version']}", 0)
    if not isinstance(obj["dim"], int) or obj["dim"] <= 0:
        raise InvalidRecordError("header dim must be a positive integer", 0)
    header = StreamHeader(
        obj["version"], obj["dim"], obj["model_id"], obj["corpus_label"], obj["record_count"]
    )

    def gen():
        seen: set = set()
        count = 0
        pos = header_end + 1
        while pos < len(data):
            nl2 = data.find(b"\n", pos)
            end = nl2 if nl2 >= 0 else len(data)
            line = data[pos:end]
            if line.strip():
                yield _parse_jsonl_record(line, header.dim, seen, pos)
                count += 1
                if count > header.record_count:
                    raise RecordCountError(
                        f"more than the declared {header.record_count} records", pos
                    )
            pos = end + 1
        if count != header.record_count:
            raise RecordCountError(
                f"header says {header.record_count} records, stream has {count}",
                len(data),
            )

    return header, gen()


def _parse_jsonl_record(line: bytes, dim: int, seen: set, offset: int) -> InstanceRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TruncatedStreamError(f"unparseable record line: {exc.msg}", offset)
    if not isinstance(obj, dict) or any(k not in obj for k in _RECORD_KEYS):
        raise InvalidRecordError(f"record must carry fields {_RECORD_KEYS}", offset)
    if not isinstance(obj["w"], str) or not isinstance(obj["sent"], str):
        raise InvalidRecordError("w and sent must be strings", offset)
    if not isinstance(obj["id"], int) or not 0 <= obj["id"] <= _U64_MAX:
        raise InvalidRecordError(f"id must be a u64 integer, got {obj['id']!r}", offset)
    vec = np.asarray(obj["vec"], dtype=np.float64)
    if vec.ndim != 1:
        raise InvalidRecordError("vec must be a flat array", offset)
    vec32 = vec.astype("<f4")
    _validate_read(obj["w"], obj["id"], vec32, dim, seen, offset)
    return InstanceRecord(obj["w"], obj["id"], obj["sent"], vec32)


# ---------------------------------------------------------------------------
# path conveniences

def read_stream_path(path) -> tuple[StreamHeader, list[InstanceRecord]]:
    with open(path, "rb") as fh:
        return read_stream(fh.read())


def write_stream_path(header, records, path, format: str = "binary") -> None:
    data = write_stream(header, records, format)
    with open(path, "wb") as fh:
        fh.write(data)
