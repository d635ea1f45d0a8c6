"""Binary persistence for the solver's transposition table.

Layout (all integers little-endian)::

    u8      format version
    u16     length of the artifact version string, then its UTF-8 bytes
    32B     SHA-256 of the body
    body:   u32 record count, then records
    record: u16 payload length, payload
    payload: u8 to_move (0 Maker, 1 Breaker), u8 component count,
             count x (u8 kind, u16 length), u16 value

Records are written in sorted key order so equal tables give equal bytes.
"""

from __future__ import annotations

import hashlib
import struct
from pathlib import Path

from . import __version__
from .solver import Solver, decode, encode

FORMAT_VERSION = 1


class CacheError(Exception):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


class CacheFormatError(CacheError):
    pass


def dumps(memo: dict) -> bytes:
    records = []
    for (key, maker), value in sorted(memo.items()):
        comps = [decode(code) for code in key]
        payload = struct.pack("<BB", 0 if maker else 1, len(comps))
        payload += b"".join(struct.pack("<BH", int(c.kind), c.length) for c in comps)
        payload += struct.pack("<H", value)
        records.append(struct.pack("<H", len(payload)) + payload)
    body = struct.pack("<I", len(records)) + b"".join(records)
    tag = __version__.encode()
    return struct.pack("<BH", FORMAT_VERSION, len(tag)) + tag + hashlib.sha256(body).digest() + body


def loads(data: bytes) -> dict:
    if not data or data[0] != FORMAT_VERSION:
        found = data[0] if data else None
        raise CacheVersionError(f"cache format version {found}, expected {FORMAT_VERSION}")
    try:
        (tag_len,) = struct.unpack_from("<H", data, 1)
        off = 3 + tag_len
        digest = data[off : off + 32]
        body = data[off + 32 :]
        if len(digest) != 32:
            raise struct.error("truncated header")
    except struct.error as exc:
        raise CacheFormatError(f"malformed cache header: {exc}") from None
    if hashlib.sha256(body).digest() != digest:
        raise CacheChecksumError("cache body does not match its checksum")

    memo = {}
    try:
        (count,) = struct.unpack_from("<I", body, 0)
        pos = 4
        for _ in range(count):
            (size,) = struct.unpack_from("<H", body, pos)
            pos += 2
            rec = body[pos : pos + size]
            pos += size
            side, ncomp = struct.unpack_from("<BB", rec, 0)
            comps = [struct.unpack_from("<BH", rec, 2 + 3 * i) for i in range(ncomp)]
            (value,) = struct.unpack_from("<H", rec, 2 + 3 * ncomp)
            key = tuple(sorted(encode(decode((kind << 8) | length)) for kind, length in comps))
            memo[(key, side == 0)] = value
        if pos != len(body):
            raise struct.error("trailing bytes after records")
    except (struct.error, ValueError) as exc:
        raise CacheFormatError(f"malformed cache record: {exc}") from None
    return memo


def cache_save(solver: Solver, path: str | Path) -> None:
    Path(path).write_bytes(dumps(solver.memo))


def cache_load(solver: Solver, path: str | Path) -> int:
    """Merge a saved table into ``solver``; returns the number of entries read."""
    memo = loads(Path(path).read_bytes())
    solver.memo.update(memo)
    return len(memo)
