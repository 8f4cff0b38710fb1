# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Byte-level helpers for canonical keys and percolation tokens.

A percolation token is the PRF input identifying an edge or a vertex. For
every family except the lamplighter it is the canonical key itself. Lamplighter
tokens replace the lamp configuration by a 128-bit XOR fingerprint, so a walk
can update them in O(1) per step; they remain a pure function of the key.
"""
import hashlib
import struct
from typing import List, Tuple

from anchorsim.graph.adapters.errors import VertexDecodeError
from anchorsim.graph.core.schemas import EdgeKey, FamilyTag, VertexKey

_INT_OFFSET = 1 << 31
_U16 = struct.Struct(">H")
_U32 = struct.Struct(">I")


def pack_int(value: int) -> bytes:
    """Order-preserving 4-byte encoding of a signed 32-bit integer."""
    shifted = value + _INT_OFFSET
    if not 0 <= shifted < (1 << 32):
        raise ValueError("Coordinate {} does not fit in 32 bits".format(value))
    return _U32.pack(shifted)


def unpack_int(data: bytes, offset: int = 0) -> int:
    return _U32.unpack_from(data, offset)[0] - _INT_OFFSET


def length_prefixed(data: bytes) -> bytes:
    return _U16.pack(len(data)) + data


def read_length_prefixed(data: bytes, offset: int) -> Tuple[bytes, int]:
    if offset + 2 > len(data):
        raise VertexDecodeError("Truncated length prefix at offset {}".format(offset))
    (size,) = _U16.unpack_from(data, offset)
    start = offset + 2
    end = start + size
    if end > len(data):
        raise VertexDecodeError("Truncated field of length {} at offset {}".format(size, offset))
    return data[start:end], end


# Lamplighter keys: lp(marker) | u32 count | count * (lp(site) | u16 value)


def pack_lamp_key(marker_key: bytes, entries: List[Tuple[bytes, int]]) -> bytes:
    parts = [length_prefixed(marker_key), _U32.pack(len(entries))]
    for site_key, value in sorted(entries):
        parts.append(length_prefixed(site_key))
        parts.append(_U16.pack(value))
    return b"".join(parts)


def parse_lamp_key(data: bytes) -> Tuple[bytes, List[Tuple[bytes, int]]]:
    marker_key, offset = read_length_prefixed(data, 0)
    if offset + 4 > len(data):
        raise VertexDecodeError("Truncated lamp count")
    (count,) = _U32.unpack_from(data, offset)
    offset += 4
    entries = []
    for _ in range(count):
        site_key, offset = read_length_prefixed(data, offset)
        if offset + 2 > len(data):
            raise VertexDecodeError("Truncated lamp value")
        (value,) = _U16.unpack_from(data, offset)
        offset += 2
        if value == 0:
            raise VertexDecodeError("Lamp entries never store the identity")
        entries.append((site_key, value))
    if offset != len(data):
        raise VertexDecodeError("Trailing bytes after lamp configuration")
    if [site for site, _ in entries] != sorted({site for site, _ in entries}):
        raise VertexDecodeError("Lamp sites must be distinct and sorted")
    return marker_key, entries


def lamp_hash(site_key: bytes, value: int) -> int:
    digest = hashlib.blake2b(
        length_prefixed(site_key) + _U16.pack(value), digest_size=16, person=b"anchorsim-lamp"
    ).digest()
    return int.from_bytes(digest, "big")


def lamp_digest(entries: List[Tuple[bytes, int]]) -> int:
    digest = 0
    for site_key, value in entries:
        digest ^= lamp_hash(site_key, value)
    return digest


def move_token(marker_a: bytes, marker_b: bytes, digest: int) -> bytes:
    lo, hi = (marker_a, marker_b) if marker_a <= marker_b else (marker_b, marker_a)
    return b"M" + length_prefixed(lo) + length_prefixed(hi) + digest.to_bytes(16, "big")


def flip_token(marker: bytes, value_a: int, value_b: int, digest_without_marker: int) -> bytes:
    lo, hi = min(value_a, value_b), max(value_a, value_b)
    return (
        b"F"
        + length_prefixed(marker)
        + _U16.pack(lo)
        + _U16.pack(hi)
        + digest_without_marker.to_bytes(16, "big")
    )


def lamp_vertex_token(marker: bytes, digest: int) -> bytes:
    return b"V" + length_prefixed(marker) + digest.to_bytes(16, "big")


def _lamp_edge_token(lo: bytes, hi: bytes) -> bytes:
    marker_lo, entries_lo = parse_lamp_key(lo)
    marker_hi, entries_hi = parse_lamp_key(hi)
    if marker_lo != marker_hi:
        return move_token(marker_lo, marker_hi, lamp_digest(entries_lo))
    values_lo = dict(entries_lo)
    values_hi = dict(entries_hi)
    rest = [(site, value) for site, value in entries_lo if site != marker_lo]
    return flip_token(
        marker_lo, values_lo.get(marker_lo, 0), values_hi.get(marker_lo, 0), lamp_digest(rest)
    )


def edge_bytes(edge: EdgeKey) -> bytes:
    return (
        bytes([edge.lo.family_tag])
        + length_prefixed(edge.lo.data)
        + length_prefixed(edge.hi.data)
    )


def edge_token(edge: EdgeKey) -> bytes:
    """Percolation token of a canonical edge."""
    if edge.lo.family_tag == FamilyTag.LAMPLIGHTER:
        return _lamp_edge_token(edge.lo.data, edge.hi.data)
    return b"E" + edge_bytes(edge)


def vertex_token(key: VertexKey) -> bytes:
    """Percolation token of a canonical vertex."""
    if key.family_tag == FamilyTag.LAMPLIGHTER:
        marker, entries = parse_lamp_key(key.data)
        return lamp_vertex_token(marker, lamp_digest(entries))
    return b"V" + bytes([key.family_tag]) + key.data
