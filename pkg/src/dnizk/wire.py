"""Canonical length-prefixed binary encoding for certificates and messages.

Layout (all integers big-endian):

    0x00                          None
    0x01 len:u8 magnitude-bytes   non-negative int
    0x05 len:u8 magnitude-bytes   negative int (magnitude of -x)
    0x02 len:u32 raw-bytes        bytes
    0x03 count:u32 item*          tuple / list / dataclass fields in order
    0x04 len:u32 utf-8            str

The encoding is injective, so equal byte strings mean equal values; it is
used for view hex dumps and for determinism checks.
"""

from __future__ import annotations

import dataclasses
import struct

_U32 = struct.Struct(">I")


def encode(obj) -> bytes:
    out = bytearray()
    _encode(obj, out)
    return bytes(out)


def _encode(obj, out: bytearray) -> None:
    if obj is None:
        out.append(0)
    elif isinstance(obj, bool):
        out.append(1)
        out.append(1)
        out.append(int(obj))
    elif isinstance(obj, int):
        mag = abs(obj)
        raw = mag.to_bytes(max(1, (mag.bit_length() + 7) // 8), "big")
        if len(raw) > 255:
            raise ValueError("integer too large for wire encoding")
        out.append(1 if obj >= 0 else 5)
        out.append(len(raw))
        out += raw
    elif isinstance(obj, (bytes, bytearray)):
        out.append(2)
        out += _U32.pack(len(obj))
        out += obj
    elif isinstance(obj, str):
        raw = obj.encode()
        out.append(4)
        out += _U32.pack(len(raw))
        out += raw
    elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        items = [getattr(obj, f.name) for f in dataclasses.fields(obj)]
        out.append(3)
        out += _U32.pack(len(items))
        for x in items:
            _encode(x, out)
    elif isinstance(obj, (tuple, list)):
        out.append(3)
        out += _U32.pack(len(obj))
        for x in obj:
            _encode(x, out)
    elif isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: repr(kv[0]))
        out.append(3)
        out += _U32.pack(len(items))
        for k, v in items:
            _encode((k, v), out)
    else:
        raise TypeError(f"cannot wire-encode {type(obj).__name__}")
