"""Minimal Netpbm greymap (PGM) codec.  Reads P2 and P5, always writes P5 with maxval 255."""

from __future__ import annotations

import re
import warnings

import numpy as np

from .errors import FormatError
from .imagelab import Configuration

__all__ = ["load_pgm", "save_pgm", "read_pgm_file", "write_pgm_file"]

_TOKEN = re.compile(rb"#[^\n]*|\S+")


def _header(data: bytes):
    """Return (magic, width, height, maxval, offset of first raster byte)."""
    tokens = []
    pos = 0
    while len(tokens) < 4:
        m = _TOKEN.search(data, pos)
        if m is None:
            raise FormatError("truncated PGM header")
        pos = m.end()
        if not m.group().startswith(b"#"):
            tokens.append(m.group())
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a PGM file (magic {magic[:2]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise FormatError("malformed PGM header") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise FormatError(f"bad PGM header values {width}x{height} maxval {maxval}")
    # exactly one whitespace byte separates the header from a binary raster
    return magic, width, height, maxval, pos + 1


def load_pgm(data: bytes, strict: bool = False) -> Configuration:
    magic, width, height, maxval, offset = _header(data)
    if width != height:
        raise FormatError(f"image is {width}x{height}; only square images are supported")
    count = width * height
    if magic == b"P5":
        dtype = np.dtype(">u2") if maxval > 255 else np.uint8
        raster = np.frombuffer(data, dtype=dtype, count=-1, offset=offset) if len(data) > offset else np.empty(0)
        if raster.size < count:
            raise FormatError(f"expected {count} samples, found {raster.size}")
        values = raster[:count].astype(np.int64)
    else:
        try:
            values = np.array([int(t) for t in data[offset - 1:].split()[:count]], dtype=np.int64)
        except ValueError:
            raise FormatError("non-numeric sample in P2 raster") from None
        if values.size < count:
            raise FormatError(f"expected {count} samples, found {values.size}")
    if values.max() > maxval:
        raise FormatError(f"sample exceeds maxval {maxval}")
    if maxval != 255:
        if strict:
            raise FormatError(f"maxval is {maxval}, expected 255")
        warnings.warn(f"rescaling PGM samples from maxval {maxval} to 255", stacklevel=2)
        values = (values * 255 + maxval // 2) // maxval
    return Configuration(values.reshape(height, width))


def save_pgm(c: Configuration) -> bytes:
    n = c.n
    return b"P5\n%d %d\n255\n" % (n, n) + c.cells.astype(np.uint8).tobytes()


def read_pgm_file(path, strict: bool = False) -> Configuration:
    with open(path, "rb") as fh:
        return load_pgm(fh.read(), strict=strict)


def write_pgm_file(path, c: Configuration) -> None:
    with open(path, "wb") as fh:
        fh.write(save_pgm(c))
