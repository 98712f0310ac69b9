"""Binary coefficient-table cache files.

Layout (all integers zigzag-encoded LEB128 varints, little-endian groups):

    magic   b"SSCT"
    version varint (currently 1)
    form_id varint length + utf-8 bytes
    weight, index, bound, key_arity, record_count   varints
    records: key_arity key integers, numerator, denominator  (sorted by key)

Jacobi tables use key_arity 2 with keys (D, r mod 2m) and bound = disc_bound;
Siegel tables use key_arity 3 with reduced keys (n, r, m), index 0, and
bound = det4_bound.  Round trips are exact and byte-stable: save(load(x))
equals x bit for bit.
"""

from __future__ import annotations

import io
import os
from fractions import Fraction

from .jacobi import JacobiTable
from .qseries import _as_exact
from .siegel import SiegelTable

MAGIC = b"SSCT"
FORMAT_VERSION = 1


class CacheFormatError(ValueError):
    pass


class CacheVersionError(CacheFormatError):
    pass


def write_varint(buf: io.BytesIO, n: int) -> None:
    # zigzag: nonneg -> 2n, negative -> -2n-1; then 7-bit little-endian groups
    u = (-2 * n - 1) if n < 0 else 2 * n
    while True:
        byte = u & 0x7F
        u >>= 7
        if u:
            buf.write(bytes((byte | 0x80,)))
        else:
            buf.write(bytes((byte,)))
            return


def read_varint(buf: io.BufferedReader) -> int:
    u = 0
    shift = 0
    while True:
        b = buf.read(1)
        if not b:
            raise CacheFormatError("truncated varint")
        byte = b[0]
        u |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            break
    return -(u + 1) // 2 if u & 1 else u // 2


def _write_header(buf, form_id: str, weight: int, index: int, bound: int, arity: int, count: int):
    buf.write(MAGIC)
    write_varint(buf, FORMAT_VERSION)
    raw = form_id.encode("utf-8")
    write_varint(buf, len(raw))
    buf.write(raw)
    for v in (weight, index, bound, arity, count):
        write_varint(buf, v)


def _read_header(buf):
    if buf.read(4) != MAGIC:
        raise CacheFormatError("bad magic")
    version = read_varint(buf)
    if version != FORMAT_VERSION:
        raise CacheVersionError(f"format version {version}, expected {FORMAT_VERSION}")
    form_id = buf.read(read_varint(buf)).decode("utf-8")
    weight, index, bound, arity, count = (read_varint(buf) for _ in range(5))
    return form_id, weight, index, bound, arity, count


def _num_den(v) -> tuple[int, int]:
    f = Fraction(v)
    return f.numerator, f.denominator


def save_jacobi(path: str | os.PathLike, table: JacobiTable, form_id: str) -> None:
    buf = io.BytesIO()
    items = sorted(table.coeffs.items())
    _write_header(buf, form_id, table.weight, table.index, table.disc_bound, 2, len(items))
    for (d, r), v in items:
        num, den = _num_den(v)
        for x in (d, r, num, den):
            write_varint(buf, x)
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())


def save_siegel(path: str | os.PathLike, table: SiegelTable, form_id: str) -> None:
    buf = io.BytesIO()
    items = sorted(table.coeffs.items())
    _write_header(buf, form_id, table.weight, 0, table.det4_bound, 3, len(items))
    for (n, r, m), v in items:
        num, den = _num_den(v)
        for x in (n, r, m, num, den):
            write_varint(buf, x)
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())


def load(path: str | os.PathLike) -> tuple[str, JacobiTable | SiegelTable]:
    """Read a cache file; the key arity decides the table kind."""
    with open(path, "rb") as fh:
        form_id, weight, index, bound, arity, count = _read_header(fh)
        if arity == 2:
            coeffs = {}
            for _ in range(count):
                d, r, num, den = (read_varint(fh) for _ in range(4))
                coeffs[(d, r)] = _as_exact(Fraction(num, den))
            return form_id, JacobiTable(weight, index, bound, coeffs)
        if arity == 3:
            scoeffs = {}
            for _ in range(count):
                n, r, m, num, den = (read_varint(fh) for _ in range(5))
                scoeffs[(n, r, m)] = _as_exact(Fraction(num, den))
            return form_id, SiegelTable(weight, bound, scoeffs, source=form_id)
        raise CacheFormatError(f"unsupported key arity {arity}")
