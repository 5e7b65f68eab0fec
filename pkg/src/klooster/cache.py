"""On-disk cache for sieved divisor-count tables.

Format (little-endian, fixed width):

    bytes 0..5   magic  b"TAUSV1"
    byte  6      version 0x01
    bytes 7..14  X as uint64
    then exactly X uint32 values tau(1) .. tau(X)

Anything that fails magic, version, or length validation raises
`CorruptCache`; `load_or_build` treats that as a miss and rebuilds,
never silently reusing a damaged file.
"""

from __future__ import annotations

import os
import struct
from pathlib import Path

import numpy as np

from .divisor import TauTable, tau_sieve
from .errors import CorruptCache

MAGIC = b"TAUSV1"
VERSION = 1
_HEADER = struct.Struct("<6sBQ")

ENV_CACHE_DIR = "KLOOSTER_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "klooster"


def cache_path(X: int, directory: Path | str | None = None) -> Path:
    base = Path(directory) if directory is not None else default_cache_dir()
    return base / f"tau_{X}.tausv"


def write_cache(table: TauTable, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.ascontiguousarray(table.values[1:table.limit + 1], dtype="<u4")
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, table.limit))
        fh.write(data.tobytes())
    os.replace(tmp, path)


def read_cache(path: Path | str) -> TauTable:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise CorruptCache(f"cannot read {path}: {exc}") from exc
    if len(raw) < _HEADER.size:
        raise CorruptCache(f"{path}: shorter than the header")
    magic, version, limit = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise CorruptCache(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise CorruptCache(f"{path}: unsupported version {version}")
    expected = _HEADER.size + 4 * limit
    if len(raw) != expected:
        raise CorruptCache(f"{path}: length {len(raw)} != expected {expected}")
    body = np.frombuffer(raw, dtype="<u4", offset=_HEADER.size)
    values = np.zeros(limit + 1, dtype=np.uint32)
    values[1:] = body
    return TauTable(limit=int(limit), values=values)


def load_or_build(X: int, path: Path | str | None = None,
                  directory: Path | str | None = None) -> TauTable:
    """Return the table for limit X, reading the cache when it validates.

    A corrupt or missing file triggers a rebuild and rewrite.  A cached
    table with a larger limit is not reused: the file is keyed by X.
    """
    target = Path(path) if path is not None else cache_path(X, directory)
    if target.exists():
        try:
            table = read_cache(target)
            if table.limit == X:
                return table
        except CorruptCache:
            pass
    table = tau_sieve(X)
    write_cache(table, target)
    return table


def cache_roundtrip(X: int, path: Path | str) -> TauTable:
    """Build, write, and re-read the table for X, returning the re-read copy."""
    write_cache(tau_sieve(X), path)
    return read_cache(path)
