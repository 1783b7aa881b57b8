"""On-disk cache of computed subspace bases.

Files live in ``$POISSON_INV_CACHE`` (default ``./cache``), one JSON document
per space.  Writes go to a temporary file in the same directory followed by an
atomic rename, so concurrent readers never see a partial file.  Each file
records the format version and the dimension; a mismatch on load is treated
as corruption and the entry is ignored.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
ENV_VAR = "POISSON_INV_CACHE"


class CacheError(OSError):
    """The cache directory cannot be created or written."""


def cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, "./cache"))


def enabled() -> bool:
    return os.environ.get(ENV_VAR, "") != "off"


def _path(tag: str) -> Path:
    return cache_dir() / f"{tag}.json"


def load(tag: str) -> dict | None:
    if not enabled():
        return None
    path = _path(tag)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        return None
    except (OSError, ValueError) as exc:
        log.warning("ignoring unreadable cache entry %s: %s", path, exc)
        return None
    if doc.get("format") != FORMAT_VERSION or doc.get("dim") != len(doc.get("rows", ())):
        log.warning("ignoring stale or corrupt cache entry %s", path)
        return None
    return doc


def store(tag: str, doc: dict) -> None:
    if not enabled():
        return
    directory = cache_dir()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{tag}.", suffix=".tmp", dir=directory)
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(dict(doc, format=FORMAT_VERSION), fh, separators=(",", ":"))
        os.replace(tmp, _path(tag))
    except OSError as exc:
        raise CacheError(f"cannot write cache entry in {directory}: {exc}") from exc


def check_writable() -> None:
    """Raise CacheError when the cache directory cannot be used."""
    if not enabled():
        return
    directory = cache_dir()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=".probe.", dir=directory)
        os.close(fd)
        os.remove(tmp)
    except OSError as exc:
        raise CacheError(f"cache directory {directory} is not writable: {exc}") from exc
