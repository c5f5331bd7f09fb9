"""JSON-lines result cache for expensive curve computations.

Records are keyed by the full parameter tuple (l, exponents, q, z) plus a
schema version; lines whose version does not match are skipped entirely so
that stale layouts can never be misread as current data.  Cached and
uncached runs must produce identical command output — the cache stores
derived numbers only, never anything that feeds formatting decisions.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

SCHEMA_VERSION = 1
CACHE_ENV_VAR = "HFQ_CACHE_DIR"
CACHE_FILENAME = "hfq-cache.jsonl"

_VALUE_FIELDS = ("counts", "lpoly", "f_values")


def cache_key(l: int, exponents, q: int, z: int) -> str:
    e1, e2, e3 = (int(e) for e in exponents)
    return f"{l}:{e1},{e2},{e3}:{q}:{z}"


@dataclass
class CacheRecord:
    """One cached result bundle for a (l, exponents, q, z) key.

    counts holds N_1..N_k for however many k have been computed; lpoly the
    L-polynomial coefficients in ascending order; f_values a list of
    {"order", "coeffs"} cyclotomic dumps (index i = 1..l-1).
    """

    key: str
    l: int
    exponents: list
    q: int
    z: int
    created_at: str
    counts: list | None = None
    lpoly: list | None = None
    f_values: list | None = None
    schema_version: int = SCHEMA_VERSION

    def to_json_dict(self) -> dict:
        d = {
            "schema_version": self.schema_version,
            "key": self.key,
            "l": self.l,
            "exponents": list(self.exponents),
            "q": self.q,
            "z": self.z,
            "created_at": self.created_at,
        }
        for name in _VALUE_FIELDS:
            value = getattr(self, name)
            if value is not None:
                d[name] = value
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "CacheRecord":
        return cls(
            key=d["key"],
            l=d["l"],
            exponents=list(d["exponents"]),
            q=d["q"],
            z=d["z"],
            created_at=d.get("created_at", ""),
            counts=d.get("counts"),
            lpoly=d.get("lpoly"),
            f_values=d.get("f_values"),
            schema_version=d.get("schema_version", SCHEMA_VERSION),
        )


def make_record(l: int, exponents, q: int, z: int, *,
                counts=None, lpoly=None, f_values=None) -> CacheRecord:
    return CacheRecord(
        key=cache_key(l, exponents, q, z),
        l=l,
        exponents=[int(e) for e in exponents],
        q=q,
        z=z,
        created_at=datetime.now(timezone.utc).isoformat(),
        counts=None if counts is None else [int(n) for n in counts],
        lpoly=None if lpoly is None else [int(c) for c in lpoly],
        f_values=f_values,
    )


class ResultCache:
    """Single-file JSONL cache with one serialized writer.

    A directory of None disables caching; get() then always misses and
    put() is a no-op, so call sites need no branching.
    """

    def __init__(self, directory: str | Path | None):
        self._lock = threading.Lock()
        self._records: dict[str, CacheRecord] = {}
        if directory is None:
            self.path = None
            return
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.path = directory / CACHE_FILENAME
        if self.path.exists():
            self._load()

    @classmethod
    def from_flags(cls, cache_dir: str | None) -> "ResultCache":
        """Resolve the cache directory from a flag or the environment."""
        directory = cache_dir or os.environ.get(CACHE_ENV_VAR)
        return cls(directory)

    @property
    def enabled(self) -> bool:
        return self.path is not None

    def _load(self):
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    d = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if d.get("schema_version") != SCHEMA_VERSION:
                    continue
                if not d.get("key"):
                    continue
                self._records[d["key"]] = CacheRecord.from_json_dict(d)

    def get(self, l: int, exponents, q: int, z: int) -> CacheRecord | None:
        if not self.enabled:
            return None
        return self._records.get(cache_key(l, exponents, q, z))

    def put(self, record: CacheRecord):
        """Insert or extend the record for the key.

        New keys are appended; extending an existing key rewrites the file
        so that every key appears on exactly one line.
        """
        if not self.enabled:
            return
        with self._lock:
            existing = self._records.get(record.key)
            if existing is None:
                self._records[record.key] = record
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record.to_json_dict(),
                                        sort_keys=True) + "\n")
                return
            changed = False
            for name in _VALUE_FIELDS:
                value = getattr(record, name)
                if value is not None and value != getattr(existing, name):
                    setattr(existing, name, value)
                    changed = True
            if not changed:
                return
            tmp = self.path.with_suffix(".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                for k in sorted(self._records):
                    fh.write(json.dumps(self._records[k].to_json_dict(),
                                        sort_keys=True) + "\n")
            tmp.replace(self.path)
