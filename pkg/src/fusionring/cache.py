"""Append-only JSON-lines cache for cohomology results.

Each line is ``{"version": V, "key": ..., "entry": ...}``.  Lines with a
different version are skipped; an unreadable file is ignored with a warning
so a bad cache can cost time but never produce a wrong answer.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

CACHE_VERSION = 1
ENV_VAR = "FUSIONRING_CACHE"

log = logging.getLogger(__name__)


def cache_key(group_digest: str, subgroup_digest: str, modulus: int, coefficients: str = "k^x") -> str:
    return f"{group_digest}:{subgroup_digest}:{modulus}:{coefficients}"


class H2Cache:
    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path else None
        self._entries: dict[str, dict] = {}
        self.enabled = self.path is not None
        if self.enabled and self.path.exists():
            self._load()

    def _load(self):
        try:
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    rec = json.loads(line)
                    if rec.get("version") != CACHE_VERSION:
                        continue
                    self._entries.setdefault(rec["key"], rec["entry"])
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
            log.warning("ignoring unreadable cache %s: %s", self.path, exc)
            self._entries.clear()
            self.enabled = False

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def get(self, key: str) -> dict | None:
        return self._entries.get(key)

    def put(self, key: str, entry: dict):
        """Store ``entry`` unless ``key`` is already present (entries are immutable)."""
        if key in self._entries:
            return
        self._entries[key] = entry
        if not self.enabled:
            return
        line = json.dumps({"version": CACHE_VERSION, "key": key, "entry": entry},
                          sort_keys=True, separators=(",", ":"))
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(line + "\n")
        except OSError as exc:
            log.warning("cache write failed for %s: %s", self.path, exc)


def cache_get(cache: H2Cache | None, key: str) -> dict | None:
    return cache.get(key) if cache is not None else None


def cache_put(cache: H2Cache | None, key: str, entry: dict):
    if cache is not None:
        cache.put(key, entry)


def resolve_cache_path(cli_path: str | None) -> str | None:
    """``FUSIONRING_CACHE`` overrides ``--cache``."""
    return os.environ.get(ENV_VAR) or cli_path
