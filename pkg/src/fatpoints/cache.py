"""On-disk result cache: content-hash keyed JSON records, verified on load."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENV_CACHE_DIR = "FATPOINTS_CACHE_DIR"


def canonical_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class ResultCache:
    """One JSON file per key hash; each record embeds its key for verification."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: dict) -> Path:
        digest = hashlib.sha256(canonical_json(key).encode()).hexdigest()
        return self.directory / f"{digest}.json"

    def get(self, key: dict):
        path = self._path(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if record.get("key") != key:
            return None  # hash collision or stale file: recompute
        return record.get("value")

    def put(self, key: dict, value) -> None:
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "value": value}, sort_keys=True))
        os.replace(tmp, path)  # atomic: concurrent writers land identical content


def cache_from_env(explicit_dir: str | None = None) -> ResultCache | None:
    directory = explicit_dir or os.environ.get(ENV_CACHE_DIR)
    return ResultCache(directory) if directory else None
