"""Content-addressed result cache: one file per key, versioned header."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

CACHE_FORMAT = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def record_key(command: str, params: dict, code_version: str) -> str:
    payload = canonical_json({"command": command, "params": params, "version": code_version})
    return hashlib.sha256(payload.encode()).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get("OGC_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ogc"


class CacheCorruption(RuntimeError):
    def __init__(self, key, path, reason):
        super().__init__(f"cache entry {key} at {path} is corrupt: {reason}")
        self.key = key


def load(cache_dir: Path, key: str, code_version: str):
    path = Path(cache_dir) / f"{key}.json"
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        raise CacheCorruption(key, path, str(exc))
    if not isinstance(data, dict) or data.get("cache_format") != CACHE_FORMAT:
        raise CacheCorruption(key, path, "unknown cache format")
    if data.get("code_version") != code_version or data.get("key") != key:
        raise CacheCorruption(key, path, "header mismatch")
    if "record" not in data:
        raise CacheCorruption(key, path, "missing record")
    return data["record"]


def store(cache_dir: Path, key: str, code_version: str, record: dict):
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    body = {
        "cache_format": CACHE_FORMAT,
        "code_version": code_version,
        "key": key,
        "record": record,
    }
    path = cache_dir / f"{key}.json"
    tmp = path.with_suffix(".tmp")
    tmp.write_text(canonical_json(body))
    tmp.replace(path)
