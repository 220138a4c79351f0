"""Content-addressed JSON cache for computed artifacts."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import ENGINE_VERSION

KINDS = ("ptau", "ahat", "akpoly", "cert")
ENV_VAR = "CHARPOLY_CACHE"


def canonical_dumps(obj) -> str:
    """Byte-stable JSON encoding."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def cache_key(kind: str, params: dict, trunc: int | None = None) -> str:
    body = {"kind": kind, "params": params, "engine": ENGINE_VERSION, "trunc": trunc}
    return hashlib.sha256(canonical_dumps(body).encode()).hexdigest()


def resolve_dir(cli_value: str | None) -> Path | None:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(cli_value) if cli_value else None


class Cache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root is not None else None

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def path(self, kind: str, key: str) -> Path:
        if kind not in KINDS:
            raise ValueError(f"unknown cache kind {kind!r}")
        return self.root / kind / f"{key}.json"

    def get(self, kind: str, params: dict, trunc: int | None = None):
        if not self.enabled:
            return None
        p = self.path(kind, cache_key(kind, params, trunc))
        if not p.exists():
            return None
        entry = json.loads(p.read_text())
        if entry.get("engine_version") != ENGINE_VERSION:
            return None
        return entry["payload"]

    def put(self, kind: str, params: dict, payload, trunc: int | None = None) -> Path | None:
        if not self.enabled:
            return None
        key = cache_key(kind, params, trunc)
        p = self.path(kind, key)
        p.parent.mkdir(parents=True, exist_ok=True)
        entry = {"kind": kind, "key": key, "params": params, "trunc": trunc,
                 "engine_version": ENGINE_VERSION, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_dumps(entry))
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p

    def fetch(self, kind: str, params: dict, compute, trunc: int | None = None):
        """Return the cached payload, computing and storing it on a miss."""
        hit = self.get(kind, params, trunc)
        if hit is not None:
            return hit
        payload = compute()
        self.put(kind, params, payload, trunc)
        return payload
