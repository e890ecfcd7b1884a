"""Append-only JSON-lines store keyed by content digest, plus run manifests."""

from __future__ import annotations

import hashlib
import json
import os
import platform
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .errors import StoreCorrupt

try:
    import fcntl
except ImportError:  # pragma: no cover - non-POSIX
    fcntl = None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


class Store:
    """One JSON-lines file per record kind inside a directory.

    Each line is {"digest", "kind", "payload"}; the digest covers the
    canonical payload, so edits to a stored line are detected on read.
    """

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, kind: str) -> Path:
        return self.root / f"{kind}s.jsonl"

    def append(self, kind: str, payload) -> str:
        d = digest(payload)
        line = canonical_json({"digest": d, "kind": kind, "payload": payload})
        with open(self.path(kind), "a", encoding="utf-8") as fh:
            if fcntl is not None:
                fcntl.flock(fh, fcntl.LOCK_EX)
            fh.write(line + "\n")
            if fcntl is not None:
                fcntl.flock(fh, fcntl.LOCK_UN)
        return d

    def records(self, kind: str):
        p = self.path(kind)
        if not p.exists():
            return []
        out = []
        with open(p, encoding="utf-8") as fh:
            for no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    raise StoreCorrupt(f"{p.name} line {no}: not JSON") from None
                if digest(rec.get("payload")) != rec.get("digest"):
                    raise StoreCorrupt(f"{p.name} line {no}: digest mismatch")
                out.append(rec)
        return out

    def get(self, kind: str, key: str):
        """Record whose digest starts with ``key``."""
        hits = [r for r in self.records(kind) if r["digest"].startswith(key)]
        if not hits:
            raise KeyError(key)
        return hits[-1]


@dataclass
class RunManifest:
    command: str
    parameters: dict
    inputs: dict = dc_field(default_factory=dict)
    fields: list = dc_field(default_factory=list)
    outcome: str = "success"
    exit_code: int = 0
    wall_time: float = 0.0
    version: str = ""
    result_digest: str | None = None

    def to_json(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "inputs": self.inputs,
            "fields": sorted(set(self.fields)),
            "outcome": self.outcome,
            "exit_code": self.exit_code,
            "wall_time": round(self.wall_time, 4),
            "version": self.version,
            "python": platform.python_version(),
            "result_digest": self.result_digest,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "pid": os.getpid(),
        }
