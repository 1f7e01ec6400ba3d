"""Theories on disk: a directory of ``.why`` files plus a content-addressed cache.

The theory name is the file stem; names missing from the directory fall back
to the theories shipped with the package. Reports and evidence live under
``.why-cache/`` inside the registry directory; theory files are never written.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .answers import (
    DEFAULT_MAX_DOMAIN, Comparison, Evidence, comparison_json, compare_theories, evidence_text,
)
from .budget import DEFAULT_BUDGET, Budget
from .logic import LogicError, Theory
from .parser import parse_theory

CACHE_DIR = ".why-cache"
SHIPPED = Path(__file__).parent / "specrel" / "data"
REPORT_VERSION = "v1"


class UnknownTheory(LogicError):
    pass


def atomic_write(path: Path, data: str) -> None:
    """Write ``data`` to ``path`` via a temporary file and a rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sha256(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


class Registry:
    def __init__(self, root: str | os.PathLike) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.cache = self.root / CACHE_DIR
        self._loaded: dict[str, tuple[str, Theory]] = {}

    def names(self) -> list[str]:
        return sorted({p.stem for p in self.root.glob("*.why")} | {p.stem for p in SHIPPED.glob("*.why")})

    def path(self, name: str) -> Path:
        """The registry file for ``name``; the shipped theories fill in when absent."""
        p = self.root / f"{name}.why"
        if p.is_file():
            return p
        shipped = SHIPPED / f"{name}.why"
        if shipped.is_file():
            return shipped
        raise UnknownTheory(f"no theory {name!r} in registry {self.root} "
                            f"(available: {', '.join(self.names()) or 'none'})")

    def install_shipped(self) -> list[str]:
        """Copy the shipped theories into the registry without overwriting anything."""
        copied = []
        for src in sorted(SHIPPED.glob("*.why")):
            target = self.root / src.name
            if not target.exists():
                atomic_write(target, src.read_text(encoding="utf-8"))
                copied.append(src.stem)
        return copied

    def content_hash(self, name: str) -> str:
        return sha256(self.path(name).read_bytes())

    def load(self, name: str) -> Theory:
        digest = self.content_hash(name)
        hit = self._loaded.get(name)
        if hit is not None and hit[0] == digest:
            return hit[1]
        p = self.path(name)
        th = parse_theory(p.read_text(encoding="utf-8"), str(p))
        self._loaded[name] = (digest, th)
        return th

    # evidence and report cache ---------------------------------------------------
    def write_evidence(self, e: Evidence) -> str | None:
        """Store the evidence payload under its content hash; return the registry-relative path."""
        out = evidence_text(e)
        if out is None:
            return None
        text, suffix = out
        rel = Path(CACHE_DIR) / "evidence" / f"{sha256(text)[:20]}.{suffix}"
        target = self.root / rel
        if not target.exists():
            atomic_write(target, text)
        return rel.as_posix()

    def report_key(self, left: str, right: str, budget: Budget, max_domain: int, mode: str) -> str:
        payload = json.dumps({
            "version": REPORT_VERSION, "left": [left, self.content_hash(left)],
            "right": [right, self.content_hash(right)], "budget": budget.as_dict(),
            "max_domain": max_domain, "mode": mode,
        }, sort_keys=True)
        return sha256(payload)

    def cached_report(self, key: str) -> dict | None:
        p = self.cache / "reports" / f"{key}.json"
        if not p.is_file():
            return None
        try:
            return json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            return None

    def store_report(self, key: str, doc: dict) -> None:
        atomic_write(self.cache / "reports" / f"{key}.json", dumps_report(doc))


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class ComparisonReport:
    document: dict
    comparison: Comparison | None  # None when served from the cache
    cached: bool


def compare(left: str, right: str, reg: Registry, b: Budget = DEFAULT_BUDGET,
            mode: str = "all", max_domain: int = DEFAULT_MAX_DOMAIN, use_cache: bool = True) -> ComparisonReport:
    """The full comparison report for two registry theories, cached by content hash."""
    tl, tr = reg.load(left), reg.load(right)
    key = reg.report_key(left, right, b, max_domain, mode)
    if use_cache:
        doc = reg.cached_report(key)
        if doc is not None:
            return ComparisonReport(doc, None, True)
    c = compare_theories(tl, tr, b, mode, max_domain)
    doc = comparison_json(c, b, max_domain, reg.write_evidence)
    doc["left"], doc["right"] = left, right
    reg.store_report(key, doc)
    return ComparisonReport(doc, c, False)
