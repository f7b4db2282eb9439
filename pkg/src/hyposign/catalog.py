"""Append-only JSON Lines store of verified witnesses.

One record per line, keyed by (pattern, order word).  The first record
written for a key wins; later duplicates are ignored.  Every record is
re-verified in exact arithmetic when the file is opened, and records that
fail are quarantined (kept out of the index, reported via ``warnings``).
"""
from __future__ import annotations

import json
import os
import threading
import warnings
from pathlib import Path
from typing import Any

from .signpattern import OrderWord, SignPattern
from .witness import Witness, verify_witness

__all__ = ["Catalog", "CatalogError", "SCHEMA_VERSION", "ENV_VAR", "default_path"]

SCHEMA_VERSION = 1
ENV_VAR = "HYPOSIGN_CATALOG"


class CatalogError(ValueError):
    pass


def default_path() -> Path:
    return Path(os.environ.get(ENV_VAR, "catalog.jsonl"))


def _key(pattern: SignPattern, word: OrderWord) -> tuple[str, str]:
    return pattern.render("first"), word.letters


class Catalog:
    """Single-writer, multi-reader witness store backed by one JSONL file."""

    def __init__(self, path: str | Path | None = None) -> None:
        self.path = Path(path) if path is not None else default_path()
        self._index: dict[tuple[str, str], Witness] = {}
        self._lock = threading.Lock()
        self.quarantined: list[dict[str, Any]] = []
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    w = Witness.from_json(rec["witness"])
                    report = verify_witness(w)
                    problem = None if report.ok else "; ".join(report.violations)
                except (json.JSONDecodeError, KeyError, ValueError, ZeroDivisionError) as exc:
                    rec, w, problem = {"raw": line}, None, f"unreadable: {exc}"
                if problem is not None:
                    self.quarantined.append({"line": lineno, "reason": problem, "record": rec})
                    warnings.warn(f"{self.path}:{lineno}: quarantined catalog record ({problem})")
                    continue
                self._index.setdefault(_key(w.pattern, w.word), w)

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, key: tuple[SignPattern, OrderWord]) -> bool:
        return _key(*key) in self._index

    def put(self, witness: Witness, created_by: dict[str, Any] | None = None) -> bool:
        """Append ``witness``; returns False if its key is already present."""
        report = verify_witness(witness)
        if not report.ok:
            raise CatalogError(f"refusing unverified witness: {report.violations}")
        key = _key(witness.pattern, witness.word)
        with self._lock:
            if key in self._index:
                return False
            record = {
                "schema": SCHEMA_VERSION,
                "key": {"pattern": key[0], "word": key[1]},
                "witness": witness.to_json(),
                "created_by": created_by or {
                    "method": witness.meta.get("method", "unknown"),
                    "seed": witness.meta.get("seed"),
                },
            }
            if self.path.parent and not self.path.parent.exists():
                self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
            self._index[key] = witness
        return True

    def get(self, pattern: SignPattern, word: OrderWord | str) -> Witness | None:
        word = OrderWord(word) if isinstance(word, str) else word
        return self._index.get(_key(pattern, word))

    def scan(self, pattern: SignPattern) -> list[Witness]:
        text = pattern.render("first")
        return [w for (p, _), w in sorted(self._index.items()) if p == text]
