"""Persistent value cache: JSON-lines records, monotone in precision.

Each record is one line {"key": str, "digits": int, "re": str, "im": str,
"timestamp": float}.  The file is append-only; on load, the entry with the
most digits wins per key (last writer wins on ties), so compaction is just
a rewrite of the in-memory state.  Corrupt lines are counted and skipped:
an interrupted append can only damage the final line, never committed ones.
"""

from __future__ import annotations

import json
import os
import threading
import time
from typing import Dict, Optional, Tuple

import mpmath as mp

from .errors import CacheIOError
from .hp import HPComplex


class ValueCache:
    """In-memory map key -> (digits, re_str, im_str) with optional jsonl backing.

    get() hits only when the stored digits cover the request; put() keeps an
    entry only when it is strictly more precise than what is stored.  Reads
    are lock-free on the dict snapshot; writes are serialized.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._entries: Dict[str, Tuple[int, str, str]] = {}
        self._lock = threading.Lock()
        self.corrupt_lines = 0
        if path and os.path.exists(path):
            self._load(path)

    def _load(self, path: str) -> None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                        key = rec["key"]
                        digits = int(rec["digits"])
                        re_s, im_s = str(rec["re"]), str(rec["im"])
                        float(re_s), float(im_s)  # syntax check only
                    except (ValueError, KeyError, TypeError, OverflowError):
                        self.corrupt_lines += 1
                        continue
                    cur = self._entries.get(key)
                    if cur is None or digits >= cur[0]:
                        self._entries[key] = (digits, re_s, im_s)
        except OSError as exc:
            raise CacheIOError(f"cannot read cache {path}: {exc}") from exc

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: str, digits: int) -> Optional[HPComplex]:
        """Return the cached value if stored digits >= requested digits."""
        hit = self._entries.get(key)
        if hit is None or hit[0] < digits:
            return None
        stored_digits, re_s, im_s = hit
        return HPComplex(mp.mpf(re_s), mp.mpf(im_s), mp.mpf(10) ** (-stored_digits))

    def put(self, key: str, digits: int, value: HPComplex) -> bool:
        """Store value claiming `digits`; keeps only strict precision gains."""
        with self._lock:
            cur = self._entries.get(key)
            if cur is not None and cur[0] >= digits:
                return False
            re_s = mp.nstr(value.re, digits + 10, strip_zeros=False)
            im_s = mp.nstr(value.im, digits + 10, strip_zeros=False)
            self._entries[key] = (digits, re_s, im_s)
            if self.path:
                rec = {
                    "key": key,
                    "digits": digits,
                    "re": re_s,
                    "im": im_s,
                    "timestamp": time.time(),
                }
                try:
                    with open(self.path, "a", encoding="utf-8") as fh:
                        fh.write(json.dumps(rec, sort_keys=True) + "\n")
                        fh.flush()
                except OSError as exc:
                    raise CacheIOError(f"cannot append to cache {self.path}: {exc}") from exc
            return True

    def compact(self) -> None:
        """Rewrite the backing file with one record per key."""
        if not self.path:
            return
        with self._lock:
            tmp = self.path + ".tmp"
            try:
                with open(tmp, "w", encoding="utf-8") as fh:
                    for key, (digits, re_s, im_s) in sorted(self._entries.items()):
                        rec = {
                            "key": key,
                            "digits": digits,
                            "re": re_s,
                            "im": im_s,
                            "timestamp": time.time(),
                        }
                        fh.write(json.dumps(rec, sort_keys=True) + "\n")
                os.replace(tmp, self.path)
            except OSError as exc:
                raise CacheIOError(f"cannot compact cache {self.path}: {exc}") from exc
