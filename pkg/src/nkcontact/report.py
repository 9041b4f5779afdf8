"""Check results and their text/JSON serialization."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import __version__
from .scalar import Scalar

__all__ = [
    "PASS",
    "FAIL",
    "NA",
    "ERROR",
    "Witness",
    "CheckEntry",
    "CheckReport",
    "residual_entry",
    "first_residual",
]

PASS, FAIL, NA, ERROR = "pass", "fail", "not-applicable", "error"
STATUSES = (PASS, FAIL, NA, ERROR)

Derived = Union[Scalar, str, bool, int]


@dataclass(frozen=True)
class Witness:
    """Where a residual is nonzero: a label, frame indices and the residual value."""

    indices: tuple[str, ...]
    residual: Scalar
    term: Optional[str] = None

    def to_json(self) -> dict:
        out = {"indices": list(self.indices), "residual": str(self.residual)}
        if self.term:
            out["term"] = self.term
        return out

    def __str__(self):
        where = f"{self.term}" if self.term else ""
        return f"{where}[{','.join(self.indices)}] residual {self.residual}"


@dataclass
class CheckEntry:
    id: str
    status: str
    witness: Optional[Witness] = None
    derived: dict[str, Derived] = field(default_factory=dict)
    note: Optional[str] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"fail entry {self.id!r} needs a witness")

    @property
    def ok(self) -> bool:
        return self.status in (PASS, NA)

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.derived:
            out["derived"] = {k: _json_value(v) for k, v in sorted(self.derived.items())}
        if self.note:
            out["note"] = self.note
        return out

    def line(self) -> str:
        text = f"{self.status.upper():<15}{self.id}"
        if self.derived:
            text += "  " + ", ".join(f"{k} = {_json_value(v)}" for k, v in sorted(self.derived.items()))
        if self.witness is not None:
            text += f"  witness {self.witness}"
        if self.note:
            text += f"  ({self.note})"
        return text


def _json_value(v: Derived):
    if isinstance(v, (bool, int)) and not isinstance(v, Scalar):
        return v
    return str(v)


@dataclass
class CheckReport:
    manifold_name: str
    convention: dict
    entries: list[CheckEntry] = field(default_factory=list)
    engine_version: str = __version__

    def add(self, entries: Union[CheckEntry, Iterable[CheckEntry]]):
        if isinstance(entries, CheckEntry):
            entries = [entries]
        for e in entries:
            if any(x.id == e.id for x in self.entries):
                raise ValueError(f"check {e.id!r} reported twice")
            self.entries.append(e)

    def get(self, check_id: str) -> CheckEntry:
        for e in self.entries:
            if e.id == check_id:
                return e
        raise KeyError(check_id)

    def select(self, ids: Sequence[str]) -> "CheckReport":
        known = {e.id for e in self.entries}
        missing = [i for i in ids if i not in known]
        if missing:
            raise KeyError(f"unknown check id(s): {', '.join(missing)}")
        picked = [e for e in self.entries if e.id in set(ids)]
        return CheckReport(self.manifold_name, self.convention, picked, self.engine_version)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "version": self.engine_version,
            "manifold": self.manifold_name,
            "convention": self.convention,
            "checks": [e.to_json() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"

    def text(self) -> str:
        head = [f"nkcontact {self.engine_version}  manifold: {self.manifold_name}"]
        head.append("convention: " + ", ".join(f"{k}={v}" for k, v in self.convention.items()))
        return "\n".join(head + [e.line() for e in self.entries]) + "\n"


def first_residual(arr: np.ndarray, names: Sequence[str]) -> Optional[Witness]:
    """Witness for the lexicographically first nonzero entry of ``arr``."""
    if arr.ndim == 0:
        v = arr[()]
        return None if v.is_zero() else Witness((), v)
    for idx in itertools.product(*(range(n) for n in arr.shape)):
        v = arr[idx]
        if not v.is_zero():
            return Witness(tuple(names[i] for i in idx), v)
    return None


def residual_entry(check_id: str, parts, names: Sequence[str], derived=None, note=None) -> CheckEntry:
    """Pass iff every residual array in ``parts`` vanishes.

    ``parts`` is one array or a list of ``(label, array)`` pairs; the first
    nonzero component becomes the witness.
    """
    if isinstance(parts, np.ndarray):
        parts = [(None, parts)]
    for label, arr in parts:
        w = first_residual(np.asarray(arr, dtype=object), names)
        if w is not None:
            w = Witness(w.indices, w.residual, label)
            return CheckEntry(check_id, FAIL, w, dict(derived or {}), note)
    return CheckEntry(check_id, PASS, None, dict(derived or {}), note)
