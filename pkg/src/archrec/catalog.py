"""Curated knowledge base of architectural patterns.

Each record carries the eight descriptive features used for scoring
(definition, context, forces, solution, consequences, variants, known
applications) plus a provenance label.  Catalogs are immutable after load
and always iterate in pattern-name order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from pathlib import Path

from .errors import CatalogFormatError, CatalogValidationError

_DATA_DIR = Path(__file__).resolve().parent / "data"

REQUIRED_FEATURES = (
    "basic_definition",
    "context",
    "forces",
    "solution",
    "consequences",
    "known_applications",
)
RECORD_FIELDS = (
    "pattern_name",
    "basic_definition",
    "context",
    "forces",
    "solution",
    "consequences",
    "variants",
    "known_applications",
    "source",
)


@dataclass(frozen=True)
class PatternRecord:
    pattern_name: str
    basic_definition: str
    context: str
    forces: str
    solution: str
    consequences: str
    variants: str
    known_applications: str
    source: str = ""

    def feature(self, name: str) -> str:
        """Feature text by field name (used by the scoring mapping)."""
        if name not in RECORD_FIELDS or name == "pattern_name":
            raise KeyError(f"unknown pattern feature {name!r}")
        return getattr(self, name)


@dataclass(frozen=True)
class PatternCatalog:
    records: tuple[PatternRecord, ...]
    version: str = ""

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def get(self, name: str) -> PatternRecord | None:
        """Exact, case-sensitive lookup; None when absent."""
        for record in self.records:
            if record.pattern_name == name:
                return record
        return None

    def names(self) -> list[str]:
        return [r.pattern_name for r in self.records]


def get_pattern(catalog: PatternCatalog, name: str) -> PatternRecord | None:
    return catalog.get(name)


def _record_from_dict(raw: dict, locator: str) -> PatternRecord:
    if not isinstance(raw, dict):
        raise CatalogFormatError(f"{locator}: record is not an object")
    name = raw.get("pattern_name", "")
    if not isinstance(name, str) or not name.strip():
        raise CatalogValidationError(f"{locator}: missing or empty field 'pattern_name'")
    values = {}
    for fld in RECORD_FIELDS:
        value = raw.get(fld, "")
        if not isinstance(value, str):
            raise CatalogValidationError(
                f"{locator} (pattern_name={name!r}): field {fld!r} must be text"
            )
        values[fld] = value
    for fld in REQUIRED_FEATURES:
        if not values[fld].strip():
            raise CatalogValidationError(
                f"{locator} (pattern_name={name!r}): missing required field {fld!r}"
            )
    return PatternRecord(**values)


def load_catalog(path: str | Path) -> PatternCatalog:
    """Load and validate a catalog document (JSON).

    Accepts either a top-level array of records or an object with
    `version` and `patterns` keys.  Records come back sorted by name.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CatalogFormatError(f"cannot read catalog {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(
            f"catalog {path} is not valid JSON (line {exc.lineno}, column {exc.colno})"
        ) from exc

    if isinstance(raw, list):
        version, entries = "", raw
    elif isinstance(raw, dict):
        version = str(raw.get("version", ""))
        entries = raw.get("patterns")
        if not isinstance(entries, list):
            raise CatalogFormatError(f"catalog {path}: expected a 'patterns' array")
    else:
        raise CatalogFormatError(f"catalog {path}: top level must be an array or object")

    records = []
    seen: set[str] = set()
    for idx, entry in enumerate(entries):
        record = _record_from_dict(entry, f"record {idx}")
        if record.pattern_name in seen:
            raise CatalogValidationError(
                f"duplicate pattern_name {record.pattern_name!r} in catalog {path}"
            )
        seen.add(record.pattern_name)
        records.append(record)

    records.sort(key=lambda r: r.pattern_name)
    return PatternCatalog(records=tuple(records), version=version)


def save_catalog(catalog: PatternCatalog, path: str | Path) -> None:
    """Write a catalog back out; load_catalog(save_catalog(c)) == c."""
    payload = {
        "version": catalog.version,
        "patterns": [asdict(r) for r in catalog.records],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def builtin_catalog_path() -> Path:
    return _DATA_DIR / "posa_catalog.json"


def load_builtin_catalog() -> PatternCatalog:
    return load_catalog(builtin_catalog_path())
