"""User input template: requirements spec, NFR conflicts, software taxonomy.

Validation collects every violated limit instead of failing fast, so a
caller (CLI or HTTP layer) can report all problems at once with field
locators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    PriorityTieError,
    ResolutionRequiredError,
    SpecFormatError,
    TaxonomyError,
    VocabularyError,
)

_DATA_DIR = Path(__file__).resolve().parent / "data"

MAX_SHORT_WORDS = 25
MAX_DETAILED_WORDS = 500
MIN_USE_CASES = 1
MAX_USE_CASES = 20

USE_CASE_FIELDS = (
    "id",
    "name",
    "objective",
    "actors",
    "pre_conditions",
    "post_conditions",
    "constraints",
    "normal_flow",
    "importance_score",
)


def word_count(text: str) -> int:
    """Whitespace-delimited token count; markup is not stripped."""
    return len(text.split())


@dataclass(frozen=True)
class UseCase:
    id: str
    name: str = ""
    objective: str = ""
    actors: str = ""
    pre_conditions: str = ""
    post_conditions: str = ""
    constraints: str = ""
    normal_flow: str = ""
    importance_score: float | None = None


@dataclass(frozen=True)
class NfrItem:
    name: str
    priority: int | None = None
    free_text: str = ""

    def entail_text(self) -> str:
        """Text fed to the entailment scorer for this requirement."""
        return f"{self.name} {self.free_text}".strip()


@dataclass(frozen=True)
class RequirementsSpec:
    short_description: str
    detailed_description: str
    use_cases: tuple[UseCase, ...]
    nfrs: tuple[NfrItem, ...] = ()
    software_type: str = ""


@dataclass(frozen=True)
class ValidationIssue:
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


# ---------------------------------------------------------------------------
# Spec documents


def _use_case_from_dict(raw: dict, locator: str) -> UseCase:
    if not isinstance(raw, dict):
        raise SpecFormatError(f"{locator}: use case must be an object")
    values: dict = {}
    for fld in USE_CASE_FIELDS:
        value = raw.get(fld)
        if fld == "importance_score":
            if value is not None and not isinstance(value, (int, float)):
                raise SpecFormatError(f"{locator}.importance_score: must be a number")
            values[fld] = float(value) if value is not None else None
        else:
            if value is None:
                value = ""
            if not isinstance(value, str):
                raise SpecFormatError(f"{locator}.{fld}: must be text")
            values[fld] = value
    return UseCase(**values)


def _nfr_from_value(raw, locator: str) -> NfrItem:
    if isinstance(raw, str):
        return NfrItem(name=raw.strip().lower())
    if isinstance(raw, dict):
        name = raw.get("name")
        if not isinstance(name, str) or not name.strip():
            raise SpecFormatError(f"{locator}: NFR needs a 'name'")
        priority = raw.get("priority")
        if priority is not None and not isinstance(priority, int):
            raise SpecFormatError(f"{locator}.priority: must be an integer")
        free_text = raw.get("free_text", "")
        if not isinstance(free_text, str):
            raise SpecFormatError(f"{locator}.free_text: must be text")
        return NfrItem(name=name.strip().lower(), priority=priority, free_text=free_text)
    raise SpecFormatError(f"{locator}: NFR must be a name or an object")


def spec_from_dict(raw: dict) -> RequirementsSpec:
    if not isinstance(raw, dict):
        raise SpecFormatError("requirements document must be an object")
    short = raw.get("short_description", "")
    detailed = raw.get("detailed_description", "")
    software_type = raw.get("software_type", "")
    for fld, value in (
        ("short_description", short),
        ("detailed_description", detailed),
        ("software_type", software_type),
    ):
        if not isinstance(value, str):
            raise SpecFormatError(f"{fld}: must be text")
    raw_ucs = raw.get("use_cases", [])
    if not isinstance(raw_ucs, list):
        raise SpecFormatError("use_cases: must be an array")
    use_cases = tuple(
        _use_case_from_dict(uc, f"use_cases[{i}]") for i, uc in enumerate(raw_ucs)
    )
    raw_nfrs = raw.get("nfrs", [])
    if not isinstance(raw_nfrs, list):
        raise SpecFormatError("nfrs: must be an array")
    nfrs = tuple(_nfr_from_value(n, f"nfrs[{i}]") for i, n in enumerate(raw_nfrs))
    return RequirementsSpec(
        short_description=short,
        detailed_description=detailed,
        use_cases=use_cases,
        nfrs=nfrs,
        software_type=software_type,
    )


def spec_to_dict(spec: RequirementsSpec) -> dict:
    return {
        "short_description": spec.short_description,
        "detailed_description": spec.detailed_description,
        "use_cases": [
            {
                "id": uc.id,
                "name": uc.name,
                "objective": uc.objective,
                "actors": uc.actors,
                "pre_conditions": uc.pre_conditions,
                "post_conditions": uc.post_conditions,
                "constraints": uc.constraints,
                "normal_flow": uc.normal_flow,
                "importance_score": uc.importance_score,
            }
            for uc in spec.use_cases
        ],
        "nfrs": [
            {"name": n.name, "priority": n.priority, "free_text": n.free_text}
            for n in spec.nfrs
        ],
        "software_type": spec.software_type,
    }


def load_spec(path: str | Path) -> RequirementsSpec:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecFormatError(
            f"spec {path} is not valid JSON (line {exc.lineno}, column {exc.colno})"
        ) from exc
    return spec_from_dict(raw)


# ---------------------------------------------------------------------------
# Validation


def validate_spec(
    spec: RequirementsSpec, taxonomy: "Taxonomy"
) -> tuple[RequirementsSpec, list[ValidationIssue]]:
    """Check every input limit; returns (normalized spec, issues).

    Normalization fills in the default importance score of 1.0 for use
    cases that omit it.  The returned spec is usable iff issues is empty.
    """
    issues: list[ValidationIssue] = []

    n_short = word_count(spec.short_description)
    if n_short > MAX_SHORT_WORDS:
        issues.append(
            ValidationIssue(
                "short_description",
                f"exceeds {MAX_SHORT_WORDS} words (got {n_short})",
            )
        )
    n_detailed = word_count(spec.detailed_description)
    if n_detailed > MAX_DETAILED_WORDS:
        issues.append(
            ValidationIssue(
                "detailed_description",
                f"exceeds {MAX_DETAILED_WORDS} words (got {n_detailed})",
            )
        )

    if not MIN_USE_CASES <= len(spec.use_cases) <= MAX_USE_CASES:
        issues.append(
            ValidationIssue(
                "use_cases",
                f"count must be between {MIN_USE_CASES} and {MAX_USE_CASES} "
                f"(got {len(spec.use_cases)})",
            )
        )

    seen_ids: set[str] = set()
    normalized_ucs = []
    for i, uc in enumerate(spec.use_cases):
        if not uc.id.strip():
            issues.append(ValidationIssue(f"use_cases[{i}].id", "must be non-empty"))
        elif uc.id in seen_ids:
            issues.append(ValidationIssue(f"use_cases[{i}].id", f"duplicate id {uc.id!r}"))
        seen_ids.add(uc.id)
        if not uc.objective.strip():
            issues.append(ValidationIssue(f"use_cases[{i}].objective", "must be non-empty"))
        score = uc.importance_score
        if score is None:
            uc = replace(uc, importance_score=1.0)
        elif not 0.0 <= score <= 1.0:
            issues.append(
                ValidationIssue(
                    f"use_cases[{i}].importance_score",
                    f"must lie between 0 and 1 (got {score})",
                )
            )
        normalized_ucs.append(uc)

    if not spec.software_type.strip():
        issues.append(ValidationIssue("software_type", "must be selected"))
    else:
        try:
            taxonomy.resolve(spec.software_type)
        except TaxonomyError as exc:
            issues.append(ValidationIssue("software_type", str(exc)))

    normalized = replace(spec, use_cases=tuple(normalized_ucs))
    return normalized, issues


# ---------------------------------------------------------------------------
# NFR conflict matrix


@dataclass(frozen=True)
class ConflictMatrix:
    vocabulary: frozenset[str]
    conflicts: frozenset[frozenset[str]]
    version: str = ""

    def __post_init__(self):
        for pair in self.conflicts:
            if len(pair) != 2:
                raise ValueError(f"conflict pair must have two distinct NFRs: {set(pair)}")
            if not pair <= self.vocabulary:
                raise ValueError(f"conflict pair {set(pair)} outside vocabulary")

    def is_conflicting(self, a: str, b: str) -> bool:
        return a != b and frozenset((a, b)) in self.conflicts


def load_conflict_matrix(path: str | Path) -> ConflictMatrix:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    vocab = frozenset(str(n).lower() for n in raw["nfrs"])
    conflicts = frozenset(
        frozenset((str(a).lower(), str(b).lower())) for a, b in raw["conflicts"]
    )
    return ConflictMatrix(
        vocabulary=vocab, conflicts=conflicts, version=str(raw.get("version", ""))
    )


def builtin_conflict_matrix_path() -> Path:
    return _DATA_DIR / "nfr_conflicts.json"


def load_builtin_conflict_matrix() -> ConflictMatrix:
    return load_conflict_matrix(builtin_conflict_matrix_path())


def check_nfr_conflicts(
    nfrs: Sequence[NfrItem | str], matrix: ConflictMatrix
) -> list[tuple[str, str]]:
    """Every unordered pair of supplied NFRs the matrix marks conflicting."""
    names = []
    for item in nfrs:
        name = item.name if isinstance(item, NfrItem) else str(item).lower()
        if name not in matrix.vocabulary:
            raise VocabularyError(
                f"unknown NFR {name!r}; known: {', '.join(sorted(matrix.vocabulary))}"
            )
        if name not in names:
            names.append(name)
    pairs = []
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if matrix.is_conflicting(a, b):
                pairs.append(tuple(sorted((a, b))))
    return sorted(pairs)


def resolve_nfr_conflicts(
    nfrs: Sequence[NfrItem],
    conflicts: Iterable[tuple[str, str]],
    priorities: Mapping[str, int] | None = None,
) -> list[NfrItem]:
    """Drop the lower-priority member of each conflicting pair.

    Priority semantics: smaller integer wins.  Priorities come from the
    mapping when given, falling back to each item's own priority field.
    Missing or tied priorities on a conflicting pair are errors that the
    interactive layers surface as prompts.
    """
    conflicts = [tuple(p) for p in conflicts]
    if not conflicts:
        return list(nfrs)

    prio: dict[str, int] = {}
    for item in nfrs:
        if item.priority is not None:
            prio[item.name] = item.priority
    if priorities:
        prio.update({str(k).lower(): int(v) for k, v in priorities.items()})

    conflicted = {name for pair in conflicts for name in pair}
    missing = sorted(n for n in conflicted if n not in prio)
    if missing:
        raise ResolutionRequiredError(
            conflicts, f"priorities missing for: {', '.join(missing)}"
        )

    drop: set[str] = set()
    for a, b in conflicts:
        if prio[a] == prio[b]:
            raise PriorityTieError((a, b))
        drop.add(a if prio[a] > prio[b] else b)
    return [item for item in nfrs if item.name not in drop]


# ---------------------------------------------------------------------------
# Software-type taxonomy


@dataclass(frozen=True)
class TaxonomyNode:
    key: str
    label: str
    path: str
    children: tuple["TaxonomyNode", ...] = ()


@dataclass(frozen=True)
class Taxonomy:
    roots: tuple[TaxonomyNode, ...]
    version: str = ""

    def _walk(self):
        stack = list(self.roots)
        while stack:
            node = stack.pop(0)
            yield node
            stack[0:0] = list(node.children)

    def nodes(self) -> list[TaxonomyNode]:
        return list(self._walk())

    def resolve(self, path_text: str) -> TaxonomyNode:
        """Exact path lookup; raises TaxonomyError when absent."""
        path_text = path_text.strip()
        if not path_text:
            raise TaxonomyError("software type path is empty")
        for node in self._walk():
            if node.path == path_text:
                return node
        raise TaxonomyError(f"unknown software type path {path_text!r}")


def _node_from_dict(raw: dict, prefix: str) -> TaxonomyNode:
    key = str(raw["key"])
    label = str(raw["label"])
    path = f"{prefix}/{key}" if prefix else key
    children = tuple(_node_from_dict(c, path) for c in raw.get("children", []))
    return TaxonomyNode(key=key, label=label, path=path, children=children)


def load_taxonomy(path: str | Path) -> Taxonomy:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    roots = tuple(_node_from_dict(n, "") for n in raw["nodes"])
    taxonomy = Taxonomy(roots=roots, version=str(raw.get("version", "")))
    paths = [n.path for n in taxonomy.nodes()]
    if len(paths) != len(set(paths)):
        raise TaxonomyError("taxonomy contains duplicate paths")
    return taxonomy


def resolve_type(taxonomy: Taxonomy, path_text: str) -> TaxonomyNode:
    return taxonomy.resolve(path_text)


def builtin_taxonomy_path() -> Path:
    return _DATA_DIR / "taxonomy.json"


def load_builtin_taxonomy() -> Taxonomy:
    return load_taxonomy(builtin_taxonomy_path())


def taxonomy_to_dict(taxonomy: Taxonomy) -> dict:
    def node_dict(node: TaxonomyNode) -> dict:
        out = {"key": node.key, "label": node.label, "path": node.path}
        if node.children:
            out["children"] = [node_dict(c) for c in node.children]
        return out

    return {"version": taxonomy.version, "nodes": [node_dict(n) for n in taxonomy.roots]}
