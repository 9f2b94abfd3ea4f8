"""Flat-file project persistence for the HTTP service.

One JSON document per project under a data directory; ids are short
random hex strings.  Writes are whole-file replacements, so concurrent
readers never observe a torn record.
"""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

from .errors import ArchrecError
from .inputs import RequirementsSpec, spec_from_dict, spec_to_dict


class ProjectNotFoundError(ArchrecError):
    pass


@dataclass
class ProjectRecord:
    id: str
    spec: RequirementsSpec
    last_result: dict | None
    created_at: str
    updated_at: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "spec": spec_to_dict(self.spec),
            "last_result": self.last_result,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


class ProjectStore:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, project_id: str) -> Path:
        return self.directory / f"{project_id}.json"

    def create(self, spec: RequirementsSpec) -> ProjectRecord:
        project_id = uuid.uuid4().hex[:12]
        now = _now()
        record = ProjectRecord(
            id=project_id, spec=spec, last_result=None, created_at=now, updated_at=now
        )
        self._write(record)
        return record

    def get(self, project_id: str) -> ProjectRecord:
        path = self._path(project_id)
        if not path.exists():
            raise ProjectNotFoundError(f"no project {project_id!r}")
        raw = json.loads(path.read_text(encoding="utf-8"))
        return ProjectRecord(
            id=raw["id"],
            spec=spec_from_dict(raw["spec"]),
            last_result=raw.get("last_result"),
            created_at=raw.get("created_at", ""),
            updated_at=raw.get("updated_at", ""),
        )

    def update_spec(self, project_id: str, spec: RequirementsSpec) -> ProjectRecord:
        record = self.get(project_id)
        record.spec = spec
        record.updated_at = _now()
        self._write(record)
        return record

    def store_result(self, project_id: str, result: dict) -> ProjectRecord:
        record = self.get(project_id)
        record.last_result = result
        record.updated_at = _now()
        self._write(record)
        return record

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def _write(self, record: ProjectRecord) -> None:
        path = self._path(record.id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(record.to_dict(), indent=2) + "\n", encoding="utf-8")
        tmp.replace(path)
