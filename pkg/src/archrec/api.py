"""HTTP service exposing the pipeline to the browser UI.

Validation failures return 400 with machine-readable field errors;
unresolved NFR conflicts return 409 with the conflicting pairs so the
client can prompt for priorities and resubmit.
"""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .catalog import PatternCatalog
from .config import PipelineConfig
from .errors import (
    NfrResolutionError,
    ResolutionRequiredError,
    SpecFormatError,
    SpecValidationError,
    VocabularyError,
)
from .inputs import (
    ConflictMatrix,
    Taxonomy,
    check_nfr_conflicts,
    spec_from_dict,
    taxonomy_to_dict,
    validate_spec,
)
from .lsi import LsiIndex
from .pipeline import recommend
from .projects import ProjectNotFoundError, ProjectStore
from .sentiment import SentimentLexicon


@dataclass
class AppResources:
    catalog: PatternCatalog
    index: LsiIndex
    lexicon: SentimentLexicon
    taxonomy: Taxonomy
    conflict_matrix: ConflictMatrix
    config: PipelineConfig
    store: ProjectStore


def _parse_and_validate(resources: AppResources, raw: dict):
    try:
        spec = spec_from_dict(raw)
    except SpecFormatError as exc:
        raise HTTPException(
            status_code=400, detail={"errors": [{"field": "", "message": str(exc)}]}
        ) from exc
    normalized, issues = validate_spec(spec, resources.taxonomy)
    if issues:
        raise HTTPException(
            status_code=400,
            detail={"errors": [{"field": i.field, "message": i.message} for i in issues]},
        )
    return normalized


def create_app(resources: AppResources, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="archrec", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ProjectNotFoundError)
    async def _project_missing(request, exc):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "patterns": len(resources.catalog),
            "documents": len(resources.index.posts),
        }

    @app.get("/api/taxonomy")
    def get_taxonomy():
        return taxonomy_to_dict(resources.taxonomy)

    @app.get("/api/patterns")
    def get_patterns():
        return [
            {
                "pattern_name": r.pattern_name,
                "basic_definition": r.basic_definition,
                "source": r.source,
            }
            for r in resources.catalog
        ]

    @app.post("/api/nfr-check")
    def nfr_check(payload: dict = Body(...)):
        nfrs = payload.get("nfrs", [])
        if not isinstance(nfrs, list):
            raise HTTPException(status_code=400, detail="nfrs must be an array")
        names = []
        for item in nfrs:
            if isinstance(item, dict):
                names.append(str(item.get("name", "")).lower())
            else:
                names.append(str(item).lower())
        try:
            pairs = check_nfr_conflicts(names, resources.conflict_matrix)
        except VocabularyError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {"conflicts": [list(p) for p in pairs]}

    @app.post("/api/projects", status_code=201)
    def create_project(payload: dict = Body(...)):
        spec = _parse_and_validate(resources, payload)
        record = resources.store.create(spec)
        return record.to_dict()

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str):
        return resources.store.get(project_id).to_dict()

    @app.put("/api/projects/{project_id}/spec")
    def update_spec(project_id: str, payload: dict = Body(...)):
        spec = _parse_and_validate(resources, payload)
        record = resources.store.update_spec(project_id, spec)
        return record.to_dict()

    @app.post("/api/projects/{project_id}/recommend")
    def run_recommend(project_id: str, payload: dict | None = Body(None)):
        record = resources.store.get(project_id)
        priorities = None
        if payload and isinstance(payload.get("priorities"), dict):
            try:
                priorities = {
                    str(k).lower(): int(v) for k, v in payload["priorities"].items()
                }
            except (TypeError, ValueError) as exc:
                raise HTTPException(
                    status_code=400, detail="priorities must map NFR names to integers"
                ) from exc
        try:
            result = recommend(
                record.spec,
                resources.catalog,
                resources.index,
                resources.lexicon,
                resources.config,
                conflict_matrix=resources.conflict_matrix,
                taxonomy=resources.taxonomy,
                priorities=priorities,
            )
        except SpecValidationError as exc:
            raise HTTPException(
                status_code=400,
                detail={
                    "errors": [
                        {"field": i.field, "message": i.message} for i in exc.issues
                    ]
                },
            ) from exc
        except ResolutionRequiredError as exc:
            raise HTTPException(
                status_code=409,
                detail={"conflicts": [list(p) for p in exc.pairs], "message": str(exc)},
            ) from exc
        except NfrResolutionError as exc:
            raise HTTPException(status_code=409, detail={"message": str(exc)}) from exc
        except VocabularyError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        payload_out = result.to_dict()
        resources.store.store_result(project_id, payload_out)
        return payload_out

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
