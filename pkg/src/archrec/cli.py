"""Command-line entry points: ingest, index, recommend, eval, serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .catalog import load_builtin_catalog, load_catalog
from .config import DEFAULT_TAG_FILTER, PipelineConfig, load_config
from .corpus import ingest_posts, load_corpus, save_corpus
from .errors import (
    ArchrecError,
    CatalogFormatError,
    CatalogValidationError,
    ConfigError,
    CorpusError,
    IndexError_,
    NfrResolutionError,
    ResolutionRequiredError,
    SpecFormatError,
    SpecValidationError,
    VocabularyError,
)
from .inputs import (
    check_nfr_conflicts,
    load_builtin_conflict_matrix,
    load_builtin_taxonomy,
    load_conflict_matrix,
    load_spec,
    load_taxonomy,
)
from .lsi import build_index, load_index, save_index
from .pipeline import evaluate, load_eval_cases, recommend
from .sentiment import load_builtin_lexicon, load_lexicon

EXIT_VALIDATION = 3
EXIT_RESOLUTION_REQUIRED = 4
EXIT_CONFIG = 5
EXIT_IO = 6

_ERROR_EXIT_CODES = (
    ((SpecValidationError, SpecFormatError, VocabularyError, CatalogValidationError), EXIT_VALIDATION),
    ((NfrResolutionError,), EXIT_RESOLUTION_REQUIRED),
    ((ConfigError,), EXIT_CONFIG),
    ((CorpusError, CatalogFormatError, IndexError_, OSError), EXIT_IO),
)


def _fail(exc: Exception) -> None:
    for types, code in _ERROR_EXIT_CODES:
        if isinstance(exc, types):
            click.echo(f"error: {exc}", err=True)
            sys.exit(code)
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


def _load_pipeline_config(path: str | None) -> PipelineConfig:
    return load_config(path) if path else PipelineConfig()


@click.group()
@click.version_option(version=__version__)
def main():
    """Architectural pattern recommendations from structured requirements."""


@main.command()
@click.option("--dump", required=True, type=click.Path(exists=True), help="Posts dump (XML or JSONL).")
@click.option("--tags", default=",".join(DEFAULT_TAG_FILTER), show_default=False,
              help="Comma-separated relevance tags (defaults to the bundled filter).")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Corpus output directory.")
def ingest(dump, tags, out_dir):
    """Filter a Q&A dump into a corpus directory."""
    tag_filter = {t.strip().lower() for t in tags.split(",") if t.strip()}
    try:
        result = ingest_posts(dump, tag_filter)
        save_corpus(result.posts, out_dir, skipped=result.skipped, tag_filter=tag_filter)
    except ArchrecError as exc:
        _fail(exc)
    click.echo(f"ingested {len(result.posts)} posts ({result.skipped} rows skipped) -> {out_dir}")


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True),
              help="Corpus directory produced by ingest.")
@click.option("--rank-k", default=None, type=int, help="Latent rank (default from config).")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Index output directory.")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def index(corpus_dir, rank_k, out_dir, config_path):
    """Build and persist the latent semantic index."""
    try:
        cfg = _load_pipeline_config(config_path)
        posts = load_corpus(corpus_dir)
        built = build_index(posts, rank_k if rank_k is not None else cfg.rank_k)
        save_index(built, out_dir)
    except ArchrecError as exc:
        _fail(exc)
    click.echo(
        f"indexed {len(built.posts)} documents at rank {built.rank_k} "
        f"({len(built.vocabulary)} terms) -> {out_dir}"
    )


def _gather_priorities(pairs, given: dict[str, int], interactive: bool) -> dict[str, int]:
    names = sorted({n for pair in pairs for n in pair})
    missing = [n for n in names if n not in given]
    if missing and interactive:
        click.echo("Conflicting NFRs need priorities (1 = most important):")
        for a, b in pairs:
            click.echo(f"  {a} <-> {b}")
        for name in missing:
            given[name] = click.prompt(f"priority for {name}", type=int)
    return given


def _render_recommendations(result, show_trace: bool) -> str:
    lines = [f"{'Rank':<5} {'Pattern':<20} {'Confidence':>10}  {'Sentiment':<18} {'Evidence':>8}"]
    for rec in result.recommendations:
        lines.append(
            f"{rec.rank:<5} {rec.pattern_name:<20} {rec.confidence:>10.4f}  "
            f"{rec.sentiment_label:<18} {rec.evidence_count:>8}"
        )
    if show_trace:
        lines.append("")
        for rec in result.recommendations:
            trace = result.trace[rec.pattern_name]
            lines.append(f"{rec.pattern_name} (total {trace['total']:.4f})")
            for term in trace["terms"]:
                flag = "" if term["active"] else "  [inactive]"
                lines.append(
                    f"  {term['term']:<22} {term['source']} -> {term['target']}: "
                    f"{term['value']:.4f}{flag}"
                )
    return "\n".join(lines)


@main.command("recommend")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", default=None, type=click.Path(exists=True),
              help="Pattern catalog (defaults to the bundled one).")
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True))
@click.option("--lexicon", "lexicon_paths", multiple=True, type=click.Path(exists=True),
              help="Sentiment lexicon file(s); defaults to the bundled lexicon.")
@click.option("--taxonomy", "taxonomy_path", default=None, type=click.Path(exists=True))
@click.option("--nfr-matrix", "matrix_path", default=None, type=click.Path(exists=True))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--top", default=3, type=click.IntRange(1, 3), show_default=True)
@click.option("--trace", "show_trace", is_flag=True, help="Show per-term contributions.")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
@click.option("--priority", "priorities", multiple=True, metavar="NFR=N",
              help="Priority for a conflicting NFR (repeatable).")
def recommend_cmd(spec_path, catalog_path, index_dir, lexicon_paths, taxonomy_path,
                  matrix_path, config_path, top, show_trace, fmt, priorities):
    """Run the recommendation pipeline for one requirements spec."""
    try:
        cfg = _load_pipeline_config(config_path)
        spec = load_spec(spec_path)
        catalog = load_catalog(catalog_path) if catalog_path else load_builtin_catalog()
        idx = load_index(index_dir)
        lexicon = load_lexicon(*lexicon_paths) if lexicon_paths else load_builtin_lexicon()
        taxonomy = load_taxonomy(taxonomy_path) if taxonomy_path else load_builtin_taxonomy()
        matrix = load_conflict_matrix(matrix_path) if matrix_path else load_builtin_conflict_matrix()

        given: dict[str, int] = {}
        for raw in priorities:
            name, _, value = raw.partition("=")
            try:
                given[name.strip().lower()] = int(value)
            except ValueError:
                raise ConfigError(f"bad --priority {raw!r}; expected NFR=integer") from None

        conflicts = check_nfr_conflicts(spec.nfrs, matrix)
        if conflicts:
            interactive = sys.stdin.isatty() and fmt == "text"
            given = _gather_priorities(conflicts, given, interactive)

        result = recommend(
            spec, catalog, idx, lexicon, cfg,
            conflict_matrix=matrix, taxonomy=taxonomy,
            priorities=given or None, top=top,
        )
    except ResolutionRequiredError as exc:
        click.echo(f"error: {exc}", err=True)
        click.echo("re-run with --priority NFR=N for each conflicting NFR", err=True)
        sys.exit(EXIT_RESOLUTION_REQUIRED)
    except ArchrecError as exc:
        _fail(exc)

    if fmt == "machine":
        click.echo(json.dumps(result.to_dict(), sort_keys=True, separators=(",", ":")))
    else:
        click.echo(_render_recommendations(result, show_trace))


def _render_eval_report(report) -> str:
    lines = [
        f"cases evaluated: {report.case_count}   top-1: {report.top1_pct:.1f}%",
        "",
        f"{'':<10} {'Expected Output':>15} {'Positive Sentiment':>19} {'Negative Sentiment':>19}",
    ]
    for rank in ("1", "2", "3"):
        sc = report.sentiment_counts[rank]
        lines.append(
            f"rank {rank:<5} {report.rank_counts[rank]:>15} {sc['positive']:>19} {sc['negative']:>19}"
        )
    lines.append(f"{'miss':<10} {report.rank_counts['miss']:>15}")
    if report.warnings:
        lines.append("")
        lines.extend(f"warning: {w}" for w in report.warnings)
    return "\n".join(lines)


@main.command("eval")
@click.option("--cases", "cases_dir", required=True, type=click.Path(exists=True))
@click.option("--catalog", "catalog_path", default=None, type=click.Path(exists=True))
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True))
@click.option("--lexicon", "lexicon_paths", multiple=True, type=click.Path(exists=True))
@click.option("--taxonomy", "taxonomy_path", default=None, type=click.Path(exists=True))
@click.option("--nfr-matrix", "matrix_path", default=None, type=click.Path(exists=True))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
def eval_cmd(cases_dir, catalog_path, index_dir, lexicon_paths, taxonomy_path,
             matrix_path, config_path, fmt):
    """Replay ground-truth cases and report rank/sentiment tallies."""
    try:
        cfg = _load_pipeline_config(config_path)
        cases = load_eval_cases(cases_dir)
        catalog = load_catalog(catalog_path) if catalog_path else load_builtin_catalog()
        idx = load_index(index_dir)
        lexicon = load_lexicon(*lexicon_paths) if lexicon_paths else load_builtin_lexicon()
        taxonomy = load_taxonomy(taxonomy_path) if taxonomy_path else load_builtin_taxonomy()
        matrix = load_conflict_matrix(matrix_path) if matrix_path else load_builtin_conflict_matrix()
        report = evaluate(
            cases, catalog, idx, lexicon, cfg,
            conflict_matrix=matrix, taxonomy=taxonomy,
        )
    except (ArchrecError, ValueError) as exc:
        _fail(exc)

    if fmt == "machine":
        click.echo(json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":")))
    else:
        click.echo(_render_eval_report(report))


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--catalog", "catalog_path", default=None, type=click.Path(exists=True))
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True))
@click.option("--lexicon", "lexicon_paths", multiple=True, type=click.Path(exists=True))
@click.option("--taxonomy", "taxonomy_path", default=None, type=click.Path(exists=True))
@click.option("--nfr-matrix", "matrix_path", default=None, type=click.Path(exists=True))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--data-dir", default="./archrec-data", show_default=True,
              help="Directory for project persistence.")
@click.option("--ui", "ui_dir", default=None, type=click.Path(exists=True),
              help="Directory of static UI assets to serve at /.")
def serve(port, host, catalog_path, index_dir, lexicon_paths, taxonomy_path,
          matrix_path, config_path, data_dir, ui_dir):
    """Start the HTTP service."""
    import uvicorn

    from .api import AppResources, create_app
    from .projects import ProjectStore

    try:
        resources = AppResources(
            catalog=load_catalog(catalog_path) if catalog_path else load_builtin_catalog(),
            index=load_index(index_dir),
            lexicon=load_lexicon(*lexicon_paths) if lexicon_paths else load_builtin_lexicon(),
            taxonomy=load_taxonomy(taxonomy_path) if taxonomy_path else load_builtin_taxonomy(),
            conflict_matrix=load_conflict_matrix(matrix_path) if matrix_path else load_builtin_conflict_matrix(),
            config=_load_pipeline_config(config_path),
            store=ProjectStore(Path(data_dir) / "projects"),
        )
    except ArchrecError as exc:
        _fail(exc)
    app = create_app(resources, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
