"""Q&A post ingestion for the experiential knowledge corpus.

Reads a Stack Exchange-style dump (`Posts.xml` rows, or the equivalent
line-delimited JSON used for fixtures), keeps the questions whose tags
intersect the configured filter plus the answers attached to them, and
strips markup from bodies.  Ingestion is tolerant: malformed rows are
skipped and counted instead of aborting the run.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path

from .errors import CorpusError

_TAG_RE = re.compile(r"<([^<>]+)>")
_WS_RE = re.compile(r"\s+")

QUESTION = "question"
ANSWER = "answer"


@dataclass(frozen=True)
class Post:
    id: int
    title: str
    body: str
    tags: frozenset[str]
    score: int
    post_kind: str
    parent_id: int | None = None


@dataclass(frozen=True)
class IngestResult:
    posts: tuple[Post, ...]
    skipped: int

    def __iter__(self):
        return iter(self.posts)

    def __len__(self) -> int:
        return len(self.posts)


class _HtmlTextExtractor(HTMLParser):
    """Collects text content, dropping everything inside <code> blocks."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self._parts: list[str] = []
        self._code_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag == "code":
            self._code_depth += 1
        self._parts.append(" ")

    def handle_endtag(self, tag):
        if tag == "code" and self._code_depth > 0:
            self._code_depth -= 1
        self._parts.append(" ")

    def handle_data(self, data):
        if self._code_depth == 0:
            self._parts.append(data)

    def text(self) -> str:
        return _WS_RE.sub(" ", "".join(self._parts)).strip()


def strip_html(markup: str) -> str:
    """Plain text from an HTML body: entities decoded, code blocks dropped."""
    extractor = _HtmlTextExtractor()
    extractor.feed(markup)
    extractor.close()
    return extractor.text()


def parse_tags(raw: str) -> frozenset[str]:
    """Decode `<tag1><tag2>` (or `tag1 tag2`) into a lowercase tag set."""
    if "<" in raw:
        return frozenset(t.strip().lower() for t in _TAG_RE.findall(raw) if t.strip())
    return frozenset(t.lower() for t in raw.split() if t)


def _rows_from_xml(path: Path):
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        raise CorpusError(f"cannot parse dump {path}: {exc}") from exc
    for elem in tree.getroot().iter("row"):
        yield dict(elem.attrib)


def _rows_from_jsonl(path: Path):
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError:
                yield None
                continue
            yield row if isinstance(row, dict) else None


def _iter_rows(path: Path):
    if path.suffix.lower() == ".xml":
        return _rows_from_xml(path)
    if path.suffix.lower() in (".jsonl", ".ndjson", ".json"):
        return _rows_from_jsonl(path)
    head = path.read_text(encoding="utf-8", errors="replace").lstrip()[:1]
    return _rows_from_xml(path) if head == "<" else _rows_from_jsonl(path)


def _post_from_row(row: dict) -> Post | None:
    try:
        post_id = int(row["Id"])
        type_id = int(row["PostTypeId"])
    except (KeyError, TypeError, ValueError):
        return None
    if type_id not in (1, 2):
        return None
    body = strip_html(str(row.get("Body", "")))
    try:
        score = int(row.get("Score", 0) or 0)
    except (TypeError, ValueError):
        score = 0
    if type_id == 1:
        return Post(
            id=post_id,
            title=str(row.get("Title", "")),
            body=body,
            tags=parse_tags(str(row.get("Tags", ""))),
            score=score,
            post_kind=QUESTION,
        )
    try:
        parent_id = int(row["ParentId"])
    except (KeyError, TypeError, ValueError):
        return None
    return Post(
        id=post_id,
        title=str(row.get("Title", "")),
        body=body,
        tags=frozenset(),
        score=score,
        post_kind=ANSWER,
        parent_id=parent_id,
    )


def ingest_posts(dump: str | Path, tag_filter: set[str] | frozenset[str]) -> IngestResult:
    """Questions whose tags intersect the filter, plus their answers.

    Answers inherit the tags of their question.  Output preserves file
    order, so the same dump and filter always produce the same corpus.
    """
    if not tag_filter:
        raise ValueError("tag_filter must not be empty")
    wanted = frozenset(t.lower() for t in tag_filter)
    path = Path(dump)
    if not path.exists():
        raise CorpusError(f"dump file not found: {path}")

    parsed: list[Post] = []
    skipped = 0
    for row in _iter_rows(path):
        post = _post_from_row(row) if row is not None else None
        if post is None:
            skipped += 1
            continue
        parsed.append(post)

    kept_questions = {
        p.id: p for p in parsed if p.post_kind == QUESTION and p.tags & wanted
    }
    posts: list[Post] = []
    for post in parsed:
        if post.post_kind == QUESTION:
            if post.id in kept_questions:
                posts.append(post)
        elif post.parent_id in kept_questions:
            question = kept_questions[post.parent_id]
            posts.append(
                Post(
                    id=post.id,
                    title=post.title,
                    body=post.body,
                    tags=question.tags,
                    score=post.score,
                    post_kind=ANSWER,
                    parent_id=post.parent_id,
                )
            )
    return IngestResult(posts=tuple(posts), skipped=skipped)


# ---------------------------------------------------------------------------
# Corpus persistence (between the ingest and index CLI steps)


def _post_to_dict(post: Post) -> dict:
    return {
        "id": post.id,
        "title": post.title,
        "body": post.body,
        "tags": sorted(post.tags),
        "score": post.score,
        "post_kind": post.post_kind,
        "parent_id": post.parent_id,
    }


def _post_from_dict(raw: dict) -> Post:
    return Post(
        id=int(raw["id"]),
        title=raw.get("title", ""),
        body=raw.get("body", ""),
        tags=frozenset(raw.get("tags", [])),
        score=int(raw.get("score", 0)),
        post_kind=raw.get("post_kind", QUESTION),
        parent_id=raw.get("parent_id"),
    )


def save_corpus(posts, directory: str | Path, *, skipped: int = 0, tag_filter=()) -> None:
    posts = list(posts)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with (directory / "posts.jsonl").open("w", encoding="utf-8") as handle:
        for post in posts:
            handle.write(json.dumps(_post_to_dict(post), sort_keys=True) + "\n")
    meta = {
        "format_version": 1,
        "count": len(posts),
        "skipped": skipped,
        "tag_filter": sorted(tag_filter),
    }
    (directory / "meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def load_corpus(directory: str | Path) -> list[Post]:
    directory = Path(directory)
    posts_file = directory / "posts.jsonl"
    if not posts_file.exists():
        raise CorpusError(f"no posts.jsonl under {directory}")
    posts = []
    with posts_file.open(encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                posts.append(_post_from_dict(json.loads(line)))
    return posts


def builtin_fixture_dump_path() -> Path:
    return Path(__file__).resolve().parent / "data" / "fixture_posts.xml"
