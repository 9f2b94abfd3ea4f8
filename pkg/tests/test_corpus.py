from pathlib import Path

import pytest

from archrec.corpus import (
    builtin_fixture_dump_path,
    ingest_posts,
    load_corpus,
    parse_tags,
    save_corpus,
    strip_html,
)
from archrec.errors import CorpusError

FIXTURES = Path(__file__).parent / "fixtures"
MINI_FILTER = {"model-view-controller", "architecture"}


class TestStripHtml:
    def test_tags_removed_and_entities_decoded(self):
        assert strip_html("<p>a &amp; b</p>") == "a & b"

    def test_code_contents_dropped(self):
        text = strip_html("<p>run <code>ls | wc -l</code> first</p>")
        assert "ls" not in text and text == "run first"

    def test_nested_code_inside_pre(self):
        assert strip_html("<pre><code>x = 1</code></pre>ok") == "ok"

    def test_whitespace_collapsed_across_tags(self):
        assert strip_html("<p>one</p><p>two</p>") == "one two"


class TestParseTags:
    def test_angle_bracket_encoding(self):
        assert parse_tags("<mvc><web>") == {"mvc", "web"}

    def test_lowercased(self):
        assert parse_tags("<MVC><Web>") == {"mvc", "web"}

    def test_empty(self):
        assert parse_tags("") == frozenset()


class TestIngest:
    def test_mini_dump_keeps_matching_questions_plus_answers(self):
        result = ingest_posts(FIXTURES / "mini_posts.xml", MINI_FILTER)
        # 3 matching questions (ids 1, 2, 3) and their 4 answers
        assert len(result) == 7
        kinds = [(p.id, p.post_kind) for p in result]
        assert kinds == [
            (1, "question"),
            (7, "answer"),
            (8, "answer"),
            (2, "question"),
            (9, "answer"),
            (3, "question"),
            (10, "answer"),
        ]

    def test_answers_inherit_question_tags(self):
        result = ingest_posts(FIXTURES / "mini_posts.xml", MINI_FILTER)
        by_id = {p.id: p for p in result}
        assert by_id[7].tags == by_id[1].tags
        assert "model-view-controller" in by_id[7].tags

    def test_empty_intersection_filter_gives_empty_corpus(self):
        result = ingest_posts(FIXTURES / "mini_posts.xml", {"no-such-tag"})
        assert len(result) == 0

    def test_empty_tag_filter_rejected(self):
        with pytest.raises(ValueError):
            ingest_posts(FIXTURES / "mini_posts.xml", set())

    def test_malformed_rows_skipped_with_count(self):
        result = ingest_posts(FIXTURES / "bad_rows.xml", {"architecture"})
        assert result.skipped == 3
        assert [p.id for p in result] == [22]

    def test_jsonl_format_matches_xml(self):
        from_xml = ingest_posts(FIXTURES / "mini_posts.xml", MINI_FILTER)
        from_jsonl = ingest_posts(FIXTURES / "mini_posts.jsonl", MINI_FILTER)
        assert from_xml.posts == from_jsonl.posts

    def test_deterministic(self):
        a = ingest_posts(FIXTURES / "mini_posts.xml", MINI_FILTER)
        b = ingest_posts(FIXTURES / "mini_posts.xml", MINI_FILTER)
        assert a.posts == b.posts

    def test_missing_file(self):
        with pytest.raises(CorpusError):
            ingest_posts(FIXTURES / "nope.xml", {"x"})

    def test_bundled_fixture_yields_twelve_documents(self, fixture_posts):
        assert len(fixture_posts) == 12
        questions = [p for p in fixture_posts if p.post_kind == "question"]
        answers = [p for p in fixture_posts if p.post_kind == "answer"]
        assert len(questions) == 5 and len(answers) == 7

    def test_bundled_fixture_excludes_offtopic_question(self, fixture_posts):
        assert all(p.id != 113 for p in fixture_posts)

    def test_code_blocks_stripped_from_bodies(self, fixture_posts):
        shell_question = next(p for p in fixture_posts if p.id == 104)
        assert "uniq" not in shell_question.body


class TestCorpusPersistence:
    def test_round_trip(self, tmp_path, fixture_posts):
        save_corpus(fixture_posts, tmp_path / "corpus", skipped=0, tag_filter={"a"})
        loaded = load_corpus(tmp_path / "corpus")
        assert loaded == list(fixture_posts)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(CorpusError):
            load_corpus(tmp_path / "nothing")


def test_builtin_dump_path_exists():
    assert builtin_fixture_dump_path().exists()
