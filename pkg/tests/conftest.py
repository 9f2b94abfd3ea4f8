"""Shared fixtures: bundled knowledge bases, the seeded corpus and its index."""

from __future__ import annotations

import pytest

from archrec.catalog import load_builtin_catalog
from archrec.config import DEFAULT_TAG_FILTER, PipelineConfig
from archrec.corpus import builtin_fixture_dump_path, ingest_posts
from archrec.inputs import load_builtin_conflict_matrix, load_builtin_taxonomy
from archrec.lsi import build_index
from archrec.pipeline import builtin_eval_cases_dir, load_eval_cases
from archrec.sentiment import load_builtin_lexicon


@pytest.fixture(scope="session")
def catalog():
    return load_builtin_catalog()


@pytest.fixture(scope="session")
def fixture_posts():
    result = ingest_posts(builtin_fixture_dump_path(), set(DEFAULT_TAG_FILTER))
    assert result.skipped == 0
    return list(result.posts)


@pytest.fixture(scope="session")
def fixture_index(fixture_posts):
    return build_index(fixture_posts, rank_k=100)


@pytest.fixture(scope="session")
def lexicon():
    return load_builtin_lexicon()


@pytest.fixture(scope="session")
def taxonomy():
    return load_builtin_taxonomy()


@pytest.fixture(scope="session")
def conflict_matrix():
    return load_builtin_conflict_matrix()


@pytest.fixture(scope="session")
def eval_cases():
    return load_eval_cases(builtin_eval_cases_dir())


@pytest.fixture(scope="session")
def default_config():
    return PipelineConfig()


@pytest.fixture(scope="session")
def cms_spec(eval_cases):
    for case in eval_cases:
        if case.id == "cms_university":
            return case.spec
    raise AssertionError("cms_university fixture case missing")
