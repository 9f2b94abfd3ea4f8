import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from archrec.cli import (
    EXIT_CONFIG,
    EXIT_RESOLUTION_REQUIRED,
    EXIT_VALIDATION,
    main,
)
from archrec.corpus import builtin_fixture_dump_path
from archrec.inputs import spec_to_dict
from archrec.pipeline import builtin_eval_cases_dir

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def built_index_dir(tmp_path_factory, runner):
    """ingest -> index over the bundled dump, shared by the CLI tests."""
    root = tmp_path_factory.mktemp("cli")
    corpus_dir = root / "corpus"
    index_dir = root / "index"
    result = runner.invoke(
        main,
        ["ingest", "--dump", str(builtin_fixture_dump_path()), "--out", str(corpus_dir)],
    )
    assert result.exit_code == 0, result.output
    assert "ingested 12 posts" in result.output
    result = runner.invoke(
        main, ["index", "--corpus", str(corpus_dir), "--out", str(index_dir)]
    )
    assert result.exit_code == 0, result.output
    return index_dir


@pytest.fixture(scope="module")
def cms_spec_path(tmp_path_factory):
    from archrec.pipeline import load_eval_case

    case = load_eval_case(builtin_eval_cases_dir() / "cms_university.json")
    path = tmp_path_factory.mktemp("specs") / "cms.json"
    path.write_text(json.dumps(spec_to_dict(case.spec)))
    return path


class TestIngestIndex:
    def test_ingest_reports_counts(self, runner, tmp_path):
        out = tmp_path / "corpus"
        result = runner.invoke(
            main,
            [
                "ingest",
                "--dump", str(FIXTURES / "mini_posts.xml"),
                "--tags", "model-view-controller,architecture",
                "--out", str(out),
            ],
        )
        assert result.exit_code == 0
        assert "ingested 7 posts" in result.output
        assert (out / "posts.jsonl").exists()

    def test_index_reports_rank(self, runner, built_index_dir):
        assert (built_index_dir / "factors.npz").exists()
        meta = json.loads((built_index_dir / "meta.json").read_text())
        assert meta["rank_k"] == 12


class TestRecommend:
    def test_text_output_has_three_ranked_rows(self, runner, built_index_dir, cms_spec_path):
        result = runner.invoke(
            main,
            ["recommend", "--spec", str(cms_spec_path), "--index", str(built_index_dir)],
        )
        assert result.exit_code == 0, result.output
        lines = [l for l in result.output.splitlines() if l.strip()]
        assert lines[0].startswith("Rank")
        assert len(lines) == 4
        assert "MVC" in lines[1]

    def test_trace_flag_lists_terms(self, runner, built_index_dir, cms_spec_path):
        result = runner.invoke(
            main,
            [
                "recommend",
                "--spec", str(cms_spec_path),
                "--index", str(built_index_dir),
                "--trace",
            ],
        )
        assert result.exit_code == 0
        assert "dd_bd" in result.output
        assert "flo_solution" in result.output

    def test_machine_output_is_byte_identical_across_runs(
        self, runner, built_index_dir, cms_spec_path
    ):
        args = [
            "recommend",
            "--spec", str(cms_spec_path),
            "--index", str(built_index_dir),
            "--format", "machine",
        ]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.exit_code == 0 and second.exit_code == 0
        assert first.stdout_bytes == second.stdout_bytes
        payload = json.loads(first.output)
        assert [r["pattern_name"] for r in payload["recommendations"]][0] == "MVC"
        assert "trace" in payload and "config" in payload

    def test_top_flag(self, runner, built_index_dir, cms_spec_path):
        result = runner.invoke(
            main,
            [
                "recommend",
                "--spec", str(cms_spec_path),
                "--index", str(built_index_dir),
                "--top", "1",
                "--format", "machine",
            ],
        )
        assert len(json.loads(result.output)["recommendations"]) == 1

    def test_conflicting_nfrs_fail_non_interactively(
        self, runner, built_index_dir, cms_spec_path, tmp_path
    ):
        spec = json.loads(cms_spec_path.read_text())
        spec["nfrs"] = ["performance", "security"]
        path = tmp_path / "conflicted.json"
        path.write_text(json.dumps(spec))
        result = runner.invoke(
            main,
            ["recommend", "--spec", str(path), "--index", str(built_index_dir),
             "--format", "machine"],
        )
        assert result.exit_code == EXIT_RESOLUTION_REQUIRED
        assert "performance" in result.output and "security" in result.output

    def test_priority_flags_resolve_conflicts(
        self, runner, built_index_dir, cms_spec_path, tmp_path
    ):
        spec = json.loads(cms_spec_path.read_text())
        spec["nfrs"] = ["performance", "security"]
        path = tmp_path / "conflicted.json"
        path.write_text(json.dumps(spec))
        result = runner.invoke(
            main,
            [
                "recommend",
                "--spec", str(path),
                "--index", str(built_index_dir),
                "--priority", "performance=1",
                "--priority", "security=2",
            ],
        )
        assert result.exit_code == 0, result.output

    def test_invalid_spec_exits_with_validation_code(self, runner, built_index_dir, tmp_path):
        path = tmp_path / "invalid.json"
        path.write_text(json.dumps({
            "short_description": "x",
            "detailed_description": "y",
            "use_cases": [],
            "nfrs": [],
            "software_type": "data-dominant/web-application",
        }))
        result = runner.invoke(
            main, ["recommend", "--spec", str(path), "--index", str(built_index_dir)]
        )
        assert result.exit_code == EXIT_VALIDATION

    def test_bad_config_exits_with_config_code(
        self, runner, built_index_dir, cms_spec_path, tmp_path
    ):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha": 3.0}))
        result = runner.invoke(
            main,
            ["recommend", "--spec", str(cms_spec_path), "--index", str(built_index_dir),
             "--config", str(cfg)],
        )
        assert result.exit_code == EXIT_CONFIG


class TestEval:
    def test_report_shape(self, runner, built_index_dir):
        result = runner.invoke(
            main,
            ["eval", "--cases", str(builtin_eval_cases_dir()), "--index", str(built_index_dir)],
        )
        assert result.exit_code == 0, result.output
        assert "rank 1" in result.output
        assert "rank 2" in result.output
        assert "rank 3" in result.output
        assert "Expected Output" in result.output
        assert "top-1" in result.output

    def test_machine_report(self, runner, built_index_dir):
        result = runner.invoke(
            main,
            ["eval", "--cases", str(builtin_eval_cases_dir()), "--index", str(built_index_dir),
             "--format", "machine"],
        )
        payload = json.loads(result.output)
        assert payload["case_count"] >= 10
        assert payload["rank_counts"]["1"] >= 6
