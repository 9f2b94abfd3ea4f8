import itertools
import random

import pytest

from archrec.errors import (
    PriorityTieError,
    ResolutionRequiredError,
    SpecFormatError,
    TaxonomyError,
    VocabularyError,
)
from archrec.inputs import (
    NfrItem,
    RequirementsSpec,
    UseCase,
    check_nfr_conflicts,
    resolve_nfr_conflicts,
    resolve_type,
    spec_from_dict,
    spec_to_dict,
    validate_spec,
    word_count,
)


def make_spec(**overrides) -> RequirementsSpec:
    base = dict(
        short_description="A small publishing site.",
        detailed_description="Editors publish pages that stay consistent.",
        use_cases=(UseCase(id="uc-1", objective="publish pages"),),
        nfrs=(NfrItem(name="usability"),),
        software_type="data-dominant/web-application",
    )
    base.update(overrides)
    return RequirementsSpec(**base)


class TestValidation:
    def test_valid_spec_has_no_issues(self, taxonomy):
        _, issues = validate_spec(make_spec(), taxonomy)
        assert issues == []

    def test_short_description_over_25_words(self, taxonomy):
        text = " ".join(f"w{i}" for i in range(26))
        _, issues = validate_spec(make_spec(short_description=text), taxonomy)
        assert any(
            i.field == "short_description" and "25" in i.message for i in issues
        )

    def test_detailed_description_over_500_words(self, taxonomy):
        text = " ".join(f"w{i}" for i in range(501))
        _, issues = validate_spec(make_spec(detailed_description=text), taxonomy)
        assert any(i.field == "detailed_description" for i in issues)

    def test_zero_use_cases(self, taxonomy):
        _, issues = validate_spec(make_spec(use_cases=()), taxonomy)
        assert any(i.field == "use_cases" for i in issues)

    def test_twenty_one_use_cases(self, taxonomy):
        ucs = tuple(UseCase(id=f"uc-{i}", objective="x") for i in range(21))
        _, issues = validate_spec(make_spec(use_cases=ucs), taxonomy)
        assert any(i.field == "use_cases" for i in issues)

    def test_importance_score_above_one(self, taxonomy):
        ucs = (UseCase(id="uc-1", objective="x", importance_score=1.2),)
        _, issues = validate_spec(make_spec(use_cases=ucs), taxonomy)
        assert any("importance_score" in i.field for i in issues)

    def test_importance_score_below_zero(self, taxonomy):
        ucs = (UseCase(id="uc-1", objective="x", importance_score=-0.1),)
        _, issues = validate_spec(make_spec(use_cases=ucs), taxonomy)
        assert any("importance_score" in i.field for i in issues)

    def test_missing_importance_defaults_to_one(self, taxonomy):
        normalized, issues = validate_spec(make_spec(), taxonomy)
        assert issues == []
        assert all(uc.importance_score == 1.0 for uc in normalized.use_cases)

    def test_validation_is_idempotent(self, taxonomy):
        normalized, _ = validate_spec(make_spec(), taxonomy)
        again, issues = validate_spec(normalized, taxonomy)
        assert issues == [] and again == normalized

    def test_duplicate_use_case_ids(self, taxonomy):
        ucs = (
            UseCase(id="uc-1", objective="x"),
            UseCase(id="uc-1", objective="y"),
        )
        _, issues = validate_spec(make_spec(use_cases=ucs), taxonomy)
        assert any("duplicate" in i.message for i in issues)

    def test_empty_objective(self, taxonomy):
        ucs = (UseCase(id="uc-1", objective="  "),)
        _, issues = validate_spec(make_spec(use_cases=ucs), taxonomy)
        assert any(i.field == "use_cases[0].objective" for i in issues)

    def test_unknown_software_type(self, taxonomy):
        _, issues = validate_spec(make_spec(software_type="no/such/leaf"), taxonomy)
        assert any(i.field == "software_type" for i in issues)

    def test_errors_are_collected_not_fail_fast(self, taxonomy):
        text = " ".join(f"w{i}" for i in range(26))
        _, issues = validate_spec(
            make_spec(short_description=text, use_cases=(), software_type=""), taxonomy
        )
        assert len(issues) >= 3

    def test_word_count_is_whitespace_tokens(self):
        assert word_count("one  two\nthree") == 3
        assert word_count("") == 0


class TestConflicts:
    def test_performance_security_conflict(self, conflict_matrix):
        pairs = check_nfr_conflicts(
            [NfrItem(name="performance"), NfrItem(name="security")], conflict_matrix
        )
        assert pairs == [("performance", "security")]

    def test_empty_list(self, conflict_matrix):
        assert check_nfr_conflicts([], conflict_matrix) == []

    def test_single_nfr_never_conflicts_with_itself(self, conflict_matrix):
        assert check_nfr_conflicts([NfrItem(name="performance")], conflict_matrix) == []
        assert (
            check_nfr_conflicts(
                [NfrItem(name="performance"), NfrItem(name="performance")],
                conflict_matrix,
            )
            == []
        )

    def test_unknown_name(self, conflict_matrix):
        with pytest.raises(VocabularyError, match="speed"):
            check_nfr_conflicts([NfrItem(name="speed")], conflict_matrix)

    def test_plain_strings_accepted(self, conflict_matrix):
        assert check_nfr_conflicts(["performance", "security"], conflict_matrix) == [
            ("performance", "security")
        ]


class TestResolution:
    def test_lower_priority_number_wins(self, conflict_matrix):
        nfrs = [NfrItem(name="performance"), NfrItem(name="security")]
        out = resolve_nfr_conflicts(
            nfrs, [("performance", "security")], {"performance": 1, "security": 2}
        )
        assert [n.name for n in out] == ["performance"]

    def test_no_conflicts_passes_through(self, conflict_matrix):
        nfrs = [NfrItem(name="usability"), NfrItem(name="reliability")]
        assert resolve_nfr_conflicts(nfrs, []) == nfrs

    def test_three_way_conflict_keeps_top_priority(self, conflict_matrix):
        # performance/security/usability are mutually conflicting in the
        # bundled matrix; exhaust every distinct priority assignment
        names = ["performance", "security", "usability"]
        nfrs = [NfrItem(name=n) for n in names]
        pairs = check_nfr_conflicts(nfrs, conflict_matrix)
        assert len(pairs) == 3
        for perm in itertools.permutations((1, 2, 3)):
            priorities = dict(zip(names, perm))
            out = resolve_nfr_conflicts(nfrs, pairs, priorities)
            winner = min(names, key=lambda n: priorities[n])
            assert [n.name for n in out] == [winner]

    def test_missing_priority_raises_resolution_required(self):
        nfrs = [NfrItem(name="performance"), NfrItem(name="security")]
        with pytest.raises(ResolutionRequiredError) as excinfo:
            resolve_nfr_conflicts(nfrs, [("performance", "security")], {})
        assert ("performance", "security") in excinfo.value.pairs

    def test_tied_priorities_raise(self):
        nfrs = [NfrItem(name="performance"), NfrItem(name="security")]
        with pytest.raises(PriorityTieError):
            resolve_nfr_conflicts(
                nfrs, [("performance", "security")], {"performance": 1, "security": 1}
            )

    def test_priorities_fall_back_to_item_fields(self):
        nfrs = [NfrItem(name="performance", priority=2), NfrItem(name="security", priority=1)]
        out = resolve_nfr_conflicts(nfrs, [("performance", "security")])
        assert [n.name for n in out] == ["security"]

    def test_resolution_output_always_conflict_free(self, conflict_matrix):
        rng = random.Random(7)
        vocab = sorted(conflict_matrix.vocabulary)
        for _ in range(50):
            chosen = rng.sample(vocab, rng.randint(1, len(vocab)))
            nfrs = [NfrItem(name=n) for n in chosen]
            pairs = check_nfr_conflicts(nfrs, conflict_matrix)
            priorities = {n: i for i, n in enumerate(rng.sample(chosen, len(chosen)))}
            out = resolve_nfr_conflicts(nfrs, pairs, priorities)
            assert check_nfr_conflicts(out, conflict_matrix) == []


class TestTaxonomy:
    def test_resolve_web_application(self, taxonomy):
        node = resolve_type(taxonomy, "data-dominant/web-application")
        assert node.label == "Web Based Application"

    def test_empty_path_errors(self, taxonomy):
        with pytest.raises(TaxonomyError):
            taxonomy.resolve("")

    def test_root_path_resolves_to_root_node(self, taxonomy):
        node = taxonomy.resolve("data-dominant")
        assert node.key == "data-dominant"
        assert node.children

    def test_unknown_path(self, taxonomy):
        with pytest.raises(TaxonomyError):
            taxonomy.resolve("fun-dominant/arcade")

    def test_paths_unique(self, taxonomy):
        paths = [n.path for n in taxonomy.nodes()]
        assert len(paths) == len(set(paths))


class TestSpecDocuments:
    def test_round_trip(self, cms_spec):
        assert spec_from_dict(spec_to_dict(cms_spec)) == cms_spec

    def test_string_nfrs_coerced(self):
        spec = spec_from_dict(
            {
                "short_description": "s",
                "detailed_description": "d",
                "use_cases": [{"id": "u1", "objective": "o"}],
                "nfrs": ["Performance"],
                "software_type": "data-dominant/web-application",
            }
        )
        assert spec.nfrs[0].name == "performance"

    def test_bad_shape_rejected(self):
        with pytest.raises(SpecFormatError):
            spec_from_dict({"use_cases": "not a list"})

    def test_bad_importance_type_rejected(self):
        with pytest.raises(SpecFormatError):
            spec_from_dict(
                {"use_cases": [{"id": "u1", "objective": "o", "importance_score": "high"}]}
            )
