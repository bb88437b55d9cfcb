import pytest

from maskregion.errors import MissingCaptionError, UnknownAttributeError
from maskregion.forge.jobs import (
    build_object_prompt_jobs,
    build_part_prompt_jobs,
    format_box,
    region_attribute_list,
    split_category,
)
from maskregion.forge.taxonomy import (
    ALL_ATTRIBUTES,
    ATTRIBUTE_GROUPS,
    COLORS,
    MATERIALS,
    PATTERNS_MARKINGS,
    REFLECTANCE,
)
from maskregion.forge.templates import (
    BRIEF_DESCRIPTION_QUESTIONS,
    DETAILED_DESCRIPTION_QUESTIONS,
    SYSTEM_PROMPTS,
    YES_NO_QUESTION_TEMPLATES,
)

from conftest import make_region, read_fixture_text


class TestPromptSnapshots:
    @pytest.mark.parametrize("kind", ["description", "conversation",
                                      "short_form", "part"])
    def test_system_prompt_byte_identical(self, kind):
        want = read_fixture_text(f"prompt_snapshots/{kind}_system_prompt.txt")
        assert SYSTEM_PROMPTS[kind] == want

    def test_yes_no_templates_byte_identical(self):
        want = read_fixture_text("prompt_snapshots/yes_no_templates.txt")
        assert "\n".join(YES_NO_QUESTION_TEMPLATES) + "\n" == want

    def test_short_form_prompt_quotes_contract(self):
        assert ("the answer must be in one word or short phrase"
                in SYSTEM_PROMPTS["short_form"])

    def test_question_template_counts(self):
        assert len(DETAILED_DESCRIPTION_QUESTIONS) == 30
        assert len(BRIEF_DESCRIPTION_QUESTIONS) == 30
        assert len(YES_NO_QUESTION_TEMPLATES) == 9

    def test_templates_carry_region_slot(self):
        for t in YES_NO_QUESTION_TEMPLATES:
            assert "<region>" in t and "<category>" in t


class TestTaxonomy:
    def test_group_sizes(self):
        assert len(COLORS) == 29
        assert len(PATTERNS_MARKINGS) == 10
        assert len(MATERIALS) == 13
        assert len(REFLECTANCE) == 3
        assert len(ALL_ATTRIBUTES) == 55

    def test_groups_cover_all(self):
        joined = set()
        for names in ATTRIBUTE_GROUPS.values():
            joined.update(names)
        assert joined == set(ALL_ATTRIBUTES)


class TestObjectJobs:
    def test_market_layout(self, market_regions):
        job = build_object_prompt_jobs("market", "A busy open-air market.",
                                       market_regions, "conversation")
        lines = job.query.split("\n")
        assert lines[0] == "A busy open-air market."
        assert lines[1] == ""
        assert lines[2].startswith("person: [0.5070,0.4090,0.6980,0.7400]")
        assert lines[2].endswith(".")
        assert lines[3] == ""
        assert lines[4] == "<region1> (person: [0.5070,0.4090,0.6980,0.7400]):"
        assert " // " in lines[5]
        assert lines[5].startswith("gray shirt wearing glasses.")
        assert "<region2>" in job.query and "<region3>" in job.query
        assert job.region_ids == (0, 1, 2)
        assert job.system_prompt == SYSTEM_PROMPTS["conversation"]

    def test_box_formatting_four_decimals(self):
        assert format_box((0.5, 0.25, 1.0, 0.0625)) == "[0.5000,0.2500,1.0000,0.0625]"

    def test_short_form_job_uses_short_form_prompt(self, market_regions):
        job = build_object_prompt_jobs("market", "d", market_regions, "short_form")
        assert job.system_prompt == SYSTEM_PROMPTS["short_form"]
        assert job.job_id == "market:short_form"

    def test_deterministic(self, market_regions):
        a = build_object_prompt_jobs("market", "d", market_regions, "description")
        b = build_object_prompt_jobs("market", "d", market_regions, "description")
        assert a == b

    def test_zero_regions_error(self):
        with pytest.raises(MissingCaptionError):
            build_object_prompt_jobs("x", "d", [], "description")

    def test_captionless_region_error(self):
        r = make_region(0, "cat")
        with pytest.raises(MissingCaptionError):
            build_object_prompt_jobs("x", "d", [r], "conversation")

    def test_unknown_kind_rejected(self, market_regions):
        with pytest.raises(ValueError):
            build_object_prompt_jobs("x", "d", market_regions, "part")

    def test_messages_shape_with_few_shot(self, market_regions):
        job = build_object_prompt_jobs("market", "d", market_regions,
                                       "conversation",
                                       few_shot=[("ctx", "resp")])
        msgs = job.messages()
        assert [m["role"] for m in msgs] == ["system", "user", "assistant", "user"]
        assert msgs[1]["content"] == "ctx"
        assert msgs[-1]["content"] == job.query


class TestPartJobs:
    def test_category_split(self):
        assert split_category("spoon:tip") == ("spoon", "tip")
        assert split_category("bowl") == ("bowl", "")
        assert split_category("person:body") == ("person", "body")

    def test_attribute_order(self, tableware_regions):
        assert region_attribute_list(tableware_regions[0]) == (
            "dark grey", "plain", "metal", "opaque")

    def test_query_lines(self, tableware_regions):
        job = build_part_prompt_jobs("tableware", tableware_regions)
        lines = job.query.split("\n")
        assert lines[0] == "<region1> spoon: dark grey,plain,metal,opaque"
        assert lines[2] == "<region3> spoon:tip: dark grey,plain,metal,opaque"
        assert lines[6] == "<region7> bowl:inner body: dark green,plain,ceramic,opaque"
        assert len(lines) == 8
        assert job.system_prompt == SYSTEM_PROMPTS["part"]
        assert job.job_type == "part"

    def test_unknown_attribute_rejected(self):
        r = make_region(0, "spoon", attributes={"colors": ("ultraviolet",)})
        with pytest.raises(UnknownAttributeError):
            build_part_prompt_jobs("x", [r])

    def test_empty_attributes_rejected(self):
        r = make_region(0, "spoon")
        with pytest.raises(UnknownAttributeError):
            build_part_prompt_jobs("x", [r])
