import pytest

from editkit.errors import InapplicableTransform
from editkit.tags import get_tag_set
from editkit.transforms import (
    apply_transform,
    detect_merge,
    detect_split,
    detect_transform,
    pluralize,
    singularize,
    verb_change,
)

CORE = get_tag_set("core14")
EXT = get_tag_set("extended34")
KDRA = get_tag_set("kdra4")


class TestApply:
    def test_case_upper(self):
        assert apply_transform("TRANSFORM_CASE_UPPER", "nasa") == "NASA"

    def test_case_capital_1(self):
        assert apply_transform("TRANSFORM_CASE_CAPITAL_1", "iphone") == "iPhone"

    def test_case_capital(self):
        assert apply_transform("TRANSFORM_CASE_CAPITAL", "jimi") == "Jimi"

    def test_case_lower(self):
        assert apply_transform("TRANSFORM_CASE_LOWER", "NASA") == "nasa"

    def test_case_upper_minus_1(self):
        assert apply_transform("TRANSFORM_CASE_UPPER_-1", "nasa") == "NASa"

    def test_split_without_hyphen_raises(self):
        with pytest.raises(InapplicableTransform):
            apply_transform("TRANSFORM_SPLIT_HYPHEN", "cat")

    def test_split(self):
        assert apply_transform("TRANSFORM_SPLIT_HYPHEN", "well-known") == ("well", "known")
        assert apply_transform("TRANSFORM_SPLIT_HYPHEN", "a-b-c") == ("a", "b-c")

    def test_edge_hyphen_is_not_splittable(self):
        for tok in ["-ab", "ab-", "-"]:
            with pytest.raises(InapplicableTransform):
                apply_transform("TRANSFORM_SPLIT_HYPHEN", tok)

    def test_merge(self):
        assert apply_transform("MERGE_HYPHEN", "well", "known") == "well-known"
        assert apply_transform("MERGE_SPACE", "some", "thing") == "something"

    def test_merge_without_next_raises(self):
        with pytest.raises(InapplicableTransform):
            apply_transform("MERGE_HYPHEN", "well")

    def test_plural_rules(self):
        assert pluralize("dog") == "dogs"
        assert pluralize("box") == "boxes"
        assert pluralize("bus") == "buses"
        assert pluralize("child") == "children"
        assert pluralize("person") == "people"

    def test_singular_rules(self):
        assert singularize("dogs") == "dog"
        assert singularize("boxes") == "box"
        assert singularize("children") == "child"
        assert singularize("horses") == "horse"
        with pytest.raises(InapplicableTransform):
            singularize("dog")

    def test_generic_verb_tag_needs_slot(self):
        with pytest.raises(InapplicableTransform):
            apply_transform("TRANSFORM_VERB", "walked")

    def test_specific_verb_tags(self):
        assert apply_transform("TRANSFORM_VERB_VBD_VBG", "walked") == "walking"
        assert apply_transform("TRANSFORM_VERB_VBD_VB", "went") == "go"
        assert apply_transform("TRANSFORM_VERB_VB_VBZ", "run") == "runs"
        with pytest.raises(InapplicableTransform):
            apply_transform("TRANSFORM_VERB_VBZ_VB", "walked")


class TestDetect:
    def test_spec_examples(self):
        assert detect_transform("jimi", "Jimi", CORE) == "TRANSFORM_CASE_CAPITAL"
        assert detect_transform("dog", "dogs", CORE) == "TRANSFORM_AGREEMENT_PLURAL"
        assert detect_transform("dog", "cat", CORE) is None

    def test_kdra_has_no_transforms(self):
        assert detect_transform("jimi", "Jimi", KDRA) is None
        assert detect_merge("well", "known", "well-known", KDRA) is None
        assert detect_split("well-known", "well", "known", KDRA) is None

    def test_verb_generic_vs_specific(self):
        assert detect_transform("walked", "walking", CORE) == "TRANSFORM_VERB"
        assert detect_transform("walked", "walking", EXT) == "TRANSFORM_VERB_VBD_VBG"
        assert detect_transform("went", "gone", EXT) == "TRANSFORM_VERB_VBD_VBN"

    def test_merge_space_only_in_extended(self):
        assert detect_merge("some", "thing", "something", CORE) is None
        assert detect_merge("some", "thing", "something", EXT) == "MERGE_SPACE"
        assert detect_merge("well", "known", "well-known", EXT) == "MERGE_HYPHEN"

    def test_detected_tags_are_sound(self):
        pairs = [
            ("nasa", "NASA"), ("It", "it"), ("house", "houses"), ("mice", "mouse"),
            ("ran", "running"), ("goes", "went"), ("iphone", "iPhone"),
        ]
        for tag_set in (CORE, EXT):
            for src, tgt in pairs:
                kind = detect_transform(src, tgt, tag_set)
                if kind is None or kind == "TRANSFORM_VERB":
                    continue
                assert apply_transform(kind, src) == tgt

    def test_verb_change_shared_lemma(self):
        assert verb_change("walked", "walks") == ("VBD", "VBZ")
        assert verb_change("lay", "lain") == ("VBD", "VBN")
        assert verb_change("dog", "cat") is None
