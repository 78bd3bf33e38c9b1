import io
import json
import tracemalloc
from pathlib import Path

import pytest

from editkit.errors import MalformedDump
from editkit.ingest import (
    FilterConfig,
    IngestStats,
    RawRevision,
    RevisionPair,
    SentencePair,
    extract_sentence_pairs,
    filter_comment,
    filter_pair,
    ingest_pages,
    split_sentences,
    stream_pages,
    strip_markup,
)
from editkit.ingest.comments import BLACKLIST_TERMS, SHORTCUT_EXPANSIONS, expand_shortcuts

FIXTURE = Path(__file__).parent / "fixtures" / "mini_dump.xml"


class TestStreamPages:
    def test_empty_dump(self, tmp_path):
        path = tmp_path / "empty.xml"
        path.write_text("<mediawiki></mediawiki>")
        assert list(stream_pages(path)) == []

    def test_fixture_pages_and_ordering(self):
        pages = list(stream_pages(FIXTURE))
        assert [pid for pid, _ in pages] == [100, 200, 300]
        assert [r.rev_id for r in pages[0][1]] == [1001, 1002, 1003]
        assert pages[0][1][1].parent_rev_id == 1001

    def test_missing_comment_is_empty(self, tmp_path):
        path = tmp_path / "nc.xml"
        path.write_text(
            "<mediawiki><page><id>1</id>"
            "<revision><id>10</id><text>hello there</text></revision>"
            "</page></mediawiki>"
        )
        (_, revs), = stream_pages(path)
        assert revs[0].comment == ""
        assert filter_comment(revs[0].comment).keep is False

    def test_malformed_dump_reports_offset(self, tmp_path):
        path = tmp_path / "bad.xml"
        path.write_text("<mediawiki><page><id>1</id><revision>")
        with pytest.raises(MalformedDump) as err:
            list(stream_pages(path))
        assert err.value.offset is not None

    def test_jsonl_roundtrip(self, tmp_path):
        path = tmp_path / "revs.jsonl"
        rows = [
            {"page_id": 1, "rev_id": 2, "comment": "a", "text": "x"},
            {"page_id": 1, "rev_id": 1, "comment": "b", "text": "y"},
            {"page_id": 2, "rev_id": 5, "parent_rev_id": 4, "comment": "c", "text": "z"},
        ]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        pages = list(stream_pages(path))
        assert [pid for pid, _ in pages] == [1, 2]
        assert [r.rev_id for r in pages[0][1]] == [1, 2]
        assert pages[1][1][0].parent_rev_id == 4

    def test_jsonl_malformed_line_offset(self, tmp_path):
        path = tmp_path / "revs.jsonl"
        good = json.dumps({"page_id": 1, "rev_id": 1, "comment": "", "text": ""})
        path.write_text(good + "\n{broken\n")
        with pytest.raises(MalformedDump) as err:
            list(stream_pages(path))
        assert err.value.offset == len(good) + 1


class TestFilterComment:
    def test_shortcut_expansion(self):
        decision = filter_comment("fix [[WP:TYPO]]")
        assert decision.keep and decision.normalized == "fix typo"

    def test_blacklist(self):
        decision = filter_comment("added photo of the bridge")
        assert not decision.keep and decision.reason == "blacklist:photo"

    def test_empty(self):
        assert filter_comment("").reason == "empty"
        assert filter_comment("   ").reason == "empty"

    def test_all_twelve_terms_drop(self):
        assert len(BLACKLIST_TERMS) == 12
        for term in BLACKLIST_TERMS:
            decision = filter_comment(f"tidy up wording {term} and such")
            assert not decision.keep and decision.reason == f"blacklist:{term}"

    def test_exact_expansion_strings(self):
        assert expand_shortcuts("[[WP:NPOV|POV]]") == "neutral point of view"
        assert expand_shortcuts("[[WP:TYPO]]") == "typo"
        assert expand_shortcuts("[[WP:RS]]") == "reliable sources"
        assert expand_shortcuts("[[WP:SYN]]") == "synthesis"
        assert len(SHORTCUT_EXPANSIONS) == 4


class TestStripMarkup:
    def test_internal_link_keeps_display(self):
        assert strip_markup("a [[dog|hound]] ran") == "a hound ran"

    def test_internal_link_without_display(self):
        assert strip_markup("a [[dog]] ran") == "a dog ran"

    def test_template_removed(self):
        assert strip_markup("x {{cite web}} y") == "x  y"

    def test_nested_template_one_level(self):
        assert strip_markup("x {{outer {{inner}} }} y") == "x  y"

    def test_plain_text_unchanged(self):
        assert strip_markup("plain") == "plain"

    def test_ref_and_quotes_and_heading(self):
        assert strip_markup("a<ref>cite</ref> b") == "a b"
        assert strip_markup("an '''important''' ''word''") == "an important word"
        assert strip_markup("== Title ==\nbody") == "Title\nbody"

    def test_external_link_keeps_anchor(self):
        assert strip_markup("see [https://x.test the docs] now") == "see the docs now"


class TestSplitSentences:
    def test_simple(self):
        assert split_sentences("A b. C d.") == ["A b.", "C d."]

    def test_abbreviation_suppression(self):
        assert split_sentences("Dr. Smith left.") == ["Dr. Smith left."]
        assert split_sentences("He lives in the U.S. He is well.") == [
            "He lives in the U.S. He is well."
        ]

    def test_empty(self):
        assert split_sentences("") == []

    def test_question_and_quote(self):
        assert split_sentences('Why now? "Because." He left.') == [
            "Why now?", '"Because."', "He left.",
        ]


class TestExtractPairs:
    def test_identical_docs(self):
        pair = RevisionPair(comment="c", source_doc="A b. C d.", target_doc="A b. C d.")
        assert extract_sentence_pairs(pair) == []

    def test_single_changed_sentence(self):
        pair = RevisionPair(
            comment="c",
            source_doc="A b. C was here. E f.",
            target_doc="A b. C is here. E f.",
        )
        out = extract_sentence_pairs(pair)
        assert len(out) == 1
        assert out[0].source == "C was here." and out[0].target == "C is here."

    def test_added_sentence_contributes_nothing(self):
        pair = RevisionPair(
            comment="c",
            source_doc="A b. E f.",
            target_doc="A b. New thing here. E f.",
        )
        assert extract_sentence_pairs(pair) == []


class TestFilterPair:
    CFG = FilterConfig()

    def test_number_only_change_dropped(self):
        pair = SentencePair("It has 2 units", "It has 3 units", "update")
        assert filter_pair(pair, self.CFG).reason == "number_or_time"

    def test_date_only_change_dropped(self):
        pair = SentencePair("Born 4 May 1990 in town", "Born 7 June 1991 in town", "c")
        assert filter_pair(pair, self.CFG).reason == "number_or_time"

    def test_unrelated_pair_dropped(self):
        pair = SentencePair("alpha beta gamma delta", "omicron pi rho sigma", "c")
        assert filter_pair(pair, self.CFG).reason == "bleu_low"

    def test_near_identical_dropped(self):
        text = "The quick brown fox jumps over the lazy dog near the quiet river bank today."
        pair = SentencePair(text, text[:-1] + " .", "c")
        assert filter_pair(pair, self.CFG).reason == "bleu_high"

    def test_table1_fluency_pair_kept(self):
        pair = SentencePair(
            "At the end of the 1986 season, he announced that would retire after completing the 1987 NFL season.",
            "At the end of the 1986 season, he announced that he would retire after completing the 1987 NFL season.",
            "Minor grammatical fix",
        )
        assert filter_pair(pair, self.CFG).keep

    def test_len_ratio_dropped_but_exempt_for_simplification(self):
        pair = SentencePair(
            "many european sales were slowed when copies of the album were recalled "
            "by the record company after the big mastering error was discovered",
            "copies of the album were recalled",
            "rm unnecessary detail",
        )
        assert filter_pair(pair, self.CFG).reason == "len_ratio"
        assert filter_pair(pair, self.CFG, intent="simplification").keep

    def test_comment_similarity_dropped(self):
        pair = SentencePair(
            "fixed the spelling of the word recieve here",
            "fixed the spelling of the word receive there today",
            "fixed the spelling of the word recieve here",
        )
        assert filter_pair(pair, self.CFG).reason == "comment_similar_to_source"


class TestPipeline:
    def test_fixture_counts_and_totality(self):
        stats = IngestStats()
        pairs = list(ingest_pages(stream_pages(FIXTURE), FilterConfig(), stats))
        assert len(pairs) == 4
        assert stats.revisions_kept + sum(stats.revision_drops.values()) == stats.revisions_total
        assert stats.pairs_kept + sum(stats.pair_drops.values()) == stats.pairs_total
        assert stats.pairs_kept == 4

    def test_determinism(self):
        def run():
            stats = IngestStats()
            return [
                (p.source, p.target, p.comment)
                for p in ingest_pages(stream_pages(FIXTURE), FilterConfig(), stats)
            ]
        assert run() == run()

    def test_streaming_constant_memory(self, tmp_path):
        path = tmp_path / "big.jsonl"
        with open(path, "w") as fh:
            for page in range(10_000):
                for rev in range(2):
                    fh.write(json.dumps({
                        "page_id": page,
                        "rev_id": rev + 1,
                        "comment": "reword sentence for clarity" if rev else "",
                        "text": f"Page {page} sentence stays the same here. Version {rev} text body goes right here.",
                    }) + "\n")
        tracemalloc.start()
        count = 0
        for _pair in ingest_pages(stream_pages(path), FilterConfig()):
            count += 1
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        assert peak < 16 * 1024 * 1024, f"peak {peak} bytes"
