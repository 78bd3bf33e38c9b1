import math
import random

import pytest
from hypothesis import given, strategies as st

from editkit.errors import EmptyReferenceSet
from editkit.metrics import (
    EvalInstance,
    EvalReport,
    bleu,
    evaluate_instances,
    exact_match,
    gleu,
    sari,
)

from metric_oracles import oracle_bleu, oracle_gleu, oracle_sari

TOL = 1e-9


class TestSari:
    # Fixture values frozen from tests/metric_oracles.py before wiring them
    # up to the library implementation.
    FIXTURES = [
        (["a", "b", "c"], ["a", "b", "c"], [["a", "b", "d"]], 37.22222222222222),
        (["a", "b", "c"], ["a", "b", "d"], [["a", "b", "d"]], 100.0),
        ("the big cat sat".split(), "the cat sat down".split(),
         ["the cat sat down".split(), "a cat sat down".split()], 90.35353535353535),
        ("a b c d".split(), "a b".split(), [["a", "b", "c"]], 74.72222222222223),
    ]

    @pytest.mark.parametrize("src,pred,refs,expected", FIXTURES)
    def test_frozen_fixtures(self, src, pred, refs, expected):
        assert sari(src, pred, refs) == pytest.approx(expected, abs=TOL)

    def test_identity_scores_100(self):
        assert sari("a b c", "a b c", ["a b c"]) == pytest.approx(100.0, abs=TOL)

    def test_empty_references(self):
        with pytest.raises(EmptyReferenceSet):
            sari("a", "a", [])

    def test_matches_oracle_on_random_cases(self):
        rng = random.Random(3)
        vocab = ["a", "b", "c", "d", "e"]
        for _ in range(150):
            src = [rng.choice(vocab) for _ in range(rng.randint(0, 6))]
            pred = [rng.choice(vocab) for _ in range(rng.randint(0, 6))]
            refs = [
                [rng.choice(vocab) for _ in range(rng.randint(0, 6))]
                for _ in range(rng.randint(1, 3))
            ]
            assert sari(src, pred, refs) == pytest.approx(oracle_sari(src, pred, refs), abs=TOL)


class TestGleu:
    FIXTURES = [
        ("a b c d e".split(), "a c d e".split(), [["a", "c", "d", "e"]], 100.0),
        ("a b c d e".split(), "a c d e".split(), [["a", "c", "d", "e", "f"]], 77.8800783071405),
        ("a b c d e f g h".split(), "a b c d e f g h".split(),
         ["a b c d e f g".split()], 68.03749333171201),
        ("a b c d e".split(), "a b c d f".split(),
         ["a b c d f".split(), "a b c e f".split()], 50.0),
    ]

    @pytest.mark.parametrize("src,pred,refs,expected", FIXTURES)
    def test_frozen_fixtures(self, src, pred, refs, expected):
        assert gleu(src, pred, refs) == pytest.approx(expected, abs=TOL)

    def test_perfect_prediction(self):
        assert gleu("x y", "a b c d e", ["a b c d e"]) == pytest.approx(100.0, abs=TOL)

    def test_zero_fourgram_overlap_is_zero(self):
        assert gleu("the big cat sat down", "the big cat sat", ["the cat sat down"]) == 0.0

    def test_matches_oracle_on_random_cases(self):
        rng = random.Random(17)
        vocab = ["a", "b", "c", "d"]
        for _ in range(150):
            src = [rng.choice(vocab) for _ in range(rng.randint(1, 7))]
            pred = [rng.choice(vocab) for _ in range(rng.randint(0, 7))]
            refs = [[rng.choice(vocab) for _ in range(rng.randint(1, 7))]
                    for _ in range(rng.randint(1, 2))]
            assert gleu(src, pred, refs) == pytest.approx(oracle_gleu(src, pred, refs), abs=TOL)


class TestBleu:
    def test_identical(self):
        assert bleu("x y z", "x y z") == pytest.approx(1.0, abs=TOL)

    def test_disjoint(self):
        assert bleu("a b c", "x y z") == 0.0

    def test_hand_case(self):
        # (3/4 * 2/4 * 1/3 * 1/2) ** 0.25 == 0.5 exactly
        assert bleu("the cat sat down", "the cat lay down") == pytest.approx(0.5, abs=TOL)

    def test_brevity_fixture(self):
        assert bleu("the cat", "the big cat") == pytest.approx(0.510029457493824, abs=TOL)

    def test_matches_oracle_on_random_cases(self):
        rng = random.Random(23)
        vocab = ["a", "b", "c"]
        for _ in range(200):
            cand = [rng.choice(vocab) for _ in range(rng.randint(0, 6))]
            ref = [rng.choice(vocab) for _ in range(rng.randint(0, 6))]
            assert bleu(cand, ref) == pytest.approx(oracle_bleu(cand, ref), abs=TOL)


class TestExactMatch:
    def test_equal(self):
        assert exact_match("a b", ["a b"]) == 100.0

    def test_one_char_off(self):
        assert exact_match("a b", ["a c"]) == 0.0

    def test_whitespace_normalized(self):
        assert exact_match("a  b", ["a b"]) == 100.0
        assert exact_match(" a b ", ["a b"]) == 100.0


texts = st.lists(st.sampled_from(["a", "b", "c", "d"]), min_size=0, max_size=8)


class TestProperties:
    @given(texts, texts, st.lists(texts, min_size=1, max_size=3))
    def test_boundedness(self, src, pred, refs):
        assert 0.0 <= sari(src, pred, refs) <= 100.0
        assert 0.0 <= gleu(src, pred, refs) <= 100.0
        assert 0.0 <= bleu(pred, refs[0]) <= 1.0

    @given(texts, texts, st.lists(texts, min_size=2, max_size=3))
    def test_reference_permutation_invariance(self, src, pred, refs):
        shuffled = list(reversed(refs))
        assert sari(src, pred, refs) == pytest.approx(sari(src, pred, shuffled), abs=TOL)
        assert gleu(src, pred, refs) == pytest.approx(gleu(src, pred, shuffled), abs=TOL)

    @given(texts, st.lists(st.sampled_from(["a", "b", "c", "d"]), min_size=1, max_size=8))
    def test_em_100_implies_sari_100_single_reference(self, src, pred):
        if exact_match(" ".join(pred), [" ".join(pred)]) == 100.0:
            assert sari(src, pred, [pred]) == pytest.approx(100.0, abs=TOL)


class TestReport:
    def test_corpus_mean(self):
        instances = [
            EvalInstance("a b c", "a b d", ["a b d"]),
            EvalInstance("a b c", "a b c", ["a b d"]),
        ]
        report, rows = evaluate_instances("demo", instances)
        expected = sum(r["sari"] for r in rows) / 2
        assert report.datasets["demo"]["sari"] == pytest.approx(expected, abs=TOL)
        assert report.datasets["demo"]["count"] == 2

    def test_missing_metrics_omitted(self):
        instances = [EvalInstance("a", "a", ["a"])]
        report, _ = evaluate_instances("demo", instances, metrics=("sari",))
        assert "gleu" not in report.datasets["demo"]
        assert "em" not in report.datasets["demo"]

    def test_instance_requires_references(self):
        with pytest.raises(EmptyReferenceSet):
            EvalInstance("a", "a", [])
