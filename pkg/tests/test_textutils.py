import random

import pytest

from aranlp.errors import EmptySeparatorSet, InvalidThreshold, NonArabicLetter
from aranlp.textutils import (
    COMPATIBLE,
    IDENTICAL,
    INCOMPATIBLE,
    SplitConfig,
    jaccard,
    match_words,
    remove_duplicates,
    split_sentences,
)

from _oracles import oracle_tf_cosine, random_token


class TestSplitSentences:
    def test_attach_separator(self):
        config = SplitConfig(classes=frozenset({"period", "question"}))
        assert split_sentences("أهلا. كيف حالك؟", config) == ["أهلا.", "كيف حالك؟"]

    def test_unselected_separators_ignored(self):
        config = SplitConfig(classes=frozenset({"period"}))
        assert split_sentences("أهلا! مرحبا", config) == ["أهلا! مرحبا"]

    def test_empty_input(self):
        assert split_sentences("", SplitConfig()) == []

    def test_drop_separator(self):
        config = SplitConfig(classes=frozenset({"period"}), attach_separator=False)
        assert split_sentences("اليوم. غدا.", config) == ["اليوم", "غدا"]

    def test_custom_codepoint(self):
        config = SplitConfig(classes=frozenset(), custom=frozenset("؛"))
        assert split_sentences("أولا؛ ثانيا", config) == ["أولا؛", "ثانيا"]

    def test_empty_separator_set(self):
        with pytest.raises(EmptySeparatorSet):
            SplitConfig(classes=frozenset(), custom=frozenset())

    def test_empty_segments_dropped(self):
        config = SplitConfig(classes=frozenset({"period"}))
        assert split_sentences("a.. b", config) == ["a.", "b"]

    def test_sentences_are_substrings_and_splits_only_at_separators(self):
        rng = random.Random(5)
        config = SplitConfig(classes=frozenset({"period", "question"}))
        separators = config.separator_chars()
        for _ in range(200):
            text = "".join(rng.choice("اب ج.?؟! \n") for _ in range(rng.randint(0, 30)))
            sentences = split_sentences(text, config)
            for sentence in sentences:
                body = sentence[:-1] if sentence[-1] in separators else sentence
                assert body in text
                assert not any(ch in separators for ch in body)


class TestMatchWords:
    def test_compatible_pair(self):
        assert match_words("فَعلَ", "فعَل").relation == COMPATIBLE

    def test_incompatible_pair(self):
        verdict = match_words("فَعلَ", "فِعلَ")
        assert verdict.relation == INCOMPATIBLE
        assert verdict.first_conflict == 0

    def test_identical(self):
        verdict = match_words("فعل", "فعل")
        assert verdict.relation == IDENTICAL
        assert verdict.first_conflict is None

    def test_skeleton_mismatch(self):
        verdict = match_words("فعل", "فعلم")
        assert verdict.relation == INCOMPATIBLE
        assert verdict.first_conflict == 3

    def test_shaddah_subset_rules(self):
        assert match_words("بَّ", "بَ").relation == COMPATIBLE
        assert match_words("بّ", "بَ").relation == COMPATIBLE
        assert match_words("بَّ", "بِ").relation == INCOMPATIBLE

    def test_decompose_errors_propagate(self):
        with pytest.raises(NonArabicLetter):
            match_words("abc", "abc")

    def test_symmetry_and_reflexivity(self):
        rng = random.Random(9)
        for _ in range(1000):
            w1, w2 = random_token(rng), random_token(rng)
            assert match_words(w1, w1).relation == IDENTICAL
            assert match_words(w1, w2).relation == match_words(w2, w1).relation

    def test_match_against_stripped_form(self):
        from aranlp.script import ar_strip

        rng = random.Random(10)
        for _ in range(300):
            w = random_token(rng)
            relation = match_words(w, ar_strip(w, diacritics=True)).relation
            assert relation in (IDENTICAL, COMPATIBLE)


class TestJaccard:
    def test_compatible_words_merge(self):
        report = jaccard(["فَعلَ"], ["فعَل"], "diacritic_aware")
        assert (report.union_size, report.intersection_size) == (1, 1)
        assert report.similarity == 1.0

    def test_disjoint_exact(self):
        report = jaccard(["كتب"], ["ذهب"], "exact")
        assert report.intersection_size == 0
        assert report.similarity == 0.0

    def test_identity_exact(self):
        words = ["كتب", "ذهب", "درس"]
        assert jaccard(words, words, "exact").similarity == 1.0

    def test_exact_counts(self):
        report = jaccard(["ا", "ب", "ب"], ["ب", "ت"], "exact")
        assert (report.union_size, report.intersection_size) == (3, 1)
        assert report.similarity == pytest.approx(1 / 3)

    def test_both_empty(self):
        assert jaccard([], [], "exact").similarity == 1.0

    def test_symmetry(self):
        rng = random.Random(11)
        for _ in range(100):
            s1 = [random_token(rng, 3) for _ in range(rng.randint(0, 4))]
            s2 = [random_token(rng, 3) for _ in range(rng.randint(0, 4))]
            for mode in ("exact", "diacritic_aware"):
                a = jaccard(s1, s2, mode)
                b = jaccard(s2, s1, mode)
                assert (a.union_size, a.intersection_size) == (b.union_size, b.intersection_size)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            jaccard([], [], "fuzzy")


class TestRemoveDuplicates:
    def test_exact_duplicate_dropped(self):
        assert remove_duplicates(["A B", "A B", "C"], 0.99) == ["A B", "C"]

    def test_disjoint_kept(self):
        assert remove_duplicates(["A B", "C D"], 0.5) == ["A B", "C D"]

    def test_near_duplicate_at_two_thirds(self):
        assert oracle_tf_cosine("A B C", "A B D") == pytest.approx(2 / 3)
        assert remove_duplicates(["A B C", "A B D"], 0.6) == ["A B C"]
        assert remove_duplicates(["A B C", "A B D"], 0.7) == ["A B C", "A B D"]

    def test_threshold_above_one_keeps_everything(self):
        sentences = ["A", "A", "B B", "B B"]
        assert remove_duplicates(sentences, 1.01) == sentences

    def test_threshold_zero_keeps_only_first(self):
        assert remove_duplicates(["A", "B", "C D"], 0.0) == ["A"]

    def test_diacritics_ignored_in_vectors(self):
        assert remove_duplicates(["فَعلَ", "فعل"], 0.9) == ["فَعلَ"]

    def test_invalid_threshold(self):
        for bad in (-0.1, float("nan"), float("inf"), "x"):
            with pytest.raises(InvalidThreshold):
                remove_duplicates(["a"], bad)

    def test_order_preserved(self):
        kept = remove_duplicates(["x y", "z", "x y z w q r s t u v"], 0.9)
        assert kept == ["x y", "z", "x y z w q r s t u v"]

    def test_size_monotone_in_threshold(self):
        rng = random.Random(13)
        sentences = []
        for g in range(5):
            base = " ".join(f"g{g}w{j}" for j in range(8))
            sentences.append(base)
            sentences.append(base)
            sentences.append(" ".join(base.split()[:4]))
        rng.shuffle(sentences)
        sizes = [
            len(remove_duplicates(sentences, t))
            for t in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.01]
        ]
        assert sizes == sorted(sizes)
        assert sizes[-1] == len(sentences)
