import math

import numpy as np
import pytest

from headcheck.corpus import Document, EmbeddingTable, LexiconSet
from headcheck.csrmine import ClassSequentialRule
from headcheck.features import (
    BASIC_FEATURE_NAMES,
    BODY_FEATURE_NAMES,
    FeatureError,
    FeatureVector,
    RteWeights,
    TfidfModel,
    ambiguous_vector,
    basic_features,
    concat_vectors,
    degraded_inputs,
    informal_gap,
    informality,
    misleading_body_features,
    misleading_body_vector,
    misleading_head_vector,
    rte_score,
    sentiment,
    similarity_stats,
    summarize,
    write_feature_matrix,
)


def make_doc(headline, body=(), **kwargs):
    return Document(
        id=kwargs.pop("id", "t1"),
        headline=tuple(headline),
        body=tuple(tuple(s) for s in body),
        domain="other",
        source="synth",
        **kwargs,
    )


def flat_idf():
    """idf model over an empty corpus: every term gets ln(1) = 0... so use
    one dummy doc to keep weights nonzero."""
    return TfidfModel.fit([["占位"]])


@pytest.fixture(scope="module")
def toy_embeddings():
    vectors = {
        "h02": np.array([0.2, math.sqrt(1 - 0.04)]),
        "h08": np.array([0.8, 0.6]),
        "base": np.array([1.0, 0.0]),
        "same": np.array([0.5, 0.5]),
        "anti": np.array([-1.0, 0.0]),
    }
    return EmbeddingTable(2, vectors)


class TestFeatureVector:
    def test_duplicate_names_rejected(self):
        with pytest.raises(FeatureError, match="duplicate"):
            FeatureVector("s", ("a", "a"), np.array([1.0, 2.0]))

    def test_length_mismatch_rejected(self):
        with pytest.raises(FeatureError, match="names"):
            FeatureVector("s", ("a",), np.array([1.0, 2.0]))

    def test_non_finite_rejected(self):
        with pytest.raises(FeatureError, match="non-finite"):
            FeatureVector("s", ("a",), np.array([float("nan")]))


class TestBasicFeatures:
    def test_unmatched_tokens_only_count_words(self, lexicons):
        fv = basic_features(make_doc(["苹果", "香蕉", "橙子", "梨", "桃"]), lexicons)
        assert fv.names == BASIC_FEATURE_NAMES
        values = fv.as_dict()
        assert values["wordcnt"] == 5.0
        assert all(v == 0.0 for name, v in values.items() if name != "wordcnt")

    def test_worked_example_has_one_forward_ref(self, lexicons):
        fv = basic_features(make_doc(["她", "曾经", "但", "现在"]), lexicons)
        values = fv.as_dict()
        assert values["forward_ref"] == 1.0
        assert values["wordcnt"] == 4.0
        assert values["baitword"] == 0.0
        assert values["whword"] == 0.0

    def test_dependency_distance_mean(self, lexicons):
        doc = make_doc(["a", "b", "c", "d"], headline_deps=((0, 1), (0, 3)))
        assert basic_features(doc, lexicons).as_dict()["dep_distance"] == 2.0

    def test_no_deps_gives_zero_distance(self, lexicons):
        assert basic_features(make_doc(["a"]), lexicons).as_dict()["dep_distance"] == 0.0

    def test_counts_are_raw_not_frequencies(self, lexicons):
        fv = basic_features(make_doc(["震惊", "震惊", "！", "？", "…", "3", "很"]), lexicons)
        values = fv.as_dict()
        assert values["baitword"] == 2.0
        assert values["punctuation"] == 3.0
        assert values["number"] == 1.0
        assert values["degree_very"] == 1.0


class TestBodyIndicators:
    def test_informality_frequencies(self, lexicons):
        tokens = ["给力", "吃瓜", "震惊"] + ["x"] * 7
        assert list(informality(tokens, lexicons)) == [0.2, 0.1, 10.0]

    def test_informality_empty(self, lexicons):
        assert list(informality([], lexicons)) == [0.0, 0.0, 0.0]

    def test_informality_all_slang(self, lexicons):
        assert list(informality(["给力"] * 4, lexicons)) == [1.0, 0.0, 4.0]

    def test_sentiment_five_frequencies(self, lexicons):
        tokens = ["好", "坏", "开心", "愤怒", "认为"] + ["x"] * 5
        assert list(sentiment(tokens, lexicons)) == [0.1, 0.1, 0.1, 0.1, 0.1]

    def test_sentiment_no_hits(self, lexicons):
        assert list(sentiment(["x", "y"], lexicons)) == [0.0] * 5

    def test_token_in_two_classes_counts_in_both(self):
        lex = LexiconSet(pos_eval=frozenset({"w"}), subjective=frozenset({"w"}))
        values = sentiment(["w", "z"], lex)
        assert values[0] == 0.5 and values[4] == 0.5

    def test_informal_gap_mean_of_absolute_differences(self, lexicons):
        # headline: slang 1/2, bait 0; body: slang 1/10, bait 2/10
        doc = make_doc(
            ["给力", "x"],
            body=[["给力", "震惊", "震惊"] + ["y"] * 7],
        )
        assert math.isclose(informal_gap(doc, lexicons), (0.4 + 0.2) / 2, abs_tol=1e-12)

    def test_gaps_vanish_when_frequencies_match(self, lexicons):
        doc = make_doc(["给力", "x"], body=[["给力", "y"]])
        assert informal_gap(doc, lexicons) == 0.0
        assert list(senti_gap_zero := np.zeros(5)) == list(
            np.round(np.abs(sentiment(doc.headline, lexicons) - sentiment(doc.body_tokens(), lexicons)), 12)
        )

    def test_gap_symmetric_under_swap(self, lexicons):
        head = ["好", "坏", "x"]
        body_sent = ["开心", "y", "认为", "z"]
        doc = make_doc(head, body=[body_sent])
        swapped = make_doc(body_sent, body=[head])
        assert informal_gap(doc, lexicons) == informal_gap(swapped, lexicons)
        from headcheck.features import senti_gap

        assert list(senti_gap(doc, lexicons)) == list(senti_gap(swapped, lexicons))


class TestSummarize:
    def test_single_sentence_body(self):
        body = (("只有", "一", "句"),)
        assert summarize(body, 3) == list(body)

    def test_k_equal_to_body_is_identity(self):
        body = (("a", "b"), ("c",), ("d", "e"))
        assert summarize(body, 3) == list(body)

    def test_outlier_sentence_dropped(self):
        body = (("cat", "dog", "fish"), ("cat", "dog", "bird"), ("quantum",))
        assert summarize(body, 2) == [("cat", "dog", "fish"), ("cat", "dog", "bird")]

    def test_original_order_preserved(self):
        body = (("quantum",), ("cat", "dog", "fish"), ("cat", "dog", "bird"))
        assert summarize(body, 2) == [("cat", "dog", "fish"), ("cat", "dog", "bird")]

    def test_invalid_k(self):
        with pytest.raises(FeatureError):
            summarize((("a",),), 0)


class TestTfidfModel:
    def test_unseen_term_idf_default(self):
        model = TfidfModel.fit([["a"], ["a", "b"], ["c"]])
        assert math.isclose(model.idf("zzz"), math.log(4), abs_tol=1e-12)
        assert math.isclose(model.idf("a"), math.log(4 / 3), abs_tol=1e-12)

    def test_cosine_identity_and_disjoint(self):
        model = TfidfModel.fit([["a", "b"], ["c"]])
        assert math.isclose(model.cosine(["a", "b"], ["a", "b"]), 1.0, abs_tol=1e-12)
        assert model.cosine(["a"], ["c"]) == 0.0
        assert model.cosine([], ["c"]) == 0.0

    def test_round_trip(self, tmp_path):
        model = TfidfModel.fit([["一", "二"], ["二", "三"]])
        path = tmp_path / "idf.json"
        model.save(path)
        loaded = TfidfModel.load(path)
        assert loaded.n_docs == model.n_docs
        assert loaded.idf("二") == model.idf("二")
        assert loaded.idf("zzz") == model.idf("zzz")


class TestSimilarityStats:
    def test_headline_subset_of_body_scores_one(self, toy_embeddings):
        doc = make_doc(["base", "same"], body=[["base", "same", "anti"]])
        stats = similarity_stats(doc, toy_embeddings, summarize(doc.body), flat_idf())
        assert math.isclose(stats.min_sim, 1.0, abs_tol=1e-12)
        assert math.isclose(stats.avg_sim, 1.0, abs_tol=1e-12)
        assert stats.scored_tokens == 2

    def test_missing_entity_counts(self, toy_embeddings):
        doc = make_doc(
            ["王丽", "base"],
            body=[["base"]],
            headline_entities=frozenset({0}),
            body_entity_strings=frozenset({"别人"}),
        )
        stats = similarity_stats(doc, toy_embeddings, doc.body, flat_idf())
        assert stats.entity_misses == 1
        assert stats.entity_annotated

    def test_two_scorable_tokens(self, toy_embeddings):
        doc = make_doc(["h02", "h08"], body=[["base"]])
        stats = similarity_stats(doc, toy_embeddings, doc.body, flat_idf())
        assert math.isclose(stats.min_sim, 0.2, abs_tol=1e-12)
        assert math.isclose(stats.avg_sim, 0.5, abs_tol=1e-12)

    def test_entity_tokens_are_excluded_from_scoring(self, toy_embeddings):
        doc = make_doc(
            ["anti", "base"],
            body=[["base"]],
            headline_entities=frozenset({0}),
            body_entity_strings=frozenset(),
        )
        stats = similarity_stats(doc, toy_embeddings, doc.body, flat_idf())
        # only "base" is scored; "anti" is an entity
        assert stats.scored_tokens == 1
        assert stats.min_sim == 1.0

    def test_oov_tokens_excluded_from_m(self, toy_embeddings):
        doc = make_doc(["base", "没有向量"], body=[["base"]])
        stats = similarity_stats(doc, toy_embeddings, doc.body, flat_idf())
        assert stats.scored_tokens == 1

    def test_no_scorable_tokens_degrades(self, toy_embeddings):
        doc = make_doc(["没有向量"], body=[["也没有"]])
        stats = similarity_stats(doc, toy_embeddings, doc.body, flat_idf())
        assert stats.scored_tokens == 0
        assert stats.min_sim == 0.0 and stats.avg_sim == 0.0
        assert stats.degraded

    def test_min_never_exceeds_avg(self, toy_embeddings):
        doc = make_doc(["h02", "h08", "anti"], body=[["base", "same"]])
        stats = similarity_stats(doc, toy_embeddings, doc.body, flat_idf())
        assert stats.min_sim <= stats.avg_sim + 1e-12

    def test_summary_similarity_uses_idf(self):
        idf = TfidfModel.fit([["新闻", "正文"], ["别的"]])
        doc = make_doc(["新闻"], body=[["新闻", "正文"]])
        stats = similarity_stats(doc, EmbeddingTable(2, {}), doc.body, idf)
        assert 0.0 < stats.summary_sim <= 1.0


class TestRteScore:
    def test_verbatim_pair_scores_exact_squared(self, lexicons):
        doc = make_doc(
            ["增长", "迅速"],
            body=[["增长", "迅速"]],
            headline_deps=((0, 1),),
            body_deps=(((0, 1),),),
        )
        assert rte_score(doc, lexicons) == 1.0

    def test_no_body_deps_scores_zero(self, lexicons):
        doc = make_doc(["增长", "迅速"], body=[["增长"]], headline_deps=((0, 1),))
        assert rte_score(doc, lexicons) == 0.0

    def test_no_headline_deps_scores_zero(self, lexicons):
        doc = make_doc(["增长"], body=[["增长"]], body_deps=(((0, 0),),))
        assert rte_score(doc, lexicons) == 0.0

    def test_synonym_match_scores_point_eight(self, lexicons):
        doc = make_doc(
            ["增长", "鲤鱼"],
            body=[["增长", "锦鲤"]],
            headline_deps=((0, 1),),
            body_deps=(((0, 1),),),
        )
        assert math.isclose(rte_score(doc, lexicons), 0.8, abs_tol=1e-12)

    def test_best_body_pair_wins(self, lexicons):
        doc = make_doc(
            ["增长", "鲤鱼"],
            body=[["增长", "锦鲤", "增长", "鲤鱼"]],
            headline_deps=((0, 1),),
            body_deps=(((0, 1), (2, 3)),),
        )
        assert rte_score(doc, lexicons) == 1.0

    def test_pairs_sum(self, lexicons):
        doc = make_doc(
            ["增长", "迅速", "鲤鱼"],
            body=[["增长", "迅速", "鲤鱼"]],
            headline_deps=((0, 1), (0, 2)),
            body_deps=(((0, 1), (0, 2)),),
        )
        assert rte_score(doc, lexicons) == 2.0

    def test_monotone_in_nonnegative_weights(self, lexicons):
        doc = make_doc(
            ["增长", "鲤鱼"],
            body=[["增长", "锦鲤"]],
            headline_deps=((0, 1),),
            body_deps=(((0, 1),),),
        )
        low = rte_score(doc, lexicons, RteWeights(synonym=0.5, antonym=0.0))
        high = rte_score(doc, lexicons, RteWeights(synonym=0.9, antonym=0.0))
        assert high >= low

    def test_relation_lookup_is_directional(self, lexicons):
        doc = make_doc(
            ["锦鲤", "增长"],
            body=[["鲤鱼", "增长"]],
            headline_deps=((0, 1),),
            body_deps=(((0, 1),),),
        )
        # (锦鲤, 鲤鱼) is not in the relation file, only the reverse
        assert rte_score(doc, lexicons) == 0.0


class TestAssembledVectors:
    RULES = [
        ClassSequentialRule(("Baitword",), "ambiguous", 0.5, 0.9),
        ClassSequentialRule(("Ref", "Past"), "ambiguous", 0.3, 0.8),
    ]

    def test_ambiguous_vector_concatenates(self, lexicons, inventory):
        doc = make_doc(["她", "曾经", "震惊"])
        fv = ambiguous_vector(doc, lexicons, inventory, self.RULES)
        assert len(fv) == len(BASIC_FEATURE_NAMES) + 2
        assert fv.names[: len(BASIC_FEATURE_NAMES)] == BASIC_FEATURE_NAMES
        assert fv.as_dict()["csr_000"] == 1.0  # Baitword present
        assert fv.as_dict()["csr_001"] == 1.0  # Ref then Past

    def test_head_vector_drops_forward_ref(self, lexicons):
        fv = misleading_head_vector(make_doc(["她", "曾经"]), lexicons)
        assert "forward_ref" not in fv.names
        assert len(fv) == len(BASIC_FEATURE_NAMES) - 1
        assert fv.schema_id == "misleading-head"

    def test_body_vector_shape_and_order(self, lexicons, toy_embeddings):
        doc = make_doc(["base"], body=[["base", "same"]])
        fv = misleading_body_vector(doc, lexicons, toy_embeddings, flat_idf())
        assert fv.names == BODY_FEATURE_NAMES
        assert len(fv) == 19

    def test_degraded_tags_reported(self, lexicons, toy_embeddings):
        doc = make_doc(["没有向量"], body=[["也没有"]])
        _, tags = misleading_body_features(doc, lexicons, toy_embeddings, flat_idf())
        assert set(tags) == {"no_headline_deps", "no_entity_annotations", "no_scorable_tokens"}

    def test_fully_annotated_doc_has_no_tags(self, lexicons, toy_embeddings):
        doc = make_doc(
            ["base"],
            body=[["base"]],
            headline_deps=((0, 0),),
            body_deps=(((0, 0),),),
            headline_entities=frozenset(),
            body_entity_strings=frozenset(),
        )
        _, tags = misleading_body_features(doc, lexicons, toy_embeddings, flat_idf())
        assert tags == ()

    def test_frequencies_stay_in_unit_interval(self, lexicons, toy_embeddings):
        doc = make_doc(
            ["给力", "吃瓜", "震惊", "好"],
            body=[["给力"] * 3 + ["坏"] * 2],
        )
        fv = misleading_body_vector(doc, lexicons, toy_embeddings, flat_idf())
        values = fv.as_dict()
        for name in ("body_slang_freq", "body_bait_freq", "body_pos_eval_freq", "informal_gap"):
            assert 0.0 <= values[name] <= 1.0

    def test_concat_rejects_duplicate_names(self):
        a = FeatureVector("x", ("f",), np.array([1.0]))
        with pytest.raises(FeatureError):
            concat_vectors("y", a, a)


class TestFeatureMatrixExport:
    def test_header_and_rows(self, tmp_path, lexicons):
        docs = [make_doc(["她"], id="d1"), make_doc(["震惊", "！"], id="d2")]
        rows = [(d.id, basic_features(d, lexicons)) for d in docs]
        path = tmp_path / "m.csv"
        write_feature_matrix(path, rows)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "id," + ",".join(BASIC_FEATURE_NAMES)
        assert len(lines) == 3
        assert lines[1].startswith("d1,1.0")

    def test_mixed_schemas_rejected(self, tmp_path, lexicons):
        doc = make_doc(["她"])
        rows = [
            ("a", basic_features(doc, lexicons)),
            ("b", misleading_head_vector(doc, lexicons)),
        ]
        with pytest.raises(FeatureError):
            write_feature_matrix(tmp_path / "m.csv", rows)
