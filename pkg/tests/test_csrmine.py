import math
import random
from itertools import combinations

import numpy as np
import pytest

from conftest import make_table2_db
from headcheck.csrmine import (
    ClassSequentialRule,
    MiningConfig,
    MiningError,
    ZeroCoverageError,
    confidence,
    csr_feature_matrix,
    csr_features,
    mine,
    rules_from_json,
    rules_to_json,
    support,
)
from headcheck.encoder import LabelSequence, SequenceDatabase
from test_encoder import brute_force_embeds


def brute_force_mine(db, cfg):
    """Independent oracle: enumerate every distinct subsequence of every
    entry, count cover/satisfy by exhaustive embedding checks, filter."""
    n = len(db)
    patterns = set()
    for seq, _ in db.entries:
        items = seq.items
        for r in range(1, min(len(items), cfg.max_pattern_length) + 1):
            for idx in combinations(range(len(items)), r):
                patterns.add(tuple(items[i] for i in idx))
    classes = sorted({cls for _, cls in db.entries})
    rules = []
    for pattern in patterns:
        covering = [cls for seq, cls in db.entries if brute_force_embeds(pattern, seq.items)]
        if not covering:
            continue
        for y in classes:
            satisfy = sum(1 for cls in covering if cls == y)
            sup = satisfy / n
            conf = satisfy / len(covering)
            if sup >= cfg.minsup and conf >= cfg.minconf:
                rules.append(ClassSequentialRule(pattern, y, sup, conf))
    rules.sort(key=lambda r: (-r.support, -r.confidence, r.pattern, r.target))
    return rules


def random_db(rng, max_entries=8, max_len=6, alphabet=10):
    entries = []
    for i in range(rng.randint(1, max_entries)):
        length = rng.randint(0, max_len)
        items = tuple(str(rng.randrange(alphabet)) for _ in range(length))
        entries.append((LabelSequence(items=items, source_id=f"r{i}"), rng.choice(["c1", "c2"])))
    return SequenceDatabase(entries=tuple(entries))


def as_tuples(rules):
    return [(r.pattern, r.target, r.support, r.confidence) for r in rules]


class TestSupportConfidence:
    def test_worked_example_support(self, table2_db):
        assert support(table2_db, ("1", "4", "7"), "c1") == 0.4

    def test_worked_example_confidence(self, table2_db):
        assert math.isclose(confidence(table2_db, ("1", "4", "7"), "c1"), 2 / 3, rel_tol=0, abs_tol=1e-12)

    def test_unique_full_sequence_supports_one_over_n(self, table2_db):
        assert support(table2_db, ("1", "4", "6", "7", "9"), "c1") == 1 / 5

    def test_item_2_to_c2(self, table2_db):
        assert support(table2_db, ("2",), "c2") == 0.2

    def test_pattern_67_to_c1_confidence(self, table2_db):
        assert confidence(table2_db, ("6", "7"), "c1") == 0.75

    def test_pure_class_pattern_has_confidence_one(self, table2_db):
        assert confidence(table2_db, ("2",), "c2") == 1.0

    def test_empty_db_is_an_error(self):
        empty = SequenceDatabase(entries=())
        with pytest.raises(MiningError):
            support(empty, ("1",), "c1")

    def test_zero_coverage_is_distinct_from_zero_confidence(self, table2_db):
        with pytest.raises(ZeroCoverageError):
            confidence(table2_db, ("8",), "c1")
        # covered but never satisfied: legitimately zero
        assert confidence(table2_db, ("3",), "c1") == 0.0


class TestMine:
    def test_worked_example_rule_is_mined(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4))
        match = [r for r in rules if r.pattern == ("1", "4", "7") and r.target == "c1"]
        assert len(match) == 1
        assert match[0].support == 0.4
        assert abs(match[0].confidence - 2 / 3) < 1e-12

    def test_minsup_one_yields_nothing_on_table2(self, table2_db):
        assert mine(table2_db, MiningConfig(minsup=1.0, minconf=0.4)) == []

    def test_table2_equals_brute_force(self, table2_db):
        cfg = MiningConfig(minsup=0.2, minconf=0.4, max_pattern_length=3)
        assert as_tuples(mine(table2_db, cfg)) == as_tuples(brute_force_mine(table2_db, cfg))

    def test_random_dbs_equal_brute_force(self):
        rng = random.Random(20240817)
        for _ in range(30):
            db = random_db(rng)
            if all(len(seq.items) == 0 for seq, _ in db.entries):
                continue
            for minsup in (0.1, 0.4):
                for minconf in (0.4, 0.8, 1.0):
                    cfg = MiningConfig(minsup=minsup, minconf=minconf, max_pattern_length=6)
                    assert as_tuples(mine(db, cfg)) == as_tuples(brute_force_mine(db, cfg))

    def test_tightening_thresholds_never_adds_rules(self):
        rng = random.Random(99)
        db = random_db(rng, max_entries=8)
        loose = set(as_tuples(mine(db, MiningConfig(minsup=0.1, minconf=0.4, max_pattern_length=6))))
        strict = set(as_tuples(mine(db, MiningConfig(minsup=0.3, minconf=0.8, max_pattern_length=6))))
        assert strict <= loose

    def test_coverage_is_antimonotone_over_emitted_rules(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4))

        def cover_count(pattern):
            return sum(
                1 for seq, _ in table2_db.entries if brute_force_embeds(pattern, seq.items)
            )

        for rule in rules:
            for r in range(1, len(rule.pattern)):
                for idx in combinations(range(len(rule.pattern)), r):
                    sub = tuple(rule.pattern[i] for i in idx)
                    assert cover_count(sub) >= cover_count(rule.pattern)

    def test_max_pattern_length_is_respected(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4, max_pattern_length=2))
        assert rules and all(len(r.pattern) <= 2 for r in rules)

    def test_both_classes_can_emit_rules(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4))
        assert {r.target for r in rules} == {"c1", "c2"}

    def test_output_order_is_deterministic(self, table2_db):
        cfg = MiningConfig(minsup=0.2, minconf=0.4)
        first = mine(table2_db, cfg)
        second = mine(table2_db, cfg)
        assert as_tuples(first) == as_tuples(second)
        keys = [(-r.support, -r.confidence, r.pattern, r.target) for r in first]
        assert keys == sorted(keys)

    def test_empty_db_is_an_error(self):
        with pytest.raises(MiningError):
            mine(SequenceDatabase(entries=()), MiningConfig(minsup=0.5, minconf=0.5))

    def test_bad_thresholds_rejected(self):
        with pytest.raises(MiningError):
            MiningConfig(minsup=0.0, minconf=0.5)
        with pytest.raises(MiningError):
            MiningConfig(minsup=0.5, minconf=1.01)


class TestCsrFeatures:
    RULE = ClassSequentialRule(("1", "4", "7"), "c1", 0.4, 2 / 3)

    def test_covering_sequence_scores_one(self):
        assert list(csr_features(("1", "4", "5", "6", "7"), [self.RULE])) == [1.0]

    def test_empty_sequence_scores_zero(self):
        assert list(csr_features((), [self.RULE])) == [0.0]

    def test_reversed_sequence_scores_zero(self):
        assert list(csr_features(("7", "4", "1"), [self.RULE])) == [0.0]

    def test_vector_length_matches_rule_count(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4))
        vec = csr_features(("1", "6"), rules)
        assert vec.shape == (len(rules),)
        assert set(np.unique(vec)) <= {0.0, 1.0}

    def test_matrix_agrees_with_scalar(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4))
        sequences = [seq for seq, _ in table2_db.entries]
        matrix = csr_feature_matrix(sequences, rules)
        for i, seq in enumerate(sequences):
            assert list(matrix[i]) == list(csr_features(seq, rules))

    def test_matrix_with_no_rules(self):
        matrix = csr_feature_matrix([LabelSequence(items=("1",))], [])
        assert matrix.shape == (1, 0)


class TestSerialization:
    def test_round_trip_is_exact(self, table2_db):
        rules = mine(table2_db, MiningConfig(minsup=0.2, minconf=0.4))
        recovered = rules_from_json(rules_to_json(rules))
        assert as_tuples(recovered) == as_tuples(rules)
