"""Statistics pipeline against hand values and the brute-force oracles."""
from __future__ import annotations

import json
import random
import warnings
from fractions import Fraction

import numpy as np
import pytest

import oracles
from basketchef.stats import (
    CorpusStats,
    ScoreTable,
    build_matrix,
    category_identifiers,
    conditional_probabilities,
    differentiator_scores,
    global_support,
    rank_table,
    support,
    support_vector,
)
from conftest import load_doc, make_doc, random_doc


def two_subcat_doc():
    return make_doc(
        {
            "meals": {
                "first": {
                    "da": [["a", "b"], ["a", "c"]],
                    "db": [["a", "b", "d"]],
                },
                "second": {
                    "dc": [["c", "d"], ["d"]],
                },
            }
        }
    )


class TestBuildMatrix:
    def test_single_recipe_row(self):
        doc = make_doc({"c": {"s": {"d": [["a", "b"]], "d2": [["c"]]}}})
        corpus = load_doc(doc)
        matrix = build_matrix(corpus, "c")
        assert matrix.entries.toarray().tolist() == [[1, 1, 0], [0, 0, 1]]
        assert matrix.rows[0].recipe_id == "r1"

    def test_duplicate_recipes_stay_distinct_rows(self):
        doc = make_doc({"c": {"s": {"d": [["a", "b"], ["a", "b"]]}}})
        matrix = build_matrix(load_doc(doc), "c")
        assert matrix.row_count == 2
        assert (matrix.entries.toarray()[0] == matrix.entries.toarray()[1]).all()

    def test_row_sums_match_recipe_sizes(self):
        rng = random.Random(3)
        for _ in range(10):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            for cat in corpus.categories:
                matrix = build_matrix(corpus, cat.name)
                sums = np.asarray(matrix.entries.sum(axis=1)).ravel()
                sizes = [
                    len(r.items)
                    for _, _, _, r in corpus.iter_recipes()
                ]
                # restrict to this category's recipes, in order
                ci = corpus.category_index(cat.name)
                sizes = [
                    len(r.items)
                    for c, _, _, r in corpus.iter_recipes()
                    if c == ci
                ]
                assert sums.tolist() == sizes

    def test_unknown_category(self, tiny_doc):
        with pytest.raises(KeyError):
            build_matrix(load_doc(tiny_doc), "nope")


class TestSupport:
    def test_three_of_four_rows(self):
        doc = make_doc(
            {"c": {"s": {"d": [["a", "b"], ["a"], ["a", "c"], ["b", "c"]]}}}
        )
        matrix = build_matrix(load_doc(doc), "c")
        a = load_doc(doc).item_id("a")
        assert support(matrix, a) == 0.75

    def test_zero_and_saturation(self):
        doc = make_doc({"c": {"s": {"d": [["a", "b"], ["a"]], "d2": [["a"]]}}})
        corpus = load_doc(doc)
        matrix = build_matrix(corpus, "c")
        assert support(matrix, corpus.item_id("a")) == 1.0
        sup = support_vector(matrix)
        assert sup[corpus.item_id("b")] == pytest.approx(1 / 3)

    def test_global_support_weighted_mean_of_categories(self):
        rng = random.Random(5)
        for _ in range(10):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            gsup = global_support(corpus)
            total_rows = 0
            acc = np.zeros(corpus.vocabulary_size)
            for cat in corpus.categories:
                matrix = build_matrix(corpus, cat.name)
                acc += support_vector(matrix) * matrix.row_count
                total_rows += matrix.row_count
            np.testing.assert_allclose(gsup, acc / total_rows, atol=1e-12)

    def test_global_support_oracle(self):
        rng = random.Random(6)
        for _ in range(10):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            gsup = global_support(corpus)
            expect = oracles.global_supports(doc)
            for item in corpus.vocabulary:
                assert gsup[item.id] == float(expect.get(item.name, Fraction(0)))


class TestIdentifiers:
    def test_global_top_item_excluded_everywhere(self):
        # "salt" in every recipe of both categories
        doc = make_doc(
            {
                "c1": {
                    "s1": {"d1": [["salt", "a"], ["salt", "a", "b"]]},
                    "s2": {"d2": [["salt", "b"]]},
                },
                "c2": {
                    "s3": {"d3": [["salt", "c"], ["salt", "c"]]},
                    "s4": {"d4": [["salt", "d"]]},
                },
            }
        )
        corpus = load_doc(doc)
        for cat in ("c1", "c2"):
            ident = category_identifiers(corpus, cat, k=5, h=1)
            names = [corpus.item_name(i) for i in ident.identifiers]
            assert "salt" not in names

    def test_h_zero_takes_plain_top_k(self):
        doc = make_doc(
            {"c": {"s": {"d": [["salt", "a"], ["salt"], ["salt", "a", "b"]]},
                   "s2": {"d2": [["salt", "b"]]}}}
        )
        corpus = load_doc(doc)
        ident = category_identifiers(corpus, "c", k=2, h=0)
        assert [corpus.item_name(i) for i in ident.identifiers] == ["salt", "a"]
        assert ident.supports[0] == 1.0

    def test_short_category_warns_and_truncates(self):
        doc = make_doc({"c": {"s": {"d": [["a", "b"]]}, "s2": {"d2": [["a"]]}}})
        corpus = load_doc(doc)
        with pytest.warns(UserWarning, match="eligible"):
            ident = category_identifiers(corpus, "c", k=5, h=0)
        assert len(ident.identifiers) == 2

    def test_oracle_equivalence(self):
        rng = random.Random(8)
        for _ in range(25):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            k = rng.randint(1, 6)
            h = rng.randint(0, 3)
            for cat in corpus.categories:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    ident = category_identifiers(corpus, cat.name, k=k, h=h)
                got = [corpus.item_name(i) for i in ident.identifiers]
                assert got == oracles.identifiers(doc, cat.name, k, h)


class TestConditionalsAndScores:
    def test_saturation_and_zero(self):
        corpus = load_doc(two_subcat_doc())
        cond = conditional_probabilities(build_matrix(corpus, "meals"))
        a = corpus.item_id("a")
        d = corpus.item_id("d")
        first = cond.subcategory_names.index("first")
        second = cond.subcategory_names.index("second")
        assert cond.values[first, a] == 1.0
        assert cond.values[second, a] == 0.0
        assert cond.values[second, d] == 1.0

    def test_exclusive_item_scores_one(self):
        corpus = load_doc(two_subcat_doc())
        scores = differentiator_scores(
            conditional_probabilities(build_matrix(corpus, "meals"))
        )
        a = corpus.item_id("a")
        first = scores.subcategory_names.index("first")
        assert scores.values[first, a] == 1.0

    def test_common_item_goes_negative(self):
        doc = make_doc(
            {
                "c": {
                    "s1": {"d1": [["x", "a"]]},
                    "s2": {"d2": [["x", "b"]]},
                    "s3": {"d3": [["x", "c"]]},
                }
            }
        )
        corpus = load_doc(doc)
        scores = differentiator_scores(
            conditional_probabilities(build_matrix(corpus, "c"))
        )
        x = corpus.item_id("x")
        np.testing.assert_allclose(scores.values[:, x], [-1.0, -1.0, -1.0])

    def test_absent_item_scores_zero(self):
        doc = make_doc(
            {
                "c": {"s1": {"d1": [["a"]]}, "s2": {"d2": [["b"]]}},
                "c2": {"s3": {"d3": [["z"]]}, "s4": {"d4": [["a"]]}},
            }
        )
        corpus = load_doc(doc)
        scores = differentiator_scores(
            conditional_probabilities(build_matrix(corpus, "c"))
        )
        z = corpus.item_id("z")
        assert (scores.values[:, z] == 0.0).all()

    def test_upper_bound_and_two_subcat_antisymmetry(self):
        rng = random.Random(9)
        for _ in range(15):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            for cat in corpus.categories:
                scores = differentiator_scores(
                    conditional_probabilities(build_matrix(corpus, cat.name))
                )
                assert (scores.values <= 1.0 + 1e-15).all()
                if len(scores.subcategory_names) == 2:
                    np.testing.assert_allclose(
                        scores.values[0], -scores.values[1], atol=1e-12
                    )


class TestRankTable:
    def test_forced_order(self):
        scores = ScoreTable(
            category="c",
            subcategory_names=("s",),
            values=np.array([[0.9, 0.1, 0.5]]),
            numerators=np.array([[9, 1, 5]]),
            denominator=10,
        )
        table = rank_table(scores)
        assert table.ranks[0].tolist() == [1, 3, 2]

    def test_tie_broken_by_vocabulary_order(self):
        scores = ScoreTable(
            category="c",
            subcategory_names=("s",),
            values=np.array([[0.5, 0.5, 0.9]]),
            numerators=np.array([[5, 5, 9]]),
            denominator=10,
        )
        table = rank_table(scores)
        assert table.ranks[0].tolist() == [2, 3, 1]

    def test_rows_are_permutations(self):
        rng = random.Random(10)
        for _ in range(10):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            for cat in corpus.categories:
                table = rank_table(
                    differentiator_scores(
                        conditional_probabilities(build_matrix(corpus, cat.name))
                    )
                )
                for row in table.ranks:
                    assert sorted(row.tolist()) == list(
                        range(1, corpus.vocabulary_size + 1)
                    )

    def test_oracle_equivalence(self):
        rng = random.Random(12)
        for _ in range(15):
            doc = random_doc(rng)
            corpus = load_doc(doc)
            for cat in corpus.categories:
                table = rank_table(
                    differentiator_scores(
                        conditional_probabilities(build_matrix(corpus, cat.name))
                    )
                )
                expect = oracles.rank_tables(doc, cat.name)
                for si, sub in enumerate(table.subcategory_names):
                    for item in corpus.vocabulary:
                        assert (
                            table.ranks[si, item.id] == expect[sub][item.name]
                        ), (cat.name, sub, item.name)


class TestPermutationInvariance:
    def test_recipe_order_does_not_matter(self):
        # Pin the vocabulary with a first recipe containing every item,
        # then shuffle the remaining recipes within each dish.
        rng = random.Random(14)
        pool = [f"i{j}" for j in range(12)]
        doc = make_doc(
            {
                "c": {
                    "s1": {
                        "pin": [list(pool)],
                        "d1": [
                            rng.sample(pool, rng.randint(1, 6)) for _ in range(5)
                        ],
                    },
                    "s2": {
                        "d2": [
                            rng.sample(pool, rng.randint(1, 6)) for _ in range(5)
                        ],
                    },
                }
            }
        )
        corpus = load_doc(doc)
        baseline = CorpusStats.compute(corpus, k=3, h=1)

        shuffled = json.loads(json.dumps(doc))
        for cat in shuffled["categories"]:
            for sub in cat["subcategories"]:
                for dish in sub["dishes"]:
                    if dish["name"] != "pin":
                        rng.shuffle(dish["recipes"])
        other = CorpusStats.compute(load_doc(shuffled), k=3, h=1)

        np.testing.assert_allclose(baseline.global_support, other.global_support)
        for a, b in zip(baseline.identifier_sets, other.identifier_sets):
            assert a.identifiers == b.identifiers
        for a, b in zip(baseline.rank_tables, other.rank_tables):
            assert (a.ranks == b.ranks).all()
