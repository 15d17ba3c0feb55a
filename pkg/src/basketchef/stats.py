"""Corpus statistics: occurrence matrices, support, identifiers, rank tables.

Everything here is precomputed once per corpus and shared read-only by any
number of live sessions. The pipeline per category:

    occurrence matrix  ->  support / global support  ->  identifier set
                       ->  conditional probabilities ->  differentiator
                           scores                    ->  rank table

An item's differentiator score for a subcategory is its conditional
probability there minus the sum of its conditional probabilities in the
sibling subcategories; it is bounded above by 1 and can go negative for
items common to every subcategory. Ranks order items per subcategory by
descending score, rank 1 best, ties broken by vocabulary order.

Scores are rationals (recipe counts over subcategory sizes), and equal
scores must rank by vocabulary order reproducibly, so the ordering is done
in exact integer arithmetic over a common denominator; the float views
exist for reporting only.
"""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Corpus

__all__ = [
    "OccurrenceMatrix",
    "IdentifierSet",
    "ProbabilityTable",
    "ScoreTable",
    "RankTable",
    "build_matrix",
    "support",
    "support_vector",
    "global_support",
    "category_identifiers",
    "conditional_probabilities",
    "differentiator_scores",
    "rank_table",
    "CorpusStats",
    "identifiers_csv",
    "differentiators_csv",
]

# Above this the exact numerators may not fit int64 and we drop to Python
# ints (slow path, pathological subcategory size mixes only).
_INT64_SAFE_DENOMINATOR = 1 << 40


@dataclass(frozen=True)
class MatrixRow:
    """Row metadata: which recipe a row is, and where it lives."""

    recipe_id: str
    subcategory: int  # index within the category
    dish: int  # index within the subcategory


@dataclass(frozen=True)
class OccurrenceMatrix:
    """Sparse binary recipe-by-item matrix for one category.

    entry (i, j) is 1 iff vocabulary item j appears in recipe row i.
    Columns always span the full vocabulary.
    """

    category: str
    subcategory_names: tuple[str, ...]
    rows: tuple[MatrixRow, ...]
    entries: sp.csr_matrix

    @property
    def row_count(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class IdentifierSet:
    """The high-support, non-globally-common items that signal a category."""

    category: str
    identifiers: tuple[int, ...]  # descending support, post-exclusion
    supports: tuple[float, ...]  # aligned with identifiers


@dataclass(frozen=True)
class ProbabilityTable:
    """Per-subcategory conditional occurrence probabilities for every item.

    ``values[s, j]`` is the fraction of subcategory s's recipes containing
    item j; ``counts`` and ``row_counts`` keep the exact integers behind it.
    """

    category: str
    subcategory_names: tuple[str, ...]
    values: np.ndarray  # float, shape (subcategories, vocabulary size)
    counts: np.ndarray  # int64, same shape
    row_counts: np.ndarray  # int64, shape (subcategories,)


@dataclass(frozen=True)
class ScoreTable:
    """Differentiator scores with their exact rational representation.

    ``values`` = ``numerators / denominator`` elementwise; ranking uses the
    numerators so that exact ties resolve by vocabulary order.
    """

    category: str
    subcategory_names: tuple[str, ...]
    values: np.ndarray  # float
    numerators: np.ndarray  # int64 or object (Python ints)
    denominator: int


@dataclass(frozen=True)
class RankTable:
    """Per-subcategory item ranks by descending differentiator score.

    Each row is a permutation of 1..n(vocabulary); rank 1 is the item with
    the largest score. Raw scores are retained for diagnostics.
    """

    category: str
    subcategory_names: tuple[str, ...]
    ranks: np.ndarray  # int32, shape (subcategories, vocabulary size)
    scores: np.ndarray  # float, same shape


def build_matrix(corpus: Corpus, category: str) -> OccurrenceMatrix:
    """Build the sparse binary recipe-by-item matrix for one category.

    Rows are recipes in file order; duplicate recipes stay distinct rows.
    """
    cat = corpus.category(category)  # KeyError on unknown category
    rows: list[MatrixRow] = []
    indptr = [0]
    indices: list[int] = []
    for si, sub in enumerate(cat.subcategories):
        for di, dish in enumerate(sub.dishes):
            for recipe in dish.recipes:
                rows.append(MatrixRow(recipe.id, si, di))
                indices.extend(sorted(recipe.items))
                indptr.append(len(indices))
    n_vocab = corpus.vocabulary_size
    entries = sp.csr_matrix(
        (
            np.ones(len(indices), dtype=np.int8),
            np.asarray(indices, dtype=np.int64),
            np.asarray(indptr, dtype=np.int64),
        ),
        shape=(len(rows), n_vocab),
    )
    return OccurrenceMatrix(
        category=cat.name,
        subcategory_names=tuple(s.name for s in cat.subcategories),
        rows=tuple(rows),
        entries=entries,
    )


def support_vector(matrix: OccurrenceMatrix) -> np.ndarray:
    """Per-item support in the category: column sums over row count."""
    if matrix.row_count == 0:
        raise ValueError(f"category {matrix.category!r} has no recipes")
    counts = np.asarray(matrix.entries.sum(axis=0)).ravel()
    return counts / matrix.row_count


def support(matrix: OccurrenceMatrix, item: int) -> float:
    """Fraction of the category's recipes that contain the item."""
    n = matrix.entries.shape[1]
    if not 0 <= item < n:
        raise IndexError(f"item id {item} outside vocabulary of size {n}")
    count = matrix.entries.getcol(item).sum()
    return float(count) / matrix.row_count


def global_support(corpus: Corpus) -> np.ndarray:
    """Per-item support over all recipes of all categories stacked.

    Indexed by item id. Equals the recipe-count-weighted mean of the
    per-category supports.
    """
    counts = np.zeros(corpus.vocabulary_size, dtype=np.int64)
    total = 0
    for _, _, _, recipe in corpus.iter_recipes():
        counts[list(recipe.items)] += 1
        total += 1
    if total == 0:
        return np.zeros(corpus.vocabulary_size)
    return counts / total


def top_items(values: np.ndarray, count: int) -> set[int]:
    """Ids of the ``count`` largest values, ties broken by vocabulary order."""
    if count <= 0:
        return set()
    order = np.lexsort((np.arange(len(values)), -values))
    return {int(i) for i in order[:count]}


def category_identifiers(
    corpus: Corpus,
    category: str,
    k: int = 5,
    h: int = 1,
    *,
    matrix: OccurrenceMatrix | None = None,
    global_sup: np.ndarray | None = None,
) -> IdentifierSet:
    """Pick the k highest-support items of a category, skipping the h
    globally most common items.

    The exclusion list is the h items with the largest global support
    (ties by vocabulary order). Selection then walks the category's items
    in descending support order (ties by vocabulary order), skipping
    excluded items, until k are collected. Only items that actually occur
    in the category are eligible; if fewer than k remain, all of them are
    returned with a warning.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if h < 0:
        raise ValueError("h must be >= 0")
    if matrix is None:
        matrix = build_matrix(corpus, category)
    if global_sup is None:
        global_sup = global_support(corpus)

    excluded = top_items(global_sup, h)
    sup = support_vector(matrix)
    picked: list[int] = []
    sups: list[float] = []
    for item in np.lexsort((np.arange(len(sup)), -sup)):
        if sup[item] <= 0.0:
            break  # descending order: nothing eligible remains
        if int(item) in excluded:
            continue
        picked.append(int(item))
        sups.append(float(sup[item]))
        if len(picked) == k:
            break
    if len(picked) < k:
        warnings.warn(
            f"category {matrix.category!r} has only {len(picked)} eligible "
            f"identifier items (k={k})",
            stacklevel=2,
        )
    return IdentifierSet(
        category=matrix.category, identifiers=tuple(picked), supports=tuple(sups)
    )


def conditional_probabilities(matrix: OccurrenceMatrix) -> ProbabilityTable:
    """P(item | subcategory): per-subcategory occurrence fractions.

    Numerator and denominator are both restricted to the subcategory's own
    rows.
    """
    n_sub = len(matrix.subcategory_names)
    sub_idx = np.fromiter(
        (r.subcategory for r in matrix.rows), dtype=np.int64, count=len(matrix.rows)
    )
    counts = np.zeros((n_sub, matrix.entries.shape[1]), dtype=np.int64)
    row_counts = np.zeros(n_sub, dtype=np.int64)
    for s in range(n_sub):
        mask = sub_idx == s
        row_counts[s] = int(mask.sum())
        if row_counts[s] == 0:
            raise ValueError(
                f"subcategory {matrix.subcategory_names[s]!r} of "
                f"{matrix.category!r} has no recipes"
            )
        counts[s] = np.asarray(matrix.entries[mask].sum(axis=0)).ravel()
    values = counts / row_counts[:, None]
    return ProbabilityTable(
        category=matrix.category,
        subcategory_names=matrix.subcategory_names,
        values=values,
        counts=counts,
        row_counts=row_counts,
    )


def differentiator_scores(cond: ProbabilityTable) -> ScoreTable:
    """Score each (subcategory, item): own conditional probability minus the
    sum over sibling subcategories.

    Bounded above by 1; equality iff the item covers the subcategory and
    never occurs in a sibling. Items common everywhere score near or below
    zero. Computed exactly over the lcm of the subcategory sizes.
    """
    lcm = math.lcm(*(int(n) for n in cond.row_counts))
    weights = [lcm // int(n) for n in cond.row_counts]
    if lcm <= _INT64_SAFE_DENOMINATOR:
        w = np.asarray(weights, dtype=np.int64)[:, None]
        scaled = cond.counts * w
        numerators = 2 * scaled - scaled.sum(axis=0, keepdims=True)
        values = numerators / lcm
    else:
        counts = cond.counts.astype(object)
        scaled = counts * np.asarray(weights, dtype=object)[:, None]
        numerators = 2 * scaled - scaled.sum(axis=0, keepdims=True)
        values = np.array(
            [[int(n) / lcm for n in row] for row in numerators], dtype=float
        )
    return ScoreTable(
        category=cond.category,
        subcategory_names=cond.subcategory_names,
        values=values,
        numerators=numerators,
        denominator=lcm,
    )


def rank_table(scores: ScoreTable) -> RankTable:
    """Rank items per subcategory by descending score, rank 1 best.

    Ties go to the lower vocabulary id. Every row is a permutation of
    1..n(vocabulary).
    """
    n_sub, n_vocab = scores.values.shape
    ranks = np.empty((n_sub, n_vocab), dtype=np.int32)
    for s in range(n_sub):
        row = scores.numerators[s]
        if row.dtype == object:
            order = np.asarray(
                sorted(range(n_vocab), key=lambda j: (-row[j], j)), dtype=np.int64
            )
        else:
            order = np.lexsort((np.arange(n_vocab), -row))
        ranks[s, order] = np.arange(1, n_vocab + 1, dtype=np.int32)
    return RankTable(
        category=scores.category,
        subcategory_names=scores.subcategory_names,
        ranks=ranks,
        scores=scores.values.astype(float, copy=True),
    )


@dataclass(frozen=True)
class CorpusStats:
    """All precomputed statistics for a corpus at a given (k, h).

    ``relevant[c, j]`` is True iff item j occurs in at least one recipe of
    category c; only relevant items may contribute to that category's
    subcategory scores. ``identifier_categories`` maps an item id to the
    category indices whose identifier set contains it.
    """

    corpus: Corpus
    k: int
    h: int
    global_support: np.ndarray
    matrices: tuple[OccurrenceMatrix, ...]
    identifier_sets: tuple[IdentifierSet, ...]
    rank_tables: tuple[RankTable, ...]
    relevant: np.ndarray  # bool, shape (categories, vocabulary size)
    identifier_categories: dict[int, tuple[int, ...]]

    @classmethod
    def compute(cls, corpus: Corpus, k: int = 5, h: int = 1) -> "CorpusStats":
        gsup = global_support(corpus)
        matrices = tuple(build_matrix(corpus, c.name) for c in corpus.categories)
        identifier_sets = tuple(
            category_identifiers(corpus, m.category, k, h, matrix=m, global_sup=gsup)
            for m in matrices
        )
        rank_tables = tuple(
            rank_table(differentiator_scores(conditional_probabilities(m)))
            for m in matrices
        )
        relevant = np.zeros((len(matrices), corpus.vocabulary_size), dtype=bool)
        for ci, m in enumerate(matrices):
            relevant[ci] = np.asarray(m.entries.sum(axis=0)).ravel() > 0
        by_item: dict[int, list[int]] = {}
        for ci, ident in enumerate(identifier_sets):
            for item in ident.identifiers:
                by_item.setdefault(item, []).append(ci)
        return cls(
            corpus=corpus,
            k=k,
            h=h,
            global_support=gsup,
            matrices=matrices,
            identifier_sets=identifier_sets,
            rank_tables=rank_tables,
            relevant=relevant,
            identifier_categories={i: tuple(cs) for i, cs in by_item.items()},
        )


def identifiers_csv(stats: CorpusStats) -> str:
    """Identifier report: one CSV row per (category, rank, item, support)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["category", "rank", "item", "support"])
    for ident in stats.identifier_sets:
        for rank, (item, sup) in enumerate(
            zip(ident.identifiers, ident.supports), start=1
        ):
            writer.writerow(
                [ident.category, rank, stats.corpus.item_name(item), repr(sup)]
            )
    return out.getvalue()


def differentiators_csv(stats: CorpusStats, category: str, top: int = 5) -> str:
    """Differentiator report for one category: the ``top`` best-ranked items
    per subcategory with their scores."""
    ci = stats.corpus.category_index(category)
    table = stats.rank_tables[ci]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["subcategory", "rank", "item", "score"])
    for si, sub_name in enumerate(table.subcategory_names):
        order = np.argsort(table.ranks[si], kind="stable")
        for rank in range(1, min(top, len(order)) + 1):
            item = int(order[rank - 1])
            writer.writerow(
                [
                    sub_name,
                    rank,
                    stats.corpus.item_name(item),
                    repr(float(table.scores[si, item])),
                ]
            )
    return out.getvalue()
