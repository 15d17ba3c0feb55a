"""The online engine: basket state, activation, scoring, recommendations.

A session watches one shopper's basket. Adding an item bumps the activation
count of every category whose identifier set contains it; a category goes
active once its count reaches q. Active categories score their
subcategories: each basket item that occurs somewhere in the category adds
rank^(-1/n) to every subcategory's score, where rank is the item's
differentiator rank there. A subcategory activates when its score reaches
theta. Recommendations are the top dishes of the active subcategories by
Jaccard similarity between recipe and basket.

Scores are plain running sums over the basket, so the final state does not
depend on the order items were added: when a category activates late, its
subcategory scores are rebuilt over the whole current basket. Removal has
no incremental form; it replays the surviving basket from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import AbstractSet, Iterable, Sequence

import numpy as np

from .corpus import Corpus
from .stats import CorpusStats

__all__ = [
    "SessionConfig",
    "EventReport",
    "Recommendation",
    "Session",
    "jaccard",
    "score_increment",
    "min_items_to_activate",
]


@dataclass(frozen=True)
class SessionConfig:
    """Engine parameters.

    k: identifiers per category; h: globally-common items excluded from
    identifier sets; q: identifier hits needed to activate a category;
    n: root of the rank in the score increment rank^(-1/n); theta:
    subcategory activation threshold; top_n: dishes per recommendation.
    """

    k: int = 5
    h: int = 1
    q: int = 1
    n: float = 3.0
    theta: float = 4.0
    top_n: int = 5

    def __post_init__(self):
        problems = {}
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
            problems["k"] = "must be an integer >= 1"
        if not isinstance(self.h, int) or isinstance(self.h, bool) or self.h < 0:
            problems["h"] = "must be an integer >= 0"
        if not isinstance(self.q, int) or isinstance(self.q, bool) or self.q < 1:
            problems["q"] = "must be an integer >= 1"
        if (
            isinstance(self.n, bool)
            or not isinstance(self.n, (int, float))
            or not self.n >= 1
        ):
            problems["n"] = "must be a number >= 1"
        if (
            isinstance(self.theta, bool)
            or not isinstance(self.theta, (int, float))
            or not self.theta > 0
        ):
            problems["theta"] = "must be a number > 0"
        if (
            not isinstance(self.top_n, int)
            or isinstance(self.top_n, bool)
            or self.top_n < 1
        ):
            problems["top_n"] = "must be an integer >= 1"
        if problems:
            raise ValueError("invalid session config: " + "; ".join(
                f"{name} {why}" for name, why in sorted(problems.items())
            ))

    def with_overrides(self, **overrides) -> "SessionConfig":
        unknown = set(overrides) - set(self.__dataclass_fields__)
        if unknown:
            raise ValueError(
                "invalid session config: unknown field(s) "
                + ", ".join(sorted(unknown))
            )
        return replace(self, **overrides)


def score_increment(rank: int, n: float) -> float:
    """Contribution of an item of the given rank: the n-th root reciprocal."""
    return float(rank) ** (-1.0 / n)


def min_items_to_activate(n: float, theta: float) -> int:
    """Smallest basket size whose best case crosses the threshold.

    Best case means items added in increasing rank order 1, 2, 3, ...;
    returns the first m with sum of r^(-1/n) for r = 1..m at or above
    theta.
    """
    if not n >= 1:
        raise ValueError("n must be >= 1")
    if not theta >= 1:
        raise ValueError("theta must be >= 1")
    total = 0.0
    rank = 0
    while total < theta:
        rank += 1
        total += score_increment(rank, n)
    return rank


def jaccard(a: AbstractSet, b: AbstractSet) -> float:
    """Set similarity |a & b| / |a | b|; empty-vs-empty counts as 0."""
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


@dataclass(frozen=True)
class EventReport:
    """What one basket mutation changed."""

    items_added: tuple[str, ...] = ()
    items_removed: tuple[str, ...] = ()
    duplicate: bool = False
    activated_categories: tuple[str, ...] = ()
    activated_subcategories: tuple[tuple[str, str], ...] = ()
    deactivated_categories: tuple[str, ...] = ()
    deactivated_subcategories: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {
            "items_added": list(self.items_added),
            "items_removed": list(self.items_removed),
            "duplicate": self.duplicate,
            "activated_categories": list(self.activated_categories),
            "activated_subcategories": [
                {"category": c, "subcategory": s}
                for c, s in self.activated_subcategories
            ],
            "deactivated_categories": list(self.deactivated_categories),
            "deactivated_subcategories": [
                {"category": c, "subcategory": s}
                for c, s in self.deactivated_subcategories
            ],
        }


@dataclass(frozen=True)
class Recommendation:
    """A dish worth suggesting: its best recipe and what is still missing."""

    dish: str
    recipe: str
    subcategory: str
    category: str
    similarity: float
    missing_items: frozenset[int]


class Session:
    """Single-shopper basket state machine over precomputed statistics.

    Mutations (add_item, remove_item, select_dish) must be serialized by
    the caller; reads between mutations see a consistent snapshot. The
    underlying corpus and stats are immutable and shared freely.
    """

    def __init__(self, stats: CorpusStats, config: SessionConfig | None = None):
        config = config or SessionConfig()
        if (stats.k, stats.h) != (config.k, config.h):
            raise ValueError(
                f"stats were computed with k={stats.k}, h={stats.h}; "
                f"config wants k={config.k}, h={config.h}"
            )
        self.stats = stats
        self.corpus: Corpus = stats.corpus
        self.config = config
        self.basket: list[int] = []
        self._basket_set: set[int] = set()
        n_cat = len(self.corpus.categories)
        self.activation_counts = np.zeros(n_cat, dtype=np.int64)
        self.active_categories: set[int] = set()
        # Per active category: per-subcategory running scores.
        self.subcategory_scores: dict[int, np.ndarray] = {}
        self.active_subcategories: set[tuple[int, int]] = set()
        # Recipes examined by the most recent recommend() call.
        self.last_scored_recipes = 0

    @classmethod
    def for_corpus(cls, corpus: Corpus, config: SessionConfig | None = None) -> "Session":
        config = config or SessionConfig()
        return cls(CorpusStats.compute(corpus, k=config.k, h=config.h), config)

    # -- mutations ---------------------------------------------------------

    def add_item(self, item: int) -> EventReport:
        """Add one item; report any categories/subcategories it activated.

        Adding an item already in the basket is a no-op flagged as a
        duplicate. Activation is monotone under adds.
        """
        self._check_item(item)
        name = self.corpus.item_name(item)
        if item in self._basket_set:
            return EventReport(items_added=(), duplicate=True)
        self.basket.append(item)
        self._basket_set.add(item)

        newly_active: list[int] = []
        for ci in self.stats.identifier_categories.get(item, ()):
            self.activation_counts[ci] += 1
            if (
                ci not in self.active_categories
                and self.activation_counts[ci] >= self.config.q
            ):
                self.active_categories.add(ci)
                newly_active.append(ci)

        # Categories that were already active take the new item
        # incrementally; newly active ones score the whole basket so that
        # items added before activation still count.
        for ci in self.active_categories:
            if ci in newly_active:
                continue
            self._apply_increment(ci, item)
        for ci in newly_active:
            self._rescore_category(ci)

        newly_subs = self._refresh_active_subcategories()
        return EventReport(
            items_added=(name,),
            activated_categories=tuple(
                self.corpus.categories[ci].name for ci in sorted(newly_active)
            ),
            activated_subcategories=newly_subs,
        )

    def remove_item(self, item: int) -> EventReport:
        """Remove a basket item and rebuild state from the survivors.

        Equivalent to a fresh session replaying the remaining basket in
        its current order; activation may regress.
        """
        self._check_item(item)
        if item not in self._basket_set:
            raise ValueError(
                f"item {self.corpus.item_name(item)!r} is not in the basket"
            )
        before_cats = set(self.active_categories)
        before_subs = set(self.active_subcategories)
        survivors = [i for i in self.basket if i != item]
        self._reset()
        for it in survivors:
            self.add_item(it)
        return EventReport(
            items_removed=(self.corpus.item_name(item),),
            activated_categories=self._category_names(
                self.active_categories - before_cats
            ),
            activated_subcategories=self._subcategory_names(
                self.active_subcategories - before_subs
            ),
            deactivated_categories=self._category_names(
                before_cats - self.active_categories
            ),
            deactivated_subcategories=self._subcategory_names(
                before_subs - self.active_subcategories
            ),
        )

    def select_dish(
        self, dish: str, recipe_id: str, accepted_items: Iterable[int]
    ) -> EventReport:
        """Accept some of a recipe's missing items into the basket.

        Every accepted item must be part of the recipe and not yet in the
        basket; each is added with normal add semantics, so selections feed
        back into activation.
        """
        recipe = self.corpus.find_recipe(recipe_id)
        if recipe is None:
            raise KeyError(f"unknown recipe id {recipe_id!r}")
        ci, si, di, _ = self.corpus.recipe_location(recipe_id)
        dish_name = self.corpus.categories[ci].subcategories[si].dishes[di].name
        if dish_name != dish:
            raise ValueError(
                f"recipe {recipe_id!r} belongs to dish {dish_name!r}, not {dish!r}"
            )
        if isinstance(accepted_items, Sequence):
            ordered = list(dict.fromkeys(accepted_items))
        else:
            ordered = sorted(set(accepted_items))
        missing = recipe.items - self._basket_set
        for item in ordered:
            self._check_item(item)
            if item in self._basket_set:
                raise ValueError(
                    f"item {self.corpus.item_name(item)!r} is already in the basket"
                )
            if item not in missing:
                raise ValueError(
                    f"item {self.corpus.item_name(item)!r} is not a missing "
                    f"item of recipe {recipe_id!r}"
                )
        added: list[str] = []
        cats: list[str] = []
        subs: list[tuple[str, str]] = []
        for item in ordered:
            report = self.add_item(item)
            added.extend(report.items_added)
            cats.extend(report.activated_categories)
            subs.extend(report.activated_subcategories)
        return EventReport(
            items_added=tuple(added),
            activated_categories=tuple(cats),
            activated_subcategories=tuple(subs),
        )

    # -- reads -------------------------------------------------------------

    def subcategory_score(self, category: str, subcategory: str) -> float:
        """Current score of a subcategory; its category must be active."""
        ci = self.corpus.category_index(category)
        if ci not in self.active_categories:
            raise ValueError(f"category {category!r} is not active")
        names = self.stats.rank_tables[ci].subcategory_names
        try:
            si = names.index(subcategory)
        except ValueError:
            raise KeyError(
                f"unknown subcategory {subcategory!r} in {category!r}"
            ) from None
        return float(self.subcategory_scores[ci][si])

    def recommend(self) -> list[Recommendation]:
        """Top dishes of the active subcategories by basket similarity.

        Each dish is represented by its best recipe (highest similarity,
        then largest overlap, then file order); dishes order by descending
        similarity, larger overlap, then name. Only dishes in active
        subcategories are ever examined.
        """
        basket = self._basket_set
        scored = 0
        candidates = []
        for ci, si in sorted(self.active_subcategories):
            cat = self.corpus.categories[ci]
            sub = cat.subcategories[si]
            for dish in sub.dishes:
                best = None
                for recipe in dish.recipes:
                    scored += 1
                    inter = len(recipe.items & basket)
                    sim = inter / len(recipe.items | basket)
                    key = (sim, inter)
                    if best is None or key > best[0]:
                        best = (key, recipe)
                (sim, inter), recipe = best
                candidates.append(
                    (
                        -sim,
                        -inter,
                        dish.name,
                        cat.name,
                        sub.name,
                        Recommendation(
                            dish=dish.name,
                            recipe=recipe.id,
                            subcategory=sub.name,
                            category=cat.name,
                            similarity=sim,
                            missing_items=frozenset(recipe.items - basket),
                        ),
                    )
                )
        candidates.sort(key=lambda c: c[:5])
        self.last_scored_recipes = scored
        return [c[5] for c in candidates[: self.config.top_n]]

    def snapshot(self) -> dict:
        """JSON-ready view of the whole session state, items by name."""
        corpus = self.corpus
        active_cats = sorted(self.active_categories)
        return {
            "basket": [corpus.item_name(i) for i in self.basket],
            "activation_counts": {
                cat.name: int(self.activation_counts[ci])
                for ci, cat in enumerate(corpus.categories)
            },
            "active_categories": [
                corpus.categories[ci].name for ci in active_cats
            ],
            "subcategory_scores": {
                corpus.categories[ci].name: {
                    name: float(self.subcategory_scores[ci][si])
                    for si, name in enumerate(
                        self.stats.rank_tables[ci].subcategory_names
                    )
                }
                for ci in active_cats
            },
            "active_subcategories": [
                {
                    "category": corpus.categories[ci].name,
                    "subcategory": corpus.categories[ci].subcategories[si].name,
                }
                for ci, si in sorted(self.active_subcategories)
            ],
            "config": {
                "k": self.config.k,
                "h": self.config.h,
                "q": self.config.q,
                "n": float(self.config.n),
                "theta": float(self.config.theta),
                "top_n": self.config.top_n,
            },
        }

    # -- internals ----------------------------------------------------------

    def _check_item(self, item: int) -> None:
        if not isinstance(item, (int, np.integer)) or isinstance(item, bool):
            raise TypeError(f"item id must be an integer, got {item!r}")
        if not 0 <= item < self.corpus.vocabulary_size:
            raise KeyError(f"unknown item id {item}")

    def _reset(self) -> None:
        self.basket = []
        self._basket_set = set()
        self.activation_counts[:] = 0
        self.active_categories = set()
        self.subcategory_scores = {}
        self.active_subcategories = set()

    def _apply_increment(self, ci: int, item: int) -> None:
        if not self.stats.relevant[ci, item]:
            return
        ranks = self.stats.rank_tables[ci].ranks[:, item].astype(np.float64)
        self.subcategory_scores[ci] += ranks ** (-1.0 / self.config.n)

    def _rescore_category(self, ci: int) -> None:
        n_sub = len(self.stats.rank_tables[ci].subcategory_names)
        self.subcategory_scores[ci] = np.zeros(n_sub)
        for item in self.basket:
            self._apply_increment(ci, item)

    def _refresh_active_subcategories(self) -> tuple[tuple[str, str], ...]:
        newly: list[tuple[int, int]] = []
        for ci in self.active_categories:
            scores = self.subcategory_scores[ci]
            for si in range(len(scores)):
                if (ci, si) in self.active_subcategories:
                    continue
                if scores[si] >= self.config.theta:
                    self.active_subcategories.add((ci, si))
                    newly.append((ci, si))
        return self._subcategory_names(newly)

    def _category_names(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(
            self.corpus.categories[ci].name for ci in sorted(indices)
        )

    def _subcategory_names(
        self, pairs: Iterable[tuple[int, int]]
    ) -> tuple[tuple[str, str], ...]:
        return tuple(
            (
                self.corpus.categories[ci].name,
                self.corpus.categories[ci].subcategories[si].name,
            )
            for ci, si in sorted(pairs)
        )
