"""basketchef: a session-based grocery recommender.

Watches a shopping basket, infers which dishes the shopper may be cooking
(category activation, rank-based subcategory scoring, Jaccard recipe
matching), and recommends the missing ingredients in bulk.
"""
from importlib import resources

from .corpus import (
    Category,
    Corpus,
    CorpusFormatError,
    Dish,
    Item,
    Recipe,
    Subcategory,
    dump_corpus,
    load_corpus,
    load_corpus_path,
    normalize_item_name,
)
from .session import (
    EventReport,
    Recommendation,
    Session,
    SessionConfig,
    jaccard,
    min_items_to_activate,
    score_increment,
)
from .stats import (
    CorpusStats,
    IdentifierSet,
    OccurrenceMatrix,
    RankTable,
    build_matrix,
    category_identifiers,
    conditional_probabilities,
    differentiator_scores,
    global_support,
    rank_table,
    support,
)

__version__ = "0.1.0"

__all__ = [
    "Category",
    "Corpus",
    "CorpusFormatError",
    "CorpusStats",
    "Dish",
    "EventReport",
    "IdentifierSet",
    "Item",
    "OccurrenceMatrix",
    "RankTable",
    "Recipe",
    "Recommendation",
    "Session",
    "SessionConfig",
    "Subcategory",
    "build_matrix",
    "category_identifiers",
    "conditional_probabilities",
    "differentiator_scores",
    "dump_corpus",
    "global_support",
    "jaccard",
    "load_bundled_corpus",
    "load_corpus",
    "load_corpus_path",
    "min_items_to_activate",
    "normalize_item_name",
    "rank_table",
    "score_increment",
    "support",
    "bundled_corpus_path",
]


def bundled_corpus_path():
    """Filesystem path of the bundled rice/chicken demonstration corpus."""
    return resources.files("basketchef").joinpath("data/bundled_corpus.json")


def load_bundled_corpus() -> Corpus:
    """Load the bundled rice/chicken demonstration corpus."""
    return load_corpus(bundled_corpus_path().read_bytes())
