"""Recipe corpus data model and loader.

A corpus is a four-level hierarchy: categories (rice, chicken, ...) split
into subcategories (biryani, fried rice, ...), which hold named dishes,
each backed by one or more recipes. A recipe is a set of ingredient items.

Item names are normalized once at load time and interned into a single
shared vocabulary; everything downstream addresses items by their dense
vocabulary id. Vocabulary order is first-appearance order during a
depth-first walk of the file (categories -> subcategories -> dishes ->
recipes -> item lists), which makes every later tie-break reproducible
from the file bytes alone.
"""
from __future__ import annotations

import io
import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterator

__all__ = [
    "CorpusFormatError",
    "Item",
    "Recipe",
    "Dish",
    "Subcategory",
    "Category",
    "Corpus",
    "normalize_item_name",
    "load_corpus",
    "load_corpus_path",
    "corpus_to_dict",
    "dump_corpus",
]

_WS_RUN = re.compile(r"\s+")


class CorpusFormatError(ValueError):
    """A corpus document violates the file format or one of its invariants.

    ``path`` locates the offending node, e.g. ``categories[1].dishes[0]``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def normalize_item_name(raw: str) -> str:
    """Normalize an item name: lowercase, trim, collapse whitespace runs.

    Idempotent. Raises ValueError if nothing is left after trimming.
    No stemming and no synonym folding: "chicken" and "chicken breast"
    stay distinct vocabulary entries.
    """
    name = _WS_RUN.sub(" ", raw.strip()).lower()
    if not name:
        raise ValueError("item name is empty after normalization")
    return name


@dataclass(frozen=True)
class Item:
    """A vocabulary entry: dense integer id plus its normalized name."""

    id: int
    name: str


@dataclass(frozen=True)
class Recipe:
    """One preparation of a dish: a recipe id and its ingredient set."""

    id: str
    items: frozenset[int]

    def __post_init__(self):
        if not self.items:
            raise ValueError(f"recipe {self.id!r} has an empty item set")


@dataclass(frozen=True)
class Dish:
    name: str
    recipes: tuple[Recipe, ...]

    def __post_init__(self):
        if not self.recipes:
            raise ValueError(f"dish {self.name!r} has no recipes")


@dataclass(frozen=True)
class Subcategory:
    name: str
    dishes: tuple[Dish, ...]

    def __post_init__(self):
        if not self.dishes:
            raise ValueError(f"subcategory {self.name!r} has no dishes")


@dataclass(frozen=True)
class Category:
    name: str
    subcategories: tuple[Subcategory, ...]

    def __post_init__(self):
        if not self.subcategories:
            raise ValueError(f"category {self.name!r} has no subcategories")


@dataclass(frozen=True)
class Corpus:
    """A validated corpus: the category tree plus the interned vocabulary."""

    categories: tuple[Category, ...]
    vocabulary: tuple[Item, ...]

    # Derived lookups; excluded from equality so that a reloaded corpus
    # compares equal to the original.
    _name_to_id: dict[str, int] = field(
        default_factory=dict, compare=False, repr=False
    )
    _category_index: dict[str, int] = field(
        default_factory=dict, compare=False, repr=False
    )
    _recipe_index: dict[str, tuple[int, int, int, int]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self):
        self._name_to_id.update({it.name: it.id for it in self.vocabulary})
        self._category_index.update(
            {c.name: i for i, c in enumerate(self.categories)}
        )
        for ci, cat in enumerate(self.categories):
            for si, sub in enumerate(cat.subcategories):
                for di, dish in enumerate(sub.dishes):
                    for ri, recipe in enumerate(dish.recipes):
                        self._recipe_index[recipe.id] = (ci, si, di, ri)

    @property
    def vocabulary_size(self) -> int:
        return len(self.vocabulary)

    def item_id(self, name: str) -> int:
        """Vocabulary id for a normalized item name. KeyError if unknown."""
        return self._name_to_id[name]

    def item_name(self, item: int) -> str:
        return self.vocabulary[item].name

    def has_item(self, name: str) -> bool:
        return name in self._name_to_id

    def category_index(self, name: str) -> int:
        """Position of a category. KeyError if unknown."""
        return self._category_index[name]

    def category(self, name: str) -> Category:
        return self.categories[self.category_index(name)]

    def recipe_location(self, recipe_id: str) -> tuple[int, int, int, int]:
        """(category, subcategory, dish, recipe) indices for a recipe id."""
        return self._recipe_index[recipe_id]

    def find_recipe(self, recipe_id: str) -> Recipe | None:
        loc = self._recipe_index.get(recipe_id)
        if loc is None:
            return None
        ci, si, di, ri = loc
        return self.categories[ci].subcategories[si].dishes[di].recipes[ri]

    def iter_recipes(self) -> Iterator[tuple[int, int, int, Recipe]]:
        """Yield (category, subcategory, dish index, recipe) in file order."""
        for ci, cat in enumerate(self.categories):
            for si, sub in enumerate(cat.subcategories):
                for di, dish in enumerate(sub.dishes):
                    for recipe in dish.recipes:
                        yield ci, si, di, recipe


def _require_keys(node: dict, required: tuple[str, ...], path: str) -> None:
    if not isinstance(node, dict):
        raise CorpusFormatError(f"expected an object, got {type(node).__name__}", path)
    missing = [k for k in required if k not in node]
    if missing:
        raise CorpusFormatError(f"missing key(s): {', '.join(missing)}", path)
    unknown = [k for k in node if k not in required]
    if unknown:
        raise CorpusFormatError(f"unknown key(s): {', '.join(unknown)}", path)


def _require_name(node: dict, path: str) -> str:
    name = node["name"]
    if not isinstance(name, str) or not name.strip():
        raise CorpusFormatError("name must be a nonempty string", path)
    return name


def _check_unique(names: list[str], what: str, path: str) -> None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise CorpusFormatError(f"duplicate {what} name {name!r}", path)
        seen.add(name)


def load_corpus(source: bytes | IO[bytes]) -> Corpus:
    """Parse and validate a corpus document from bytes or a binary stream.

    The file format is strict: unknown keys anywhere are rejected so that
    authoring typos surface immediately. Every diagnostic carries the path
    of the offending node. Loading is deterministic: the same bytes always
    produce the same corpus, including vocabulary order.
    """
    if isinstance(source, (bytes, bytearray)):
        raw = bytes(source)
    else:
        raw = source.read()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorpusFormatError(f"not valid UTF-8 JSON: {exc}") from exc

    _require_keys(doc, ("categories",), "$")
    if not isinstance(doc["categories"], list):
        raise CorpusFormatError("categories must be a list", "$")

    vocab_ids: dict[str, int] = {}

    def intern(name: str) -> int:
        if name not in vocab_ids:
            vocab_ids[name] = len(vocab_ids)
        return vocab_ids[name]

    categories: list[Category] = []
    recipe_ids: set[str] = set()
    for ci, cat_node in enumerate(doc["categories"]):
        cpath = f"categories[{ci}]"
        _require_keys(cat_node, ("name", "subcategories"), cpath)
        cat_name = _require_name(cat_node, cpath)
        subs_node = cat_node["subcategories"]
        if not isinstance(subs_node, list) or not subs_node:
            raise CorpusFormatError("subcategories must be a nonempty list", cpath)
        if len(subs_node) < 2:
            warnings.warn(
                f"category {cat_name!r} has a single subcategory; "
                "nothing to differentiate",
                stacklevel=2,
            )
        subcategories: list[Subcategory] = []
        for si, sub_node in enumerate(subs_node):
            spath = f"{cpath}.subcategories[{si}]"
            _require_keys(sub_node, ("name", "dishes"), spath)
            sub_name = _require_name(sub_node, spath)
            dishes_node = sub_node["dishes"]
            if not isinstance(dishes_node, list) or not dishes_node:
                raise CorpusFormatError("dishes must be a nonempty list", spath)
            dishes: list[Dish] = []
            for di, dish_node in enumerate(dishes_node):
                dpath = f"{spath}.dishes[{di}]"
                _require_keys(dish_node, ("name", "recipes"), dpath)
                dish_name = _require_name(dish_node, dpath)
                recipes_node = dish_node["recipes"]
                if not isinstance(recipes_node, list) or not recipes_node:
                    raise CorpusFormatError("recipes must be a nonempty list", dpath)
                recipes: list[Recipe] = []
                for ri, rec_node in enumerate(recipes_node):
                    rpath = f"{dpath}.recipes[{ri}]"
                    _require_keys(rec_node, ("id", "items"), rpath)
                    rec_id = rec_node["id"]
                    if not isinstance(rec_id, str) or not rec_id:
                        raise CorpusFormatError("id must be a nonempty string", rpath)
                    if rec_id in recipe_ids:
                        raise CorpusFormatError(
                            f"duplicate recipe id {rec_id!r}", rpath
                        )
                    recipe_ids.add(rec_id)
                    items_node = rec_node["items"]
                    if not isinstance(items_node, list):
                        raise CorpusFormatError("items must be a list", rpath)
                    item_ids: list[int] = []
                    for ii, item_raw in enumerate(items_node):
                        if not isinstance(item_raw, str):
                            raise CorpusFormatError(
                                f"items[{ii}] must be a string", rpath
                            )
                        try:
                            name = normalize_item_name(item_raw)
                        except ValueError as exc:
                            raise CorpusFormatError(
                                f"items[{ii}]: {exc}", rpath
                            ) from exc
                        item_ids.append(intern(name))
                    if not item_ids:
                        raise CorpusFormatError(
                            f"recipe {rec_id!r} has an empty item list", rpath
                        )
                    recipes.append(Recipe(id=rec_id, items=frozenset(item_ids)))
                dishes.append(Dish(name=dish_name, recipes=tuple(recipes)))
            _check_unique([d.name for d in dishes], "dish", spath)
            subcategories.append(Subcategory(name=sub_name, dishes=tuple(dishes)))
        _check_unique([s.name for s in subcategories], "subcategory", cpath)
        categories.append(
            Category(name=cat_name, subcategories=tuple(subcategories))
        )
    _check_unique([c.name for c in categories], "category", "$")

    vocabulary = tuple(Item(id=i, name=n) for n, i in vocab_ids.items())
    return Corpus(categories=tuple(categories), vocabulary=vocabulary)


def load_corpus_path(path: str | Path) -> Corpus:
    """Load a corpus from a file path."""
    with open(path, "rb") as fh:
        return load_corpus(fh)


def corpus_to_dict(corpus: Corpus) -> dict:
    """Serialize a corpus back to the file-format structure.

    Recipe items are written in vocabulary-id order, which keeps the
    serialize/reload round trip exact, vocabulary order included.
    """
    return {
        "categories": [
            {
                "name": cat.name,
                "subcategories": [
                    {
                        "name": sub.name,
                        "dishes": [
                            {
                                "name": dish.name,
                                "recipes": [
                                    {
                                        "id": rec.id,
                                        "items": [
                                            corpus.item_name(i)
                                            for i in sorted(rec.items)
                                        ],
                                    }
                                    for rec in dish.recipes
                                ],
                            }
                            for dish in sub.dishes
                        ],
                    }
                    for sub in cat.subcategories
                ],
            }
            for cat in corpus.categories
        ]
    }


def dump_corpus(corpus: Corpus) -> bytes:
    """Serialize a corpus to file-format bytes (UTF-8 JSON)."""
    text = json.dumps(corpus_to_dict(corpus), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# Shared stream helper for callers that already hold a str.
def loads_corpus(text: str) -> Corpus:
    """Load a corpus from a JSON string."""
    return load_corpus(io.BytesIO(text.encode("utf-8")))
