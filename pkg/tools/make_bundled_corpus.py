"""Regenerate the bundled rice/chicken corpus (src/basketchef/data/).

The corpus is synthetic but engineered: per-item recipe membership counts
are chosen so that the identifier sets, the per-subcategory differentiator
rankings, and the default-config activation walkthrough all come out to
known values, which the generator asserts before writing the file.

Membership layout: each subcategory has 12 recipes split into 4 dishes of
3; an item with count m in a subcategory occupies recipes
(5 * declaration_index + t) mod 12 for t < m.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from basketchef.corpus import load_corpus
from basketchef.session import Session, SessionConfig
from basketchef.stats import CorpusStats

RECIPES_PER_SUBCATEGORY = 12
RECIPES_PER_DISH = 3

# (item, {subcategory key: recipe count}) per category, in declaration
# order. Declaration order fixes first appearances and thus every
# vocabulary-order tie-break.
RICE_ITEMS = [
    ("long-grain rice", {"b": 12, "f": 12, "p": 12}),
    ("cardamom", {"b": 12, "f": 4, "p": 8}),
    ("kewra water", {"b": 12}),
    ("mace", {"b": 11}),
    ("curd", {"b": 10}),
    ("black peppercorn", {"b": 9}),
    ("ginger garlic paste", {"b": 10, "p": 2}),
    ("clove", {"b": 10, "f": 9, "p": 11}),
    ("cinnamon", {"b": 10, "f": 8, "p": 10}),
    ("ghee", {"b": 11, "f": 4, "p": 11}),
    ("onion", {"b": 7, "f": 8, "p": 8}),
    ("oil", {"b": 6, "f": 9, "p": 7}),
    ("mint leaves", {"b": 6, "f": 3, "p": 3}),
    ("garam masala", {"b": 2, "p": 3}),
    ("ginger", {"b": 5, "f": 4, "p": 2}),
    ("green chili", {"b": 6, "f": 5, "p": 4}),
    ("water", {"b": 4, "f": 2, "p": 5}),
    ("bay leaf", {"b": 5, "p": 6}),
    ("garlic", {"b": 1, "f": 10}),
    ("dark soya sauce", {"f": 12}),
    ("cabbage", {"f": 8}),
    ("egg", {"f": 7}),
    ("carrot", {"f": 7, "p": 1}),
    ("spring onion", {"f": 5}),
    ("cumin seed", {"p": 12}),
    ("almond", {"p": 10, "b": 1}),
    ("cashew nut", {"p": 9, "b": 1}),
    ("green pea", {"p": 7}),
    ("coconut", {"p": 6}),
    ("salt", {"b": 12, "f": 12, "p": 12}),
]

CHICKEN_ITEMS = [
    ("chicken", {"i": 11, "ch": 7}),
    ("chicken breast", {"i": 3, "ch": 9}),
    ("chicken leg", {"i": 7, "ch": 4}),
    ("chicken thigh", {"i": 6, "ch": 4}),
    ("chicken boneless", {"i": 5, "ch": 4}),
    ("cumin", {"i": 8}),
    ("coriander powder", {"i": 7}),
    ("coriander", {"i": 6}),
    ("cilantro", {"i": 5}),
    ("garam masala", {"i": 5, "ch": 2}),
    ("ginger garlic paste", {"i": 5, "ch": 2}),
    ("onion", {"i": 5, "ch": 3}),
    ("oil", {"i": 5, "ch": 3}),
    ("curd", {"i": 4, "ch": 1}),
    ("ginger", {"i": 4, "ch": 3}),
    ("green chili", {"i": 4, "ch": 2}),
    ("garlic", {"i": 4, "ch": 3}),
    ("dark soya sauce", {"ch": 7}),
    ("corn starch", {"ch": 7}),
    ("chicken broth", {"ch": 4}),
    ("capsicum", {"ch": 4}),
    ("soy sauce", {"i": 2, "ch": 5}),
    ("spring onion", {"i": 1, "ch": 4}),
    ("egg", {"ch": 3}),
    ("vinegar", {"ch": 3}),
    ("star anise", {"ch": 1}),
    ("salt", {"i": 12, "ch": 12}),
]

CATEGORIES = [
    (
        "rice",
        RICE_ITEMS,
        [
            ("biryani", "b", ["hyderabadi biryani", "lucknowi biryani",
                              "kolkata biryani", "veg dum biryani"]),
            ("fried rice", "f", ["egg fried rice", "schezwan fried rice",
                                 "singapore fried rice", "veg fried rice"]),
            ("pulao", "p", ["peas pulao", "tawa pulao",
                            "methi pulao", "kashmiri pulao"]),
        ],
    ),
    (
        "chicken",
        CHICKEN_ITEMS,
        [
            ("indian", "i", ["butter chicken", "chicken tikka masala",
                             "home style chicken curry", "tandoori chicken"]),
            ("chinese", "ch", ["chilli chicken", "kung pao chicken",
                               "chicken manchurian", "sweet and sour chicken"]),
        ],
    ),
]


def subcategory_recipe_items(items, key):
    """Item lists for the 12 recipes of one subcategory."""
    recipes = [[] for _ in range(RECIPES_PER_SUBCATEGORY)]
    for decl_index, (name, counts) in enumerate(items):
        count = counts.get(key, 0)
        offset = (decl_index * 5) % RECIPES_PER_SUBCATEGORY
        for t in range(count):
            recipes[(offset + t) % RECIPES_PER_SUBCATEGORY].append(name)
    return recipes


def build_doc():
    doc = {"categories": []}
    for cat_name, items, subs in CATEGORIES:
        cat = {"name": cat_name, "subcategories": []}
        for sub_name, key, dish_names in subs:
            recipe_items = subcategory_recipe_items(items, key)
            slug = sub_name.replace(" ", "-")
            dishes = []
            for di, dish_name in enumerate(dish_names):
                recipes = []
                for t in range(RECIPES_PER_DISH):
                    idx = di * RECIPES_PER_DISH + t
                    recipes.append(
                        {"id": f"{slug}-{di + 1}-{t + 1}", "items": recipe_items[idx]}
                    )
                dishes.append({"name": dish_name, "recipes": recipes})
            cat["subcategories"].append({"name": sub_name, "dishes": dishes})
        doc["categories"].append(cat)
    return doc


def top_ranked(stats, category, subcategory, count):
    ci = stats.corpus.category_index(category)
    table = stats.rank_tables[ci]
    si = table.subcategory_names.index(subcategory)
    import numpy as np

    order = np.argsort(table.ranks[si], kind="stable")
    return [stats.corpus.item_name(int(j)) for j in order[:count]]


def verify(doc):
    corpus = load_corpus(json.dumps(doc).encode())
    assert len(corpus.categories) == 2
    assert sum(len(c.subcategories) for c in corpus.categories) == 5
    assert sum(1 for _ in corpus.iter_recipes()) == 60

    stats = CorpusStats.compute(corpus, k=5, h=1)

    # salt is the globally dominant item and must vanish from identifiers
    assert stats.global_support[corpus.item_id("salt")] == 1.0
    names = lambda ident: [corpus.item_name(i) for i in ident.identifiers]
    assert names(stats.identifier_sets[0]) == [
        "long-grain rice", "clove", "cinnamon", "ghee", "cardamom",
    ]
    assert names(stats.identifier_sets[1]) == [
        "chicken", "chicken breast", "chicken leg", "chicken thigh",
        "chicken boneless",
    ]

    assert top_ranked(stats, "rice", "biryani", 6) == [
        "kewra water", "mace", "curd", "black peppercorn",
        "ginger garlic paste", "cardamom",
    ]
    assert top_ranked(stats, "rice", "fried rice", 5) == [
        "dark soya sauce", "garlic", "cabbage", "egg", "carrot",
    ]
    assert top_ranked(stats, "rice", "pulao", 5) == [
        "cumin seed", "almond", "cashew nut", "green pea", "coconut",
    ]
    assert top_ranked(stats, "chicken", "indian", 5) == [
        "cumin", "coriander powder", "coriander", "cilantro", "chicken",
    ]
    assert top_ranked(stats, "chicken", "chinese", 5) == [
        "dark soya sauce", "corn starch", "chicken breast", "chicken broth",
        "capsicum",
    ]

    # the exclusive-coverage boundary: in every biryani recipe, nowhere else
    rice = stats.rank_tables[0]
    bi = rice.subcategory_names.index("biryani")
    assert rice.scores[bi, corpus.item_id("kewra water")] == 1.0

    # default-config walkthrough: one identifier, then the top five
    # biryani differentiators; activation exactly on the sixth add
    session = Session(stats, SessionConfig())
    first = session.add_item(corpus.item_id("cardamom"))
    assert first.activated_categories == ("rice",)
    adds = ["kewra water", "mace", "curd", "black peppercorn",
            "ginger garlic paste"]
    for pos, name in enumerate(adds, start=2):
        report = session.add_item(corpus.item_id(name))
        if pos < 6:
            assert report.activated_subcategories == (), (pos, name)
        else:
            assert report.activated_subcategories == (("rice", "biryani"),)
    recs = session.recommend()
    assert recs and recs[0].subcategory == "biryani"
    print("first recommendation:", recs[0].dish, recs[0].recipe,
          round(recs[0].similarity, 4))
    print("vocabulary size:", corpus.vocabulary_size)


def main():
    doc = build_doc()
    verify(doc)
    out = Path(__file__).resolve().parents[1] / "src/basketchef/data/bundled_corpus.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes((json.dumps(doc, indent=2) + "\n").encode())
    print("wrote", out)


if __name__ == "__main__":
    main()
