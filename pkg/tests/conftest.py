"""Shared fixtures: corpus document builders and random corpus generation."""
from __future__ import annotations

import json
import random

import pytest

from basketchef.corpus import load_corpus


def doc_bytes(doc) -> bytes:
    return json.dumps(doc).encode("utf-8")


def load_doc(doc):
    return load_corpus(doc_bytes(doc))


def make_doc(categories):
    """Build a corpus document from nested plain data.

    ``categories`` is {category: {subcategory: {dish: [recipe item lists]}}};
    recipe ids are generated.
    """
    out = {"categories": []}
    counter = 0
    for cat_name, subs in categories.items():
        cat = {"name": cat_name, "subcategories": []}
        for sub_name, dishes in subs.items():
            sub = {"name": sub_name, "dishes": []}
            for dish_name, recipes in dishes.items():
                dish = {"name": dish_name, "recipes": []}
                for items in recipes:
                    counter += 1
                    dish["recipes"].append({"id": f"r{counter}", "items": list(items)})
                sub["dishes"].append(dish)
            cat["subcategories"].append(sub)
        out["categories"].append(cat)
    return out


def random_doc(rng: random.Random):
    """A small random corpus: up to 5 categories of up to 4 subcategories,
    up to 6 recipes per dish, drawn from a 30-item pool."""
    pool = [f"item {i:02d}" for i in range(30)]
    doc = {"categories": []}
    counter = 0
    for ci in range(rng.randint(1, 5)):
        cat = {"name": f"cat{ci}", "subcategories": []}
        for si in range(rng.randint(2, 4)):
            sub = {"name": f"sub{ci}.{si}", "dishes": []}
            for di in range(rng.randint(1, 3)):
                dish = {"name": f"dish{ci}.{si}.{di}", "recipes": []}
                for _ in range(rng.randint(1, 6)):
                    counter += 1
                    items = rng.sample(pool, rng.randint(1, 8))
                    dish["recipes"].append({"id": f"r{counter}", "items": items})
                sub["dishes"].append(dish)
            cat["subcategories"].append(sub)
        doc["categories"].append(cat)
    return doc


def rank_ladder_doc(n_items: int = 90):
    """A corpus engineered so subcategory "lead" ranks its items 1..n_items.

    One category, two subcategories. Subcategory "lead" has 100 recipes;
    ladder item i (1-based) appears in the first 101-i of them, so its
    conditional probability strictly decreases with i and its rank is
    exactly i. The "other" subcategory holds a single disjoint recipe.
    "filler" appears in every recipe of both subcategories (score 0,
    ranked below the ladder).
    """
    ladder = [f"x{i:03d}" for i in range(1, n_items + 1)]
    recipes = []
    for r in range(100):
        items = [ladder[i] for i in range(n_items) if r < 100 - i]
        items.append("filler")
        recipes.append({"id": f"lead-{r}", "items": items})
    dishes = [
        {"name": f"lead dish {d}", "recipes": recipes[d * 20 : (d + 1) * 20]}
        for d in range(5)
    ]
    return {
        "categories": [
            {
                "name": "main",
                "subcategories": [
                    {"name": "lead", "dishes": dishes},
                    {
                        "name": "other",
                        "dishes": [
                            {
                                "name": "other dish",
                                "recipes": [
                                    {"id": "other-0", "items": ["yonly", "filler"]}
                                ],
                            }
                        ],
                    },
                ],
            }
        ]
    }


_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance_results.append((name, report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if _acceptance_results:
        terminalreporter.section("acceptance criteria")
        for name, outcome in _acceptance_results:
            label = "PASS" if outcome == "PASSED" else "FAIL"
            terminalreporter.write_line(f"{label} {name}")


@pytest.fixture(scope="session")
def tiny_doc():
    return make_doc(
        {"meals": {"solo": {"plain rice": [["salt", "rice"]]}}}
    )


@pytest.fixture(scope="session")
def bundled_corpus():
    from basketchef import load_bundled_corpus

    return load_bundled_corpus()
