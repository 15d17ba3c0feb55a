"""Walk through the offline statistics on the bundled corpus.

Run:  python demos/corpus_statistics.py
"""
import numpy as np

from basketchef import CorpusStats, load_bundled_corpus

corpus = load_bundled_corpus()
print(f"corpus: {len(corpus.categories)} categories, "
      f"{corpus.vocabulary_size} distinct items")
for cat in corpus.categories:
    dishes = sum(len(s.dishes) for s in cat.subcategories)
    recipes = sum(len(d.recipes) for s in cat.subcategories for d in s.dishes)
    print(f"  {cat.name}: {[s.name for s in cat.subcategories]} "
          f"({dishes} dishes, {recipes} recipes)")

# All statistics are precomputed once and shared by every live session.
stats = CorpusStats.compute(corpus, k=5, h=1)

# Global support finds the items that say nothing about what is being
# cooked; the top h of them are banned from every identifier list.
top = np.argsort(-stats.global_support)[:5]
print("\nmost common items overall:")
for item in top:
    print(f"  {corpus.item_name(int(item)):20s} {stats.global_support[item]:.3f}")

# Category identifiers: the high-support items whose presence in a basket
# wakes a category up. Note that salt never appears despite its support.
print("\ncategory identifiers (k=5, after excluding the h=1 most common):")
for ident in stats.identifier_sets:
    names = ", ".join(corpus.item_name(i) for i in ident.identifiers)
    print(f"  {ident.category}: {names}")

# Subcategory differentiators: items ranked by how strongly they separate
# one subcategory from its siblings. Score 1.0 means "in every recipe of
# this subcategory and in no sibling recipe".
print("\ntop differentiators per rice subcategory:")
rice = stats.rank_tables[corpus.category_index("rice")]
for si, sub in enumerate(rice.subcategory_names):
    order = np.argsort(rice.ranks[si], kind="stable")[:5]
    row = ", ".join(
        f"{corpus.item_name(int(j))} ({rice.scores[si, int(j)]:+.2f})"
        for j in order
    )
    print(f"  {sub}: {row}")
