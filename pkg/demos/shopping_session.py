"""A simulated shopping trip: watch categories and subcategories wake up.

Run:  python demos/shopping_session.py
"""
from basketchef import CorpusStats, Session, SessionConfig, load_bundled_corpus

corpus = load_bundled_corpus()
stats = CorpusStats.compute(corpus)
session = Session(stats, SessionConfig())  # n=3, theta=4, q=1

print("shopping for a biryani, one item at a time\n")
trip = ["cardamom", "kewra water", "mace", "curd",
        "black peppercorn", "ginger garlic paste"]

for name in trip:
    report = session.add_item(corpus.item_id(name))
    notes = []
    if report.activated_categories:
        notes.append(f"category up: {', '.join(report.activated_categories)}")
    if report.activated_subcategories:
        notes.append(
            "subcategory up: "
            + ", ".join(s for _, s in report.activated_subcategories)
        )
    state = session.snapshot()
    scores = state["subcategory_scores"].get("rice", {})
    bars = "  ".join(f"{s}={v:.2f}" for s, v in scores.items())
    print(f"+ {name:22s} {bars:55s} {'; '.join(notes)}")

print("\nwhat the engine thinks you are cooking:")
recs = session.recommend()
for rec in recs:
    missing = ", ".join(sorted(corpus.item_name(i) for i in rec.missing_items))
    print(f"  {rec.dish:22s} match {rec.similarity:.0%}  still needed: {missing}")

# Accept every missing item of the best match: the next recommendation
# pass sees a completed recipe.
best = recs[0]
session.select_dish(best.dish, best.recipe, best.missing_items)
print(f"\naccepted all missing items of '{best.dish}'")
top = session.recommend()[0]
print(f"now the best match is {top.dish} at {top.similarity:.0%}")
print(f"basket holds {len(session.basket)} items")
