"""Session event scripts and deterministic replay transcripts.

Script format: one event per line. Blank lines and lines starting with
``#`` are skipped.

    add <item name>
    remove <item name>
    select <dish name> <recipe-id> [<item,item,...>]
    recommend

Item and dish names may contain spaces; the recipe id may not. The
comma-separated accepted-item list is optional (omitted = accept nothing).
Every reference must resolve against the loaded corpus.
"""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, normalize_item_name
from .session import Recommendation, Session, SessionConfig
from .stats import CorpusStats

__all__ = ["ReplayError", "parse_script", "run_replay", "recommendations_to_dicts"]


class ReplayError(ValueError):
    """A script line cannot be parsed or resolved against the corpus."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


@dataclass(frozen=True)
class AddEvent:
    item: int


@dataclass(frozen=True)
class RemoveEvent:
    item: int


@dataclass(frozen=True)
class SelectEvent:
    dish: str
    recipe_id: str
    items: tuple[int, ...]


@dataclass(frozen=True)
class RecommendEvent:
    pass


def _resolve_item(corpus: Corpus, raw: str, line_no: int) -> int:
    try:
        name = normalize_item_name(raw)
    except ValueError as exc:
        raise ReplayError(line_no, str(exc)) from exc
    if not corpus.has_item(name):
        raise ReplayError(line_no, f"unknown item {name!r}")
    return corpus.item_id(name)


def _parse_select(corpus: Corpus, rest: str, line_no: int) -> SelectEvent:
    tokens = rest.split()
    if len(tokens) < 2:
        raise ReplayError(line_no, "select needs a dish and a recipe id")
    # The dish name may contain spaces, so locate the recipe-id token: the
    # recipe is unique corpus-wide and names which dish it belongs to.
    for j in range(1, len(tokens)):
        candidate = tokens[j]
        if corpus.find_recipe(candidate) is None:
            continue
        dish = " ".join(tokens[:j])
        ci, si, di, _ = corpus.recipe_location(candidate)
        owner = corpus.categories[ci].subcategories[si].dishes[di].name
        if dish != owner:
            raise ReplayError(
                line_no,
                f"recipe {candidate!r} belongs to dish {owner!r}, not {dish!r}",
            )
        raw_items = " ".join(tokens[j + 1 :])
        items = tuple(
            _resolve_item(corpus, part, line_no)
            for part in raw_items.split(",")
            if part.strip()
        )
        return SelectEvent(dish=dish, recipe_id=candidate, items=items)
    raise ReplayError(line_no, f"no recipe id found in select event {rest!r}")


def parse_script(text: str, corpus: Corpus) -> list:
    """Parse a replay script, resolving all names against the corpus."""
    events: list = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        op, _, rest = line.partition(" ")
        rest = rest.strip()
        if op == "add":
            events.append(AddEvent(_resolve_item(corpus, rest, line_no)))
        elif op == "remove":
            events.append(RemoveEvent(_resolve_item(corpus, rest, line_no)))
        elif op == "select":
            events.append(_parse_select(corpus, rest, line_no))
        elif op == "recommend":
            if rest:
                raise ReplayError(line_no, "recommend takes no arguments")
            events.append(RecommendEvent())
        else:
            raise ReplayError(line_no, f"unknown event {op!r}")
    return events


def recommendations_to_dicts(corpus: Corpus, recs: list[Recommendation]) -> list[dict]:
    return [
        {
            "dish": r.dish,
            "recipe_id": r.recipe,
            "category": r.category,
            "subcategory": r.subcategory,
            "similarity": r.similarity,
            "missing_items": sorted(corpus.item_name(i) for i in r.missing_items),
        }
        for r in recs
    ]


def run_replay(
    corpus: Corpus,
    events: list,
    config: SessionConfig | None = None,
    stats: CorpusStats | None = None,
) -> dict:
    """Drive a fresh session through the events; return the transcript.

    The transcript is pure data (JSON-ready) and deterministic: the same
    corpus, config, and script always produce identical output.
    """
    config = config or SessionConfig()
    if stats is None:
        stats = CorpusStats.compute(corpus, k=config.k, h=config.h)
    session = Session(stats, config)
    transcript = {"initial": session.snapshot(), "events": []}
    for event in events:
        if isinstance(event, AddEvent):
            report = session.add_item(event.item)
            entry = {
                "op": "add",
                "item": corpus.item_name(event.item),
                "report": report.to_dict(),
                "state": session.snapshot(),
            }
        elif isinstance(event, RemoveEvent):
            report = session.remove_item(event.item)
            entry = {
                "op": "remove",
                "item": corpus.item_name(event.item),
                "report": report.to_dict(),
                "state": session.snapshot(),
            }
        elif isinstance(event, SelectEvent):
            report = session.select_dish(event.dish, event.recipe_id, list(event.items))
            entry = {
                "op": "select",
                "dish": event.dish,
                "recipe_id": event.recipe_id,
                "accepted_items": [corpus.item_name(i) for i in event.items],
                "report": report.to_dict(),
                "state": session.snapshot(),
            }
        elif isinstance(event, RecommendEvent):
            entry = {
                "op": "recommend",
                "recommendations": recommendations_to_dicts(
                    corpus, session.recommend()
                ),
            }
        else:  # pragma: no cover - parse_script only emits the above
            raise TypeError(f"unknown event {event!r}")
        transcript["events"].append(entry)
    return transcript
