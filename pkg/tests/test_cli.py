"""CLI subcommands: exit codes, CSV output, replay transcripts."""
from __future__ import annotations

import csv
import io
import json
import random
import socket

import pytest

import oracles
from basketchef import bundled_corpus_path
from basketchef.cli import main
from conftest import doc_bytes, random_doc

BUNDLED = str(bundled_corpus_path())


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


class TestValidate:
    def test_bundled_corpus_is_valid(self, capsys):
        code, out, _ = run(capsys, "validate", "--corpus", BUNDLED)
        assert code == 0
        assert "2 categories" in out

    def test_empty_recipe_names_the_recipe(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(
            json.dumps(
                {
                    "categories": [
                        {
                            "name": "c",
                            "subcategories": [
                                {
                                    "name": "s",
                                    "dishes": [
                                        {
                                            "name": "d",
                                            "recipes": [{"id": "r9", "items": []}],
                                        }
                                    ],
                                }
                            ],
                        }
                    ]
                }
            )
        )
        code, _, err = run(capsys, "validate", "--corpus", str(bad))
        assert code == 1
        assert "r9" in err

    def test_missing_file_is_io_error(self, capsys):
        code, _, err = run(capsys, "validate", "--corpus", "/no/such/file.json")
        assert code == 3
        assert "cannot read corpus" in err

    def test_missing_corpus_flag_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.delenv("BASKETCHEF_CORPUS", raising=False)
        with pytest.raises(SystemExit) as exc:
            main(["validate"])
        assert exc.value.code == 2

    def test_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("BASKETCHEF_CORPUS", BUNDLED)
        code, out, _ = run(capsys, "validate")
        assert code == 0


class TestAnalyzeIdentifiers:
    def test_salt_never_appears(self, capsys):
        code, out, _ = run(
            capsys, "analyze-identifiers", "--corpus", BUNDLED, "--k", "5", "--h", "1"
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows[0] == ["category", "rank", "item", "support"]
        assert all(row[2] != "salt" for row in rows[1:])

    def test_k_one_gives_one_row_per_category(self, capsys):
        code, out, _ = run(
            capsys, "analyze-identifiers", "--corpus", BUNDLED, "--k", "1"
        )
        rows = parse_csv(out)[1:]
        assert [r[0] for r in rows] == ["rice", "chicken"]
        assert all(r[1] == "1" for r in rows)

    def test_matches_oracle_on_random_corpora(self, tmp_path, capsys):
        rng = random.Random(51)
        for i in range(5):
            doc = random_doc(rng)
            path = tmp_path / f"c{i}.json"
            path.write_bytes(doc_bytes(doc))
            code, out, _ = run(
                capsys,
                "analyze-identifiers", "--corpus", str(path), "--k", "3", "--h", "1",
            )
            assert code == 0
            got: dict[str, list[str]] = {}
            for cat, rank, item, sup in parse_csv(out)[1:]:
                got.setdefault(cat, []).append(item)
            for cat in got:
                assert got[cat] == oracles.identifiers(doc, cat, 3, 1)


class TestAnalyzeDifferentiators:
    def test_rice_has_three_subcategories_of_five(self, capsys):
        code, out, _ = run(
            capsys,
            "analyze-differentiators", "--corpus", BUNDLED,
            "--category", "rice", "--top", "5",
        )
        rows = parse_csv(out)[1:]
        assert len(rows) == 15
        assert [r[0] for r in rows[:5]] == ["biryani"] * 5

    def test_top_one(self, capsys):
        _, out, _ = run(
            capsys,
            "analyze-differentiators", "--corpus", BUNDLED,
            "--category", "chicken", "--top", "1",
        )
        rows = parse_csv(out)[1:]
        assert len(rows) == 2

    def test_exclusive_item_is_rank_one_with_score_one(self, capsys):
        _, out, _ = run(
            capsys,
            "analyze-differentiators", "--corpus", BUNDLED,
            "--category", "rice", "--top", "1",
        )
        rows = parse_csv(out)[1:]
        biryani = [r for r in rows if r[0] == "biryani"][0]
        assert biryani[2] == "kewra water"
        assert float(biryani[3]) == 1.0

    def test_unknown_category(self, capsys):
        code, _, err = run(
            capsys,
            "analyze-differentiators", "--corpus", BUNDLED, "--category", "soup",
        )
        assert code == 1
        assert "soup" in err


class TestThresholdTable:
    def test_known_cells(self, capsys):
        code, out, _ = run(capsys, "threshold-table")
        rows = parse_csv(out)
        assert rows[0] == ["theta"] + [f"n={n}" for n in range(1, 11)]
        grid = {int(r[0]): [int(x) for x in r[1:]] for r in rows[1:]}
        assert grid[1] == [1] * 10
        assert grid[5][0] == 83
        assert grid[6][0] == 227
        assert grid[7][0] == 616
        assert grid[5][1] == 10
        assert grid[4][2] == 6

    def test_runs_without_corpus(self, capsys, monkeypatch):
        monkeypatch.delenv("BASKETCHEF_CORPUS", raising=False)
        code, out, _ = run(capsys, "threshold-table", "--n-max", "3", "--theta-max", "2")
        assert code == 0
        assert len(parse_csv(out)) == 3

    def test_bad_range_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["threshold-table", "--n-min", "0"])
        assert exc.value.code == 2


class TestScoreCurve:
    def test_rank_one_is_unity_for_every_n(self, capsys):
        _, out, _ = run(capsys, "score-curve", "--n", "1,2,3,4,5", "--max-rank", "4")
        rows = parse_csv(out)
        assert [float(x) for x in rows[1][1:]] == [1.0] * 5

    def test_perfect_square(self, capsys):
        _, out, _ = run(capsys, "score-curve", "--n", "2", "--max-rank", "4")
        rows = parse_csv(out)
        assert float(rows[4][1]) == 0.5

    def test_strictly_decreasing_in_rank(self, capsys):
        _, out, _ = run(capsys, "score-curve", "--n", "1,3,5", "--max-rank", "30")
        rows = parse_csv(out)[1:]
        for col in range(1, 4):
            values = [float(r[col]) for r in rows]
            assert all(a > b for a, b in zip(values, values[1:]))


class TestReplay:
    def test_empty_script(self, tmp_path, capsys):
        script = tmp_path / "empty.txt"
        script.write_text("")
        code, out, _ = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", str(script)
        )
        assert code == 0
        transcript = json.loads(out)
        assert transcript["events"] == []
        assert transcript["initial"]["basket"] == []

    def test_identifier_add_activates_category(self, tmp_path, capsys):
        script = tmp_path / "one.txt"
        script.write_text("add long-grain rice\n")
        _, out, _ = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", str(script)
        )
        transcript = json.loads(out)
        assert transcript["events"][0]["report"]["activated_categories"] == ["rice"]

    def test_deterministic(self, tmp_path, capsys):
        script = tmp_path / "walk.txt"
        script.write_text(
            "add cardamom\nadd kewra water\nrecommend\n"
            "select hyderabadi biryani biryani-1-2 mace,curd\n"
            "remove cardamom\nrecommend\n"
        )
        _, first, _ = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", str(script)
        )
        _, second, _ = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", str(script)
        )
        assert first == second

    def test_select_parses_multiword_dish_and_items(self, tmp_path, capsys):
        script = tmp_path / "sel.txt"
        script.write_text("select veg dum biryani biryani-4-1 kewra water,mace\n")
        code, out, _ = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", str(script)
        )
        assert code == 0
        event = json.loads(out)["events"][0]
        assert event["dish"] == "veg dum biryani"
        assert event["accepted_items"] == ["kewra water", "mace"]

    def test_unresolvable_item_fails_with_line_number(self, tmp_path, capsys):
        script = tmp_path / "bad.txt"
        script.write_text("add cardamom\nadd plutonium\n")
        code, _, err = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", str(script)
        )
        assert code == 1
        assert "line 2" in err

    def test_missing_script_is_io_error(self, capsys):
        code, _, err = run(
            capsys, "replay", "--corpus", BUNDLED, "--script", "/no/script.txt"
        )
        assert code == 3


class TestServe:
    def test_serve_end_to_end(self):
        import subprocess
        import sys
        import time
        import urllib.request

        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
        probe.close()
        proc = subprocess.Popen(
            [sys.executable, "-m", "basketchef", "serve",
             "--corpus", BUNDLED, "--port", str(port)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            body = None
            for _ in range(100):
                try:
                    with urllib.request.urlopen(
                        f"http://127.0.0.1:{port}/corpus", timeout=1
                    ) as response:
                        body = json.load(response)
                    break
                except OSError:
                    time.sleep(0.1)
            assert body is not None, "server never came up"
            assert body["vocabulary_size"] == 45
            assert [c["name"] for c in body["categories"]] == ["rice", "chicken"]
        finally:
            proc.terminate()
            proc.wait(timeout=10)

    def test_invalid_corpus_fails_before_binding(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        code, _, err = run(capsys, "serve", "--corpus", str(bad), "--port", "0")
        assert code == 1

    def test_port_conflict_is_io_error(self, capsys):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            code, _, err = run(
                capsys, "serve", "--corpus", BUNDLED, "--port", str(port)
            )
            assert code == 3
            assert "cannot bind" in err
        finally:
            blocker.close()
