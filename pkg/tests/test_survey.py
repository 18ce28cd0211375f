# tests/test_survey.py
import json
from pathlib import Path

import pytest

from app.models import CorpusEntry
from app.services.survey import entry_braid, format_table, load_corpus, survey, survey_row

DEMO_CORPUS = Path(__file__).resolve().parent.parent / "demo" / "corpus.jsonl"


@pytest.fixture
def small_corpus(tmp_path):
    path = tmp_path / "corpus.jsonl"
    lines = [
        json.dumps({"name": "unknot", "braid": "@1"}),
        "{not json",
        json.dumps({"name": "both", "braid": "1", "grid": "0,1;1,0"}),
        "",
        json.dumps({"name": "trefoil", "braid": "1,1,1", "sigma": 2, "alternating": True}),
        json.dumps({"name": "9_11", "braid": "3,3,3,3,-2,1,3,-2,1"}),
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_load_corpus_skips_bad_lines(small_corpus):
    entries = load_corpus(small_corpus)
    assert [e.name for e in entries] == ["unknot", "trefoil", "9_11"]


def test_demo_corpus_loads():
    names = [e.name for e in load_corpus(DEMO_CORPUS)]
    assert names[:3] == ["unknot", "trefoil", "8_19"]
    assert len(names) == 9


def test_entry_needs_one_input():
    with pytest.raises(ValueError):
        CorpusEntry(name="none")
    assert entry_braid(CorpusEntry(name="t", braid="1,1,1")).letters == (1, 1, 1)


def test_rows_keep_corpus_order(small_corpus):
    rows = survey(load_corpus(small_corpus), threads=1)
    assert [r.name for r in rows] == ["unknot", "trefoil", "9_11"]
    unknot, trefoil, nine = rows
    assert unknot.crossings == 0 and unknot.negative_ratio == 0.0
    assert unknot.odd == "NonZero"
    assert (trefoil.sl, trefoil.sl_is_sigma_minus_one, trefoil.alternating_check) == (1, True, True)
    assert nine.negative_ratio == pytest.approx(2 / 9)
    assert (nine.odd, nine.even, nine.reduced) == ("Zero", "Zero", "Zero")
    assert nine.odd_fine == "Zero"
    assert nine.sl_is_sigma_minus_one is None


def test_threads_give_the_same_rows(small_corpus):
    entries = load_corpus(small_corpus)
    assert survey(entries, threads=3) == survey(entries, threads=1)


def test_negative_ratio_of_fourteen_crossing_word():
    row = survey_row(CorpusEntry(name="m9_35", braid="4,4,3,-4,3,3,2,1,-3,-3,-2,1,3,2"))
    assert row.negative_ratio == pytest.approx(4 / 14)
    assert row.strands == 5


def test_wide_knot_flags():
    row = survey_row(CorpusEntry(name="8_19", grid="0,1,6,2,5,7,8,3,4,9;6,7,8,9,1,4,5,0,2,3", sigma=6, alternating=False))
    assert (row.strands, row.crossings, row.sl) == (4, 9, 5)
    assert row.sl_is_sigma_minus_one is True
    assert row.alternating_check is None
    assert row.odd == "NonZero"


def test_bad_entries_are_skipped_not_fatal():
    rows = survey([CorpusEntry(name="bad", braid="1,0"), CorpusEntry(name="ok", braid="1")])
    assert [r.name for r in rows] == ["ok"]


def test_format_table(small_corpus):
    rows = survey(load_corpus(small_corpus))
    lines = format_table(rows).splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("name")
    assert lines[2].startswith("trefoil") and lines[2].rstrip().endswith("yes")
    assert lines[3].split()[:3] == ["9_11", "4", "9"]
