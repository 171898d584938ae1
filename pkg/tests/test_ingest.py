import io
import logging

import pytest
from hypothesis import given, settings, strategies as st

from querysift.errors import FormatError
from querysift.ingest import (
    Label,
    LabeledDataset,
    QueryRecord,
    collate,
    parse_query_log,
    parse_tmn_log,
    write_query_log,
)
from querysift.text import normalize_query, tokenize


def test_tokenize_rules():
    assert tokenize("Red-Sox  tickets!! 2011") == ["red", "sox", "tickets", "2011"]
    assert tokenize("foo_bar") == ["foo", "bar"]
    assert tokenize("  ...  ") == []
    assert normalize_query("  Weather Boston ") == "weather boston"


def test_parse_user_line():
    (r,) = parse_query_log(io.StringIO("1300000000\tU\tred sox tickets\n"))
    assert r == QueryRecord(1300000000, "red sox tickets", Label.USER)


def test_parse_unknown_label():
    (r,) = parse_query_log(["1300000005\t?\tweather boston"])
    assert r.label is Label.UNKNOWN


def test_comments_and_blank_lines_skipped():
    text = "# header\n\n1\tT\ta b\n  \n2\tU\tc\n"
    recs = parse_query_log(io.StringIO(text))
    assert [r.timestamp for r in recs] == [1, 2]


def test_query_keeps_inner_tabs():
    (r,) = parse_query_log(["5\tU\ta\tb"])
    assert r.query == "a\tb"


@pytest.mark.parametrize(
    "line, what",
    [
        ("xyz\tU\tfoo", "timestamp"),
        ("-3\tU\tfoo", "timestamp"),
        ("1\tU\t   ", "empty"),
        ("1\tX\tfoo", "label"),
        ("1\tU", ""),
    ],
)
def test_malformed_lines_rejected(line, what):
    with pytest.raises(FormatError) as exc:
        parse_query_log(["# c", line], source="log.tsv")
    assert exc.value.lineno == 2
    assert "line 2" in str(exc.value)
    assert what in str(exc.value).lower()


def test_tmn_log():
    assert parse_tmn_log(["1300000005\tweather boston"]) == [(1300000005, "weather boston")]
    assert parse_tmn_log([]) == []
    with pytest.raises(FormatError):
        parse_tmn_log(["1300000005"])


def test_write_roundtrip():
    recs = [QueryRecord(1, "a b", Label.USER), QueryRecord(2, "c", Label.TMN), QueryRecord(3, "d", Label.UNKNOWN)]
    buf = io.StringIO()
    write_query_log(recs, buf)
    assert parse_query_log(io.StringIO(buf.getvalue())) == recs


def test_record_invariants():
    with pytest.raises(ValueError):
        QueryRecord(1, "  ")
    with pytest.raises(ValueError):
        QueryRecord(-1, "a")


def test_dataset_sorted_stably():
    recs = [QueryRecord(5, "a"), QueryRecord(1, "b"), QueryRecord(5, "c"), QueryRecord(1, "d")]
    ds = LabeledDataset(recs)
    assert ds.queries == ["b", "d", "a", "c"]
    assert ds[1:3].queries == ["d", "a"]


def _unk(t, q):
    return QueryRecord(t, q, Label.UNKNOWN)


def test_collate_inside_window():
    ds = collate([_unk(10, "a b")], [(12, "a b")], window=5)
    assert ds.labels == [Label.TMN]


def test_collate_outside_window():
    ds = collate([_unk(10, "a b")], [(100, "a b")], window=5)
    assert ds.labels == [Label.USER]


def test_collate_nearest_first():
    ds = collate([_unk(10, "x"), _unk(11, "x")], [(11, "x")], window=5)
    assert ds.labels == [Label.USER, Label.TMN]


def test_collate_normalizes_text():
    ds = collate([_unk(10, "  Weather Boston")], [(10, "weather boston ")], window=0)
    assert ds.labels == [Label.TMN]


def test_collate_keeps_resolved_labels():
    proxy = [QueryRecord(10, "x", Label.USER), _unk(11, "x")]
    ds, summary = collate(proxy, [(10, "x")], window=5, return_summary=True)
    assert ds.labels == [Label.USER, Label.TMN]
    assert summary.matched == 1 and summary.relabeled_user == 0


def test_unmatched_tmn_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="querysift.ingest"):
        _, summary = collate([_unk(1, "a")], [(1, "a"), (500, "zzz")], window=5, return_summary=True)
    assert summary.unmatched_tmn == [(500, "zzz")]
    assert "zzz" in caplog.text


def test_collate_negative_window():
    with pytest.raises(ValueError):
        collate([], [], window=-1)


words = st.sampled_from(["x", "y", "z"])
proxy_st = st.lists(st.tuples(st.integers(0, 50), words, st.sampled_from(list(Label))), max_size=12)
tmn_st = st.lists(st.tuples(st.integers(0, 50), words), max_size=12)


@settings(max_examples=200, deadline=None)
@given(proxy_st, tmn_st, st.integers(0, 20))
def test_collate_properties(proxy, tmn, window):
    recs = [QueryRecord(t, q, lab) for t, q, lab in proxy]
    ds = collate(recs, tmn, window)
    ds.check_resolved()
    ordered = LabeledDataset(recs).records
    # same records in the same (timestamp) order
    assert [(r.timestamp, r.query) for r in ds.records] == [(r.timestamp, r.query) for r in ordered]
    for before, after in zip(ordered, ds.records):
        if before.label is not Label.UNKNOWN:
            assert after.label is before.label
    # one-to-one
    new_tmn = sum(1 for b, a in zip(ordered, ds.records) if b.label is Label.UNKNOWN and a.label is Label.TMN)
    assert new_tmn <= len(tmn)
    assert collate(recs, tmn, window).records == ds.records
