"""Query logs: parsing, writing and collation against a TrackMeNot log.

Query log lines are ``<timestamp>\\t<label>\\t<query>`` with label one of
``U`` (user), ``T`` (TrackMeNot) or ``?`` (unknown).  The TrackMeNot log
drops the label column.  Blank lines and lines starting with ``#`` are
ignored.
"""
import enum
import logging
from dataclasses import dataclass, field

from .errors import FormatError
from .text import normalize_query

log = logging.getLogger(__name__)

DEFAULT_WINDOW = 120


class Label(enum.Enum):
    USER = "U"
    TMN = "T"
    UNKNOWN = "?"


@dataclass(frozen=True)
class QueryRecord:
    timestamp: int
    query: str
    label: Label = Label.UNKNOWN

    def __post_init__(self):
        if not self.query.strip():
            raise ValueError("query is empty")
        if self.timestamp < 0:
            raise ValueError(f"negative timestamp {self.timestamp}")


@dataclass
class LabeledDataset:
    """Records ordered by timestamp; equal timestamps keep input order."""

    records: list
    name: str = "dataset"

    def __post_init__(self):
        self.records = sorted(self.records, key=lambda r: r.timestamp)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return LabeledDataset(self.records[item], self.name)
        return self.records[item]

    @property
    def queries(self):
        return [r.query for r in self.records]

    @property
    def labels(self):
        return [r.label for r in self.records]

    def check_resolved(self):
        for i, r in enumerate(self.records):
            if r.label is Label.UNKNOWN:
                raise ValueError(f"record {i} ({r.query!r}) has no resolved label")


@dataclass
class CollationSummary:
    matched: int = 0
    relabeled_user: int = 0
    unmatched_tmn: list = field(default_factory=list)


def _split_lines(stream, ncols, source):
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t", ncols - 1)
        if len(parts) != ncols:
            raise FormatError(f"expected {ncols} tab-separated fields", lineno, source)
        try:
            ts = int(parts[0])
        except ValueError:
            raise FormatError(f"malformed timestamp {parts[0]!r}", lineno, source) from None
        if ts < 0:
            raise FormatError(f"negative timestamp {ts}", lineno, source)
        query = parts[-1].strip()
        if not query:
            raise FormatError("empty query", lineno, source)
        yield lineno, ts, parts[1:-1], query


def parse_query_log(stream, source=None):
    """Parse a labeled query log into QueryRecords, in file order."""
    records = []
    for lineno, ts, (token,), query in _split_lines(stream, 3, source):
        try:
            label = Label(token.strip())
        except ValueError:
            raise FormatError(f"unknown label {token!r}", lineno, source) from None
        records.append(QueryRecord(ts, query, label))
    return records


def parse_tmn_log(stream, source=None):
    """Parse a TrackMeNot activity log into (timestamp, query) pairs."""
    return [(ts, query) for _, ts, _, query in _split_lines(stream, 2, source)]


def write_query_log(records, fh):
    for r in records:
        fh.write(f"{r.timestamp}\t{r.label.value}\t{r.query}\n")


def collate(proxy, tmn, window=DEFAULT_WINDOW, *, name="dataset", return_summary=False):
    """Resolve Unknown proxy records against the TrackMeNot log.

    Matching is exact on trimmed, casefolded text within ``window``
    seconds, one-to-one, closest timestamps first.  Leftover Unknown
    records become User; already-labeled records are left alone.
    """
    if window < 0:
        raise ValueError("window must be >= 0")

    by_text = {}
    for j, (ts, query) in enumerate(tmn):
        by_text.setdefault(normalize_query(query), []).append((ts, j))

    pairs = []
    for i, r in enumerate(proxy):
        if r.label is not Label.UNKNOWN:
            continue
        for ts, j in by_text.get(normalize_query(r.query), ()):
            gap = abs(r.timestamp - ts)
            if gap <= window:
                pairs.append((gap, i, j))
    pairs.sort()

    matched_proxy, used_tmn = set(), set()
    for _, i, j in pairs:
        if i in matched_proxy or j in used_tmn:
            continue
        matched_proxy.add(i)
        used_tmn.add(j)

    summary = CollationSummary(matched=len(matched_proxy))
    out = []
    for i, r in enumerate(proxy):
        if r.label is Label.UNKNOWN:
            if i in matched_proxy:
                label = Label.TMN
            else:
                label = Label.USER
                summary.relabeled_user += 1
            r = QueryRecord(r.timestamp, r.query, label)
        out.append(r)

    summary.unmatched_tmn = [tmn[j] for j in range(len(tmn)) if j not in used_tmn]
    for ts, query in summary.unmatched_tmn:
        log.warning("TrackMeNot entry not seen by the proxy: %d %r", ts, query)

    dataset = LabeledDataset(out, name)
    if return_summary:
        return dataset, summary
    return dataset
