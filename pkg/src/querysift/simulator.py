"""Synthetic TrackMeNot-style noise interleaved with topical user sessions.

The noise stream is a Poisson process drawing from a dynamic query list
that slowly evolves within topics.  Each user query can trigger a burst of
noise queries, sometimes built by permuting or trimming one longer list
query.  Independent RNG streams keep the background noise unchanged when
user sessions move (bursts aside).
"""
import json
from dataclasses import asdict, dataclass

import numpy as np

from .ingest import Label, LabeledDataset, QueryRecord
from .text import tokenize

LIST_BAND = (100, 200)
DEFAULT_START_TIME = 1_300_000_000


@dataclass(frozen=True)
class TopicPool:
    topics: tuple  # tuple of tuples of query strings
    names: tuple = ()

    def __post_init__(self):
        topics = tuple(tuple(t) for t in self.topics)
        object.__setattr__(self, "topics", topics)
        if not topics:
            raise ValueError("topic pool is empty")
        for i, t in enumerate(topics):
            if not t:
                raise ValueError(f"topic {i} has no queries")
            for q in t:
                if not tokenize(q):
                    raise ValueError(f"topic {i} query {q!r} has no tokens")

    def __len__(self):
        return len(self.topics)

    @property
    def size(self):
        return sum(len(t) for t in self.topics)

    @classmethod
    def from_json(cls, fh):
        data = json.load(fh)
        topics = data["topics"]
        return cls(tuple(t["queries"] for t in topics), tuple(t.get("name", str(i)) for i, t in enumerate(topics)))

    def to_json(self, fh):
        names = self.names or tuple(str(i) for i in range(len(self.topics)))
        json.dump({"topics": [{"name": n, "queries": list(q)} for n, q in zip(names, self.topics)]}, fh, indent=1)
        fh.write("\n")


@dataclass(frozen=True)
class UserSession:
    start: float  # seconds after the simulation start
    topic: int
    count: int
    mean_gap: float


@dataclass(frozen=True)
class SimulatorConfig:
    seed: int = 0
    rate_per_hour: float = 10.0
    list_min: int = 100
    list_max: int = 200
    burst_enabled: bool = True
    burst_size_range: tuple = (3, 8)
    burst_span: float = 60.0
    permute_fraction: float = 0.3
    replace_prob_per_tick: float = 0.02
    duration: float = 3600.0
    user_sessions: tuple = ()
    click_prob: float = 0.5
    start_time: int = DEFAULT_START_TIME
    allow_out_of_band: bool = False

    def __post_init__(self):
        sessions = tuple(s if isinstance(s, UserSession) else UserSession(*s) for s in self.user_sessions)
        object.__setattr__(self, "user_sessions", sessions)
        object.__setattr__(self, "burst_size_range", tuple(self.burst_size_range))
        if self.rate_per_hour <= 0:
            raise ValueError("rate_per_hour must be positive")
        if not 1 <= self.list_min <= self.list_max:
            raise ValueError("need 1 <= list_min <= list_max")
        lo, hi = LIST_BAND
        if not self.allow_out_of_band and not lo <= self.list_min <= self.list_max <= hi:
            raise ValueError(f"list size bounds must lie in [{lo}, {hi}] unless allow_out_of_band is set")
        blo, bhi = self.burst_size_range
        if not 0 <= blo <= bhi:
            raise ValueError("burst_size_range must be 0 <= low <= high")
        for name in ("permute_fraction", "replace_prob_per_tick", "click_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.duration < 0 or self.burst_span < 0 or self.start_time < 0:
            raise ValueError("duration, burst_span and start_time must be >= 0")
        for s in sessions:
            if s.start < 0 or s.count < 0 or s.mean_gap <= 0 or s.topic < 0:
                raise ValueError(f"invalid user session {s}")

    def as_dict(self):
        d = asdict(self)
        d["burst_size_range"] = list(self.burst_size_range)
        d["user_sessions"] = [asdict(s) for s in self.user_sessions]
        return d


def build_seed_list(pool, size, rng):
    """Sample ``size`` (topic, query) entries from the pool without replacement."""
    if size < 1:
        raise ValueError("dynamic list must not be empty")
    entries = [(t, q) for t, qs in enumerate(pool.topics) for q in qs]
    if size > len(entries):
        raise ValueError(f"pool holds {len(entries)} queries, cannot draw {size}")
    picks = rng.choice(len(entries), size=size, replace=False)
    return [entries[i] for i in picks]


def evolve_list(entries, pool, rng, replace_prob):
    """Replace each entry with probability ``replace_prob`` by a same-topic query.

    An entry whose topic offers no alternative query is kept.
    """
    out = list(entries)
    if replace_prob <= 0 or not out:
        return out
    marked = np.flatnonzero(rng.random(len(out)) < replace_prob)
    for i in marked:
        topic, query = out[i]
        alternatives = [q for q in pool.topics[topic] if q != query]
        if alternatives:
            out[i] = (topic, alternatives[rng.integers(len(alternatives))])
    return out


def _variants(query, count, rng):
    tokens = query.split()
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            perm = [tokens[i] for i in rng.permutation(len(tokens))]
            out.append(" ".join(perm))
        else:
            k = int(rng.integers(2, len(tokens)))
            keep = np.sort(rng.choice(len(tokens), size=k, replace=False))
            out.append(" ".join(tokens[i] for i in keep))
    return out


def _user_events(pool, config, rng):
    events = []
    for s_idx, s in enumerate(config.user_sessions):
        if s.topic >= len(pool):
            raise ValueError(f"session {s_idx} names topic {s.topic}, pool has {len(pool)}")
        topic = pool.topics[s.topic]
        replace = s.count > len(topic)
        picks = rng.choice(len(topic), size=s.count, replace=replace)
        t = float(s.start)
        for n, i in enumerate(picks):
            if n:
                t += rng.exponential(s.mean_gap)
            events.append((t, s_idx, topic[i]))
    events.sort(key=lambda e: e[0])
    return events


def simulate(pool, config, *, return_trace=False):
    """Generate a labeled query stream.

    With ``return_trace`` also returns a dict with per-record ``origin``
    ("user", "list", "burst" or "variant"), per-record ``clicked`` flags,
    ``list_sizes`` after every noise tick, and ``in_list`` telling whether
    each list/burst query was on the dynamic list when emitted.
    """
    tmn_ss, user_ss, burst_ss, click_ss = np.random.SeedSequence(config.seed).spawn(4)
    tmn_rng = np.random.default_rng(tmn_ss)
    user_rng = np.random.default_rng(user_ss)
    burst_rng = np.random.default_rng(burst_ss)
    click_rng = np.random.default_rng(click_ss)

    size = int(tmn_rng.integers(config.list_min, config.list_max + 1))
    dyn = build_seed_list(pool, size, tmn_rng)

    mean_gap = 3600.0 / config.rate_per_hour
    ticks = []
    t = tmn_rng.exponential(mean_gap)
    while t < config.duration:
        ticks.append(t)
        t += tmn_rng.exponential(mean_gap)

    users = _user_events(pool, config, user_rng)

    # (time, sequence, query, label, origin, on_list)
    emitted = []
    list_sizes = []

    def emit(t, query, label, origin):
        on_list = any(q == query for _, q in dyn) if origin in ("list", "burst") else None
        emitted.append((t, len(emitted), query, label, origin, on_list))

    def burst(t0):
        lo, hi = config.burst_size_range
        count = int(burst_rng.integers(lo, hi + 1))
        if count == 0:
            return
        times = np.sort(t0 + burst_rng.uniform(0.0, config.burst_span, size=count))
        long_ones = [q for _, q in dyn if len(q.split()) >= 3]
        if long_ones and burst_rng.random() < config.permute_fraction:
            base = long_ones[burst_rng.integers(len(long_ones))]
            for bt, q in zip(times, _variants(base, count, burst_rng)):
                emit(bt, q, Label.TMN, "variant")
        else:
            for bt in times:
                q = dyn[burst_rng.integers(len(dyn))][1]
                emit(bt, q, Label.TMN, "burst")

    u = 0
    for tick in ticks:
        while u < len(users) and users[u][0] < tick:
            emit(users[u][0], users[u][2], Label.USER, "user")
            if config.burst_enabled:
                burst(users[u][0])
            u += 1
        dyn = evolve_list(dyn, pool, tmn_rng, config.replace_prob_per_tick)
        list_sizes.append(len(dyn))
        emit(tick, dyn[tmn_rng.integers(len(dyn))][1], Label.TMN, "list")
    for ut, _, q in users[u:]:
        emit(ut, q, Label.USER, "user")
        if config.burst_enabled:
            burst(ut)

    emitted.sort(key=lambda e: (e[0], e[1]))
    records = [QueryRecord(config.start_time + int(e[0]), e[2], e[3]) for e in emitted]
    dataset = LabeledDataset(records, name=f"sim-{config.seed}")
    if not return_trace:
        return dataset

    clicked = [bool(e[3] is Label.TMN and click_rng.random() < config.click_prob) for e in emitted]
    trace = {
        "origin": [e[4] for e in emitted],
        "clicked": clicked,
        "list_sizes": list_sizes,
        "in_list": [e[5] for e in emitted],
    }
    return dataset, trace


def write_metadata(config, dataset, trace, fh):
    labels = [r.label.value for r in dataset.records]
    json.dump(
        {
            "config": config.as_dict(),
            "records": len(dataset),
            "user_records": labels.count("U"),
            "tmn_records": labels.count("T"),
            "clicked": [int(c) for c in trace["clicked"]],
        },
        fh,
        indent=1,
        sort_keys=True,
    )
    fh.write("\n")
