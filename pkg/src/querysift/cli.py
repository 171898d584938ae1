"""Command-line driver, one subcommand per pipeline stage.

Every option can also come from a ``key = value`` config file given with
``--config``; command-line flags win.  Each run writes the resolved
settings to ``<output>.conf`` (or ``run.conf`` in the pipeline's output
directory).

Exit codes: 0 success, 1 usage, 2 input format, 3 internal invariant.
"""
import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import datasets
from .classify import (
    classify_largest,
    evaluate,
    format_report,
    read_predictions,
    write_predictions,
    write_report_json,
)
from .clustering import TIE_TOL, default_k_range, read_clustering, select_k, write_clustering
from .corpus import (
    CooccurrenceModel,
    build_cooccurrence_model,
    build_document_index,
    load_model,
    read_corpus,
    save_model,
)
from .errors import FormatError, InvariantError
from .ingest import LabeledDataset, collate, parse_query_log, parse_tmn_log, write_query_log
from .render import render_map
from .similarity import DiscoLike, Ngd, build_matrix, read_matrix, write_matrix
from .simulator import SimulatorConfig, TopicPool, UserSession, simulate, write_metadata

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("querysift")


class UsageError(Exception):
    pass


# -- option parsing --------------------------------------------------------

def _bool(text):
    if isinstance(text, bool):
        return text
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _pair(text):
    a, _, b = str(text).replace(",", ":").partition(":")
    return int(a), int(b or a)


def _slice(text):
    a, sep, b = str(text).partition(":")
    if not sep:
        raise ValueError("slice must look like start:end")
    return slice(int(a) if a.strip() else None, int(b) if b.strip() else None)


def _sessions(text):
    out = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 4:
            raise ValueError(f"session {item!r} is not start:topic:count:gap")
        out.append((float(parts[0]), parts[1], int(parts[2]), float(parts[3])))
    return out


def _measure(text):
    if text not in ("disco", "ngd"):
        raise ValueError("measure must be 'disco' or 'ngd'")
    return text


# name -> (converter, default, help)
OPTIONS = {
    "seed": (int, 0, "global seed; per-stage seeds derive from it"),
    "pool": (str, None, "topic pool JSON (default: bundled pool)"),
    "duration": (float, 3600.0, "simulated seconds of noise"),
    "rate": (float, 10.0, "noise queries per hour"),
    "list_min": (int, 100, "smallest dynamic list size"),
    "list_max": (int, 200, "largest dynamic list size"),
    "bursts": (_bool, True, "emit noise bursts after user queries"),
    "burst_range": (_pair, (3, 8), "burst size range as low:high"),
    "permute_fraction": (float, 0.3, "share of bursts built from one permuted query"),
    "replace_prob": (float, 0.02, "per-entry replacement probability per noise tick"),
    "click_prob": (float, 0.5, "click-through flag probability"),
    "sessions": (_sessions, None, "user sessions start:topic:count:gap[,...]; topic is an index or name"),
    "proxy_log": (str, None, "proxy query log to label"),
    "tmn_log": (str, None, "TrackMeNot activity log"),
    "collate_window": (int, 120, "max seconds between matching log entries"),
    "corpus": (str, None, "corpus directory or file (default: bundled corpus)"),
    "corpus_mode": (str, "auto", "auto, dir (one document per file) or lines"),
    "measure": (_measure, "disco", "disco or ngd"),
    "cooc_window": (int, 3, "co-occurrence half-window in tokens"),
    "min_count": (int, 2, "minimum token count kept in the model"),
    "model": (str, None, "trained model file"),
    "dataset": (str, None, "labeled query log"),
    "matrix": (str, None, "dissimilarity matrix file"),
    "clustering": (str, None, "clustering file"),
    "predictions": (str, None, "predictions file"),
    "k_min": (int, 2, "smallest k tried"),
    "k_max": (int, None, "largest k tried (default min(n-1, 25))"),
    "slice": (_slice, None, "record range start:end"),
    "scale": (int, 4, "pixels per matrix cell"),
    "out": (str, None, "output file"),
    "outdir": (str, None, "output directory"),
}

_SIM = ["seed", "pool", "duration", "rate", "list_min", "list_max", "bursts", "burst_range",
        "permute_fraction", "replace_prob", "click_prob", "sessions"]
_TRAIN = ["corpus", "corpus_mode", "measure", "cooc_window", "min_count"]

STAGES = {
    "simulate": (_SIM + ["out"], ["out"]),
    "ingest": (["proxy_log", "tmn_log", "collate_window", "out"], ["proxy_log", "out"]),
    "train": (_TRAIN + ["out"], ["out"]),
    "matrix": (["dataset", "model", "slice", "out"], ["dataset", "model", "out"]),
    "cluster": (["matrix", "k_min", "k_max", "slice", "out"], ["matrix", "out"]),
    "classify": (["clustering", "out"], ["clustering", "out"]),
    "evaluate": (["predictions", "dataset", "slice", "out"], ["predictions", "dataset", "out"]),
    "render": (["matrix", "clustering", "dataset", "slice", "scale", "out"],
               ["matrix", "clustering", "dataset", "out"]),
    "pipeline": (_SIM + ["proxy_log", "tmn_log", "collate_window", "dataset"] + _TRAIN
                 + ["model", "k_min", "k_max", "slice", "scale", "outdir"], ["outdir"]),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="querysift", description="Cluster-based separation of user queries from search noise.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="stage", required=True, parser_class=_Parser)
    for stage, (names, _) in STAGES.items():
        p = sub.add_parser(stage)
        p.add_argument("--config", help="key = value settings file")
        for name in names:
            conv, default, help_text = OPTIONS[name]
            p.add_argument("--" + name.replace("_", "-"), dest=name, default=argparse.SUPPRESS,
                           help=f"{help_text} (default: {default})")
    return parser


def read_config(path):
    settings = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, eq, value = line.partition("=")
            if not eq:
                raise FormatError("expected 'key = value'", lineno, path)
            settings[key.strip().replace("-", "_")] = value.strip()
    return settings


def resolve(stage, flags):
    """Defaults, then config file, then flags; values converted and checked."""
    names, required = STAGES[stage]
    raw = {}
    if flags.get("config"):
        for key, value in read_config(flags["config"]).items():
            if key not in names:
                raise UsageError(f"config key {key!r} does not apply to '{stage}'")
            raw[key] = value
    raw.update({k: v for k, v in flags.items() if k in names})
    cfg = {}
    for name in names:
        conv, default, _ = OPTIONS[name]
        if name in raw and raw[name] is not None:
            try:
                cfg[name] = conv(raw[name])
            except ValueError as exc:
                raise UsageError(f"--{name.replace('_', '-')}: {exc}") from None
        else:
            cfg[name] = default
    missing = [n for n in required if cfg[n] is None]
    if missing:
        raise UsageError("missing required setting(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return cfg


def _fmt(value):
    if isinstance(value, slice):
        return f"{'' if value.start is None else value.start}:{'' if value.stop is None else value.stop}"
    if isinstance(value, tuple) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return f"{value[0]}:{value[1]}"
    if isinstance(value, list):
        return ",".join(":".join(str(x) for x in s) for s in value)
    return str(value)


def write_snapshot(cfg, path):
    with open(path, "w", encoding="utf-8") as fh:
        for key in sorted(cfg):
            if cfg[key] is not None and key not in ("out", "outdir"):
                fh.write(f"{key} = {_fmt(cfg[key])}\n")


def derive_seed(seed, stage):
    digest = hashlib.sha256(f"{seed}/{stage}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# -- stages ----------------------------------------------------------------

def _open_in(path):
    return open(path, encoding="utf-8")


def _load_dataset(path, sl=None):
    with _open_in(path) as fh:
        ds = LabeledDataset(parse_query_log(fh, str(path)), Path(path).stem)
    return ds[sl] if sl is not None else ds


def _load_pool(path):
    with (_open_in(path) if path else datasets.pool_path().open(encoding="utf-8")) as fh:
        try:
            return TopicPool.from_json(fh)
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise FormatError(f"bad topic pool: {exc}", None, path) from None


def _topic_index(pool, ref):
    if ref.isdigit():
        return int(ref)
    for i, name in enumerate(pool.names):
        if name == ref or name.split("/")[-1] == ref:
            return i
    raise UsageError(f"unknown topic {ref!r}")


def simulator_config(cfg, pool):
    seed = derive_seed(cfg["seed"], "simulate")
    if cfg["sessions"] is None:
        rng = np.random.default_rng(derive_seed(cfg["seed"], "sessions"))
        t1, t2 = (int(t) for t in rng.choice(len(pool), size=2, replace=False))
        sessions = [UserSession(300.0, t1, 10, 120.0), UserSession(cfg["duration"] / 2, t2, 10, 120.0)]
    else:
        sessions = [UserSession(s, _topic_index(pool, t), c, g) for s, t, c, g in cfg["sessions"]]
    try:
        return SimulatorConfig(
            seed=seed,
            rate_per_hour=cfg["rate"],
            list_min=cfg["list_min"],
            list_max=cfg["list_max"],
            burst_enabled=cfg["bursts"],
            burst_size_range=cfg["burst_range"],
            permute_fraction=cfg["permute_fraction"],
            replace_prob_per_tick=cfg["replace_prob"],
            duration=cfg["duration"],
            user_sessions=tuple(sessions),
            click_prob=cfg["click_prob"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def run_simulate(cfg):
    pool = _load_pool(cfg["pool"])
    config = simulator_config(cfg, pool)
    try:
        ds, trace = simulate(pool, config, return_trace=True)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = Path(cfg["out"])
    with open(out, "w", encoding="utf-8") as fh:
        write_query_log(ds.records, fh)
    with open(out.with_name(out.name + ".meta.json"), "w", encoding="utf-8") as fh:
        write_metadata(config, ds, trace, fh)
    log.info("simulated %d records", len(ds))
    return ds


def run_ingest(cfg):
    with _open_in(cfg["proxy_log"]) as fh:
        proxy = parse_query_log(fh, cfg["proxy_log"])
    tmn = []
    if cfg["tmn_log"]:
        with _open_in(cfg["tmn_log"]) as fh:
            tmn = parse_tmn_log(fh, cfg["tmn_log"])
    ds, summary = collate(proxy, tmn, cfg["collate_window"], return_summary=True)
    with open(cfg["out"], "w", encoding="utf-8") as fh:
        write_query_log(ds.records, fh)
    log.info("collated: %d matched, %d user, %d unmatched TrackMeNot entries",
             summary.matched, summary.relabeled_user, len(summary.unmatched_tmn))
    return ds


def run_train(cfg):
    if cfg["corpus"]:
        docs = read_corpus(cfg["corpus"], cfg["corpus_mode"])
    else:
        docs = datasets.load_corpus()
    if cfg["measure"] == "disco":
        model = build_cooccurrence_model(docs, cfg["cooc_window"], cfg["min_count"])
    else:
        model = build_document_index(docs)
    save_model(model, cfg["out"])
    return model


def run_matrix(cfg):
    ds = _load_dataset(cfg["dataset"], cfg["slice"])
    if not len(ds):
        raise ValueError("no records selected")
    model = load_model(cfg["model"])
    measure = DiscoLike(model) if isinstance(model, CooccurrenceModel) else Ngd(model)
    m = build_matrix(ds.queries, measure)
    D = m.values
    if not (np.array_equal(D, D.T) and np.all(np.diag(D) == 0) and D.min() >= 0 and D.max() <= 1):
        raise InvariantError("built matrix violates symmetry / diagonal / range")
    m.meta["dataset"] = Path(cfg["dataset"]).name
    if cfg["slice"] is not None:
        m.meta["slice"] = _fmt(cfg["slice"])
    with open(cfg["out"], "w", encoding="utf-8") as fh:
        write_matrix(m, fh)
    if m.meta.get("out_of_range"):
        log.warning("%d pair(s) fell outside [0, 1] before clamping", m.meta["out_of_range"])
    return m


def _check_clustering(D, c):
    medoids = np.asarray(c.medoids)
    near = D[medoids].min(axis=0)
    own = D[medoids[c.assignment], np.arange(len(D))]
    if np.any(own > near + TIE_TOL):
        raise InvariantError("an element is not assigned to its nearest medoid")
    if abs(own.sum() - c.total_cost) > 1e-9:
        raise InvariantError("total cost does not match the assignment")
    if np.any(np.abs(c.silhouettes) > 1):
        raise InvariantError("silhouette outside [-1, 1]")


def run_cluster(cfg):
    with _open_in(cfg["matrix"]) as fh:
        m = read_matrix(fh, cfg["matrix"])
    if cfg["slice"] is not None:
        m = _slice_matrix(m, cfg["slice"])
    n = m.n
    if n < 3:
        raise ValueError(f"need at least 3 queries to choose k, got {n}")
    k_max = cfg["k_max"] if cfg["k_max"] is not None else default_k_range(n)[1]
    try:
        c = select_k(m.values, cfg["k_min"], k_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _check_clustering(m.values, c)
    with open(cfg["out"], "w", encoding="utf-8") as fh:
        write_clustering(c, fh)
    return c


def _slice_matrix(m, sl):
    start, stop, step = sl.indices(m.n)
    if step != 1 or stop <= start:
        raise ValueError("slice selects no records")
    return m.sub(start, stop)


def run_classify(cfg):
    with _open_in(cfg["clustering"]) as fh:
        c = read_clustering(fh, cfg["clustering"])
    result = classify_largest(c)
    with open(cfg["out"], "w", encoding="utf-8") as fh:
        write_predictions(result, fh)
    return result


def run_evaluate(cfg):
    with _open_in(cfg["predictions"]) as fh:
        result = read_predictions(fh, cfg["predictions"])
    ds = _load_dataset(cfg["dataset"], cfg["slice"])
    report = evaluate(result, ds)
    if report.n != len(ds):
        raise InvariantError("confusion counts do not partition the dataset")
    out = Path(cfg["out"])
    with open(out, "w", encoding="utf-8") as fh:
        write_report_json(report, fh)
    text = format_report(report, ds.name)
    with open(out.with_suffix(".txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(text)
    return report


def run_render(cfg):
    with _open_in(cfg["matrix"]) as fh:
        m = read_matrix(fh, cfg["matrix"])
    with _open_in(cfg["clustering"]) as fh:
        c = read_clustering(fh, cfg["clustering"])
    ds = _load_dataset(cfg["dataset"], cfg["slice"])
    image = render_map(m.values, c, ds, pixel_scale=cfg["scale"])
    Path(cfg["out"]).write_bytes(image)
    return image


def run_pipeline(cfg, state):
    outdir = Path(cfg["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {name: str(outdir / name) for name in
             ("dataset.tsv", "model.txt", "matrix.txt", "clustering.txt", "predictions.txt", "report.json", "map.ppm")}

    def sub(stage, **kw):
        names = STAGES[stage][0]
        c = {k: cfg[k] for k in names if k in cfg}
        c.update(kw)
        for k in names:
            c.setdefault(k, OPTIONS[k][1])
        state["stage"] = stage
        return RUNNERS[stage](c)

    if cfg["dataset"]:
        dataset = cfg["dataset"]
    elif cfg["proxy_log"]:
        sub("ingest", out=paths["dataset.tsv"])
        dataset = paths["dataset.tsv"]
    else:
        sub("simulate", out=paths["dataset.tsv"])
        dataset = paths["dataset.tsv"]
    if cfg["model"]:
        model = cfg["model"]
    else:
        sub("train", out=paths["model.txt"])
        model = paths["model.txt"]
    sub("matrix", dataset=dataset, model=model, out=paths["matrix.txt"])
    sub("cluster", matrix=paths["matrix.txt"], slice=None, out=paths["clustering.txt"])
    sub("classify", clustering=paths["clustering.txt"], out=paths["predictions.txt"])
    sub("evaluate", predictions=paths["predictions.txt"], dataset=dataset, out=paths["report.json"])
    sub("render", matrix=paths["matrix.txt"], clustering=paths["clustering.txt"], dataset=dataset,
        out=paths["map.ppm"])


RUNNERS = {
    "simulate": run_simulate,
    "ingest": run_ingest,
    "train": run_train,
    "matrix": run_matrix,
    "cluster": run_cluster,
    "classify": run_classify,
    "evaluate": run_evaluate,
    "render": run_render,
}


def main(argv=None):
    logging.basicConfig(format="querysift: %(levelname)s: %(message)s", level=logging.WARNING)
    state = {"stage": None}
    try:
        args = vars(build_parser().parse_args(argv))
        if args.pop("verbose", False):
            log.setLevel(logging.INFO)
        stage = args.pop("stage")
        state["stage"] = stage
        cfg = resolve(stage, args)
        if stage == "pipeline":
            write_snapshot(cfg, Path(cfg["outdir"]).mkdir(parents=True, exist_ok=True) or Path(cfg["outdir"]) / "run.conf")
            run_pipeline(cfg, state)
        else:
            write_snapshot(cfg, cfg["out"] + ".conf")
            RUNNERS[stage](cfg)
    except UsageError as exc:
        return _fail(state, exc, EXIT_USAGE)
    except InvariantError as exc:
        return _fail(state, exc, EXIT_INVARIANT)
    except (FormatError, OSError, ValueError) as exc:
        return _fail(state, exc, EXIT_FORMAT)
    return EXIT_OK


def _fail(state, exc, code):
    where = f" {state['stage']}" if state["stage"] else ""
    if isinstance(exc, OSError) and exc.filename:
        msg = f"{exc.strerror}: {exc.filename}"
    else:
        msg = str(exc)
    sys.stderr.write(f"querysift{where}: error: {msg}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
