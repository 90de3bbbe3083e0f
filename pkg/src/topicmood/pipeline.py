"""End-to-end run orchestration: corpus -> sentiment -> topics -> fuzzy.

A run is a pure function of its input files, configuration and seed; the
emitted reports are byte-reproducible. A fixture mode accepts supplied
polarities plus a supplied topic-distribution matrix and skips sentiment
scoring and topic discovery, which makes small worked examples first-class
regression inputs.
"""

from __future__ import annotations

import csv
import json
from contextlib import contextmanager
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from . import corpus as corpus_mod
from . import sentiment as sentiment_mod
from . import topics as topics_mod
from .fuzzy import TFN, aggregate_topic
from .svgplot import emit_tfn_svg

__all__ = [
    "RunConfig",
    "TopicReport",
    "RunResult",
    "StageError",
    "run_pipeline",
    "load_dist_matrix",
    "emit_report",
    "emit_tfn_svg",
]


class StageError(RuntimeError):
    """A module error tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, str(exc)) from exc


@dataclass
class RunConfig:
    """Everything a reproducible run depends on besides the input files."""

    input_path: str | Path
    input_format: str = "jsonl"
    n_topics: int | None = None  # may be omitted in fixture mode
    seed: int = 0
    min_chars: int = 60
    temperature: float = 0.25
    scale: float = 1.0
    ramp: float = 0.2
    n_terms: int = 7
    stopwords_path: str | Path | None = None
    lexicon_path: str | Path | None = None
    vectors_path: str | Path | None = None
    dist_matrix_path: str | Path | None = None
    out_dir: str | Path = "out"
    report_format: str = "json"
    emit_svg: bool = False
    svg_topics: tuple[int, ...] | None = None

    def validate(self) -> None:
        if self.input_format not in ("jsonl", "csv"):
            raise ValueError(f"input format must be jsonl or csv, got {self.input_format!r}")
        if self.report_format not in ("json", "csv"):
            raise ValueError(f"report format must be json or csv, got {self.report_format!r}")
        if self.min_chars < 1:
            raise ValueError("min_chars must be >= 1")
        if self.n_topics is None and self.dist_matrix_path is None:
            raise ValueError("a topic count is required unless a distribution matrix is supplied")
        if self.n_topics is not None and self.n_topics < 1:
            raise ValueError("topic count must be >= 1")
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")
        if self.scale <= 0:
            raise ValueError("scale must be > 0")
        if not 0 < self.ramp <= 1:
            raise ValueError("ramp must lie in (0, 1]")
        if self.n_terms < 1:
            raise ValueError("n_terms must be >= 1")
        if self.vectors_path is not None and self.dist_matrix_path is not None:
            raise ValueError(
                "a supplied distribution matrix bypasses clustering; "
                "it cannot be combined with supplied vectors"
            )

    def echo(self) -> dict:
        """Flat JSON-friendly snapshot of the effective configuration."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Path):
                value = str(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out


@dataclass(frozen=True)
class TopicReport:
    """One row of the final decision-support report."""

    topic_id: int
    top_terms: list[tuple[str, float]]
    prevalence: float
    tfn: TFN
    positivity: float
    negativity: float
    doc_count: int


@dataclass
class RunResult:
    reports: list[TopicReport]
    config: dict
    metadata: dict


def load_dist_matrix(path: str | Path) -> topics_mod.TopicDistribution:
    """Read a supplied topic-distribution matrix.

    CSV with a header row: first column ``post_id``, remaining columns one
    per topic. Every row must be a probability vector (non-negative,
    summing to 1 within 1e-9).
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty distribution matrix") from None
        if not header or header[0].strip() != "post_id":
            raise ValueError(f"{path}: first column must be named 'post_id'")
        k = len(header) - 1
        if k < 1:
            raise ValueError(f"{path}: no topic columns")

        ids: list[str] = []
        rows: list[list[float]] = []
        seen: set[str] = set()
        for row in reader:
            lineno = reader.line_num
            if not row:
                continue
            if len(row) != k + 1:
                raise ValueError(f"{path}, line {lineno}: expected {k + 1} columns, got {len(row)}")
            post_id = row[0].strip()
            if not post_id:
                raise ValueError(f"{path}, line {lineno}: empty post_id")
            if post_id in seen:
                raise ValueError(f"{path}, line {lineno}: duplicate post_id {post_id!r}")
            seen.add(post_id)
            try:
                values = [float(cell) for cell in row[1:]]
            except ValueError:
                raise ValueError(f"{path}, line {lineno}: non-numeric probability") from None
            if any(v < 0 for v in values):
                raise ValueError(f"{path}, line {lineno}: negative probability")
            if abs(sum(values) - 1.0) > 1e-9:
                raise ValueError(
                    f"{path}, line {lineno}: probabilities sum to {sum(values)!r}, expected 1"
                )
            ids.append(post_id)
            rows.append(values)

    return topics_mod.TopicDistribution(tuple(ids), np.array(rows).reshape(len(rows), k))


def run_pipeline(config: RunConfig) -> RunResult:
    """Execute the full pipeline and return prevalence-sorted topic reports.

    Errors raised by individual modules propagate as :class:`StageError`
    tagged with the stage name (config, corpus, sentiment, topics, fuzzy).
    """
    with _stage("config"):
        config.validate()

    with _stage("corpus"):
        posts = corpus_mod.load_posts(config.input_path, config.input_format)
        documents_in = len(posts)
        kept = corpus_mod.filter_short(posts, config.min_chars)
        if config.stopwords_path is not None:
            stopwords = corpus_mod.load_stopwords(config.stopwords_path)
        else:
            stopwords = corpus_mod.default_stopwords()
        docs = [corpus_mod.preprocess(p, stopwords) for p in kept]

    empty_ids = [d.post_id for d in docs if d.is_empty]
    live_docs = [d for d in docs if not d.is_empty]
    doc_by_id = {d.post_id: d for d in docs}
    post_by_id = {p.id: p for p in kept}
    all_ids = {p.id for p in posts}

    with _stage("sentiment"):
        if config.lexicon_path is not None:
            lexicon = sentiment_mod.load_lexicon(config.lexicon_path)
        else:
            lexicon = sentiment_mod.default_lexicon()
        scores = {
            p.id: sentiment_mod.resolve_polarity(p, doc_by_id[p.id], lexicon) for p in kept
        }

    fixture_mode = config.dist_matrix_path is not None
    excluded_ids: list[str] = []

    with _stage("topics"):
        if fixture_mode:
            full_dist = load_dist_matrix(config.dist_matrix_path)
            if config.n_topics is not None and config.n_topics != full_dist.k:
                raise ValueError(
                    f"configured topic count {config.n_topics} disagrees with the "
                    f"supplied matrix ({full_dist.k} columns)"
                )
            unknown = [i for i in full_dist.post_ids if i not in all_ids]
            if unknown:
                raise ValueError(f"distribution matrix references unknown post id {unknown[0]!r}")
            live_ids = {d.post_id for d in live_docs}
            keep_rows = [i for i, pid in enumerate(full_dist.post_ids) if pid in live_ids]
            covered = {full_dist.post_ids[i] for i in keep_rows}
            excluded_ids = [d.post_id for d in live_docs if d.post_id not in covered]
            dist = topics_mod.TopicDistribution(
                tuple(full_dist.post_ids[i] for i in keep_rows),
                full_dist.matrix[keep_rows, :].reshape(len(keep_rows), full_dist.k),
            )
            k = dist.k
            hard = dist.matrix.argmax(axis=1)
            doc_counts = [int((hard == kk).sum()) for kk in range(k)]
            top_terms: list[list[tuple[str, float]]] = [[] for _ in range(k)]
        else:
            k = config.n_topics
            if config.vectors_path is not None:
                loaded = topics_mod.load_vectors(config.vectors_path)
                unknown = [v.post_id for v in loaded if v.post_id not in all_ids]
                if unknown:
                    raise ValueError(f"vectors file references unknown post id {unknown[0]!r}")
                live_ids = {d.post_id for d in live_docs}
                vectors = [v for v in loaded if v.post_id in live_ids]
                covered = {v.post_id for v in vectors}
                excluded_ids = [d.post_id for d in live_docs if d.post_id not in covered]
            else:
                vectors = topics_mod.vectorize(live_docs)
            if not vectors:
                raise ValueError("no documents left for topic modeling")
            model = topics_mod.cluster(vectors, k, config.seed)
            grouped: list[list[corpus_mod.CleanDoc]] = [[] for _ in range(k)]
            for vec in vectors:
                grouped[model.cluster_of[vec.post_id]].append(doc_by_id[vec.post_id])
            model.top_terms = topics_mod.ctfidf_top_terms(grouped, config.n_terms)
            top_terms = model.top_terms
            dist = topics_mod.soft_assign(vectors, model, config.temperature)
            doc_counts = [
                sum(1 for c in model.cluster_of.values() if c == kk) for kk in range(k)
            ]

    with _stage("fuzzy"):
        prevalence = topics_mod.topic_prevalence(dist)
        polarities = [scores[pid].value for pid in dist.post_ids]
        post_weights = [post_by_id[pid].weight for pid in dist.post_ids]
        reports = []
        for kk in range(k):
            tfn, conf = aggregate_topic(
                polarities,
                dist.column(kk),
                post_weights,
                scale=config.scale,
                ramp=config.ramp,
            )
            reports.append(
                TopicReport(
                    topic_id=kk,
                    top_terms=list(top_terms[kk]),
                    prevalence=float(prevalence[kk]),
                    tfn=tfn,
                    positivity=conf.positivity,
                    negativity=conf.negativity,
                    doc_count=doc_counts[kk],
                )
            )
        reports.sort(key=lambda r: (-r.prevalence, r.topic_id))

    source_counts = {sentiment_mod.COMPUTED: 0, sentiment_mod.SUPPLIED: 0}
    for score in scores.values():
        source_counts[score.source] += 1

    metadata = {
        "mode": "fixture" if fixture_mode else "standard",
        "documents_in": documents_in,
        "filtered_short": documents_in - len(kept),
        "empty_after_cleaning": len(empty_ids),
        "excluded": len(excluded_ids),
        "contributing": sum(doc_counts),
        "empty_doc_ids": sorted(empty_ids),
        "excluded_doc_ids": sorted(excluded_ids),
        "polarity_sources": source_counts,
        "seed": config.seed,
    }
    return RunResult(reports=reports, config=config.echo(), metadata=metadata)


def _round6(value):
    if isinstance(value, float):
        return round(value, 6)
    if isinstance(value, dict):
        return {k: _round6(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round6(v) for v in value]
    return value


def _report_dict(report: TopicReport) -> dict:
    t = report.tfn
    return {
        "topic_id": report.topic_id,
        "top_terms": [[term, round(w, 6)] for term, w in report.top_terms],
        "prevalence": round(report.prevalence, 6),
        "tfn": {"a": round(t.a, 6), "m": round(t.m, 6), "b": round(t.b, 6)},
        "positivity": round(report.positivity, 6),
        "negativity": round(report.negativity, 6),
        "doc_count": report.doc_count,
        "support_exceeds_polarity_range": bool(t.a < -1.0 or t.b > 1.0),
    }


def emit_report(
    reports: Sequence[TopicReport],
    fmt: str,
    path: str | Path,
    config: dict | None = None,
    metadata: dict | None = None,
) -> Path:
    """Write the topic reports to ``path`` as JSON or CSV.

    The JSON document carries the config echo and run metadata alongside
    the topic array; the CSV holds one row per topic with fixed columns
    (topic_id, top_terms, prevalence, tfn_a, tfn_m, tfn_b, positivity,
    negativity). Numbers are serialized at 6 decimal places.
    """
    path = Path(path)
    if fmt == "json":
        document = {
            "config": _round6(config or {}),
            "metadata": _round6(metadata or {}),
            "topics": [_report_dict(r) for r in reports],
        }
        path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", "utf-8")
    elif fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["topic_id", "top_terms", "prevalence", "tfn_a", "tfn_m", "tfn_b",
                 "positivity", "negativity"]
            )
            for r in reports:
                writer.writerow(
                    [
                        r.topic_id,
                        ";".join(term for term, _ in r.top_terms),
                        f"{r.prevalence:.6f}",
                        f"{r.tfn.a:.6f}",
                        f"{r.tfn.m:.6f}",
                        f"{r.tfn.b:.6f}",
                        f"{r.positivity:.6f}",
                        f"{r.negativity:.6f}",
                    ]
                )
    else:
        raise ValueError(f"unknown report format {fmt!r} (expected 'json' or 'csv')")
    return path
