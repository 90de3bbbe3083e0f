"""Command line entry point."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .pipeline import RunConfig, StageError, emit_report, emit_tfn_svg, run_pipeline

_FLAG_KEYS = {
    "input", "format", "topics", "seed", "min-chars", "scale", "ramp", "temperature",
    "n-terms", "stopwords", "lexicon", "vectors", "dist-matrix", "out", "report",
    "svg", "svg-topics",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicmood",
        description="Aggregate per-topic social media sentiment into fuzzy numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute the full pipeline on a corpus file")
    run.add_argument("--config", help="key=value config file; explicit flags override it")
    run.add_argument("--input", help="posts file (jsonl or csv)")
    run.add_argument("--format", choices=["jsonl", "csv"], help="input format (default jsonl)")
    run.add_argument("--topics", type=int, help="number of topics K")
    run.add_argument("--seed", type=int, help="random seed (default 0)")
    run.add_argument("--min-chars", type=int, help="minimum raw text length (default 60)")
    run.add_argument("--scale", type=float, help="TFN support scaling constant (default 1.0)")
    run.add_argument("--ramp", type=float, help="opinion concept ramp endpoint (default 0.2)")
    run.add_argument("--temperature", type=float, help="soft assignment temperature (default 0.25)")
    run.add_argument("--n-terms", type=int, help="top terms per topic (default 7)")
    run.add_argument("--stopwords", help="stopword file (default: bundled English list)")
    run.add_argument("--lexicon", help="lexicon file (default: bundled miniature lexicon)")
    run.add_argument("--vectors", help="pre-computed document vectors (jsonl)")
    run.add_argument("--dist-matrix", help="supplied topic distribution CSV (fixture mode)")
    run.add_argument("--out", help="output directory (default ./out)")
    run.add_argument("--report", choices=["json", "csv"], help="report format (default json)")
    run.add_argument("--svg", action="store_true", default=None, help="also emit a TFN plot")
    run.add_argument("--svg-topics", help="comma-separated topic ids to plot (default: all)")
    return parser


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}, line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FLAG_KEYS:
            raise ValueError(f"{path}, line {lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_topic_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"not a comma-separated topic id list: {text!r}") from None


def _build_config(args: argparse.Namespace) -> RunConfig:
    file_values = _read_config_file(args.config) if args.config else {}

    def pick(flag: str, cast=str):
        cli_value = getattr(args, flag.replace("-", "_"))
        if cli_value is not None:
            return cli_value
        if flag in file_values:
            return cast(file_values[flag])
        return None

    input_path = pick("input")
    if input_path is None:
        raise ValueError("an input file is required (--input or config file)")

    cfg = RunConfig(input_path=input_path)
    if (v := pick("format")) is not None:
        cfg.input_format = v
    if (v := pick("topics", int)) is not None:
        cfg.n_topics = v
    if (v := pick("seed", int)) is not None:
        cfg.seed = v
    if (v := pick("min-chars", int)) is not None:
        cfg.min_chars = v
    if (v := pick("scale", float)) is not None:
        cfg.scale = v
    if (v := pick("ramp", float)) is not None:
        cfg.ramp = v
    if (v := pick("temperature", float)) is not None:
        cfg.temperature = v
    if (v := pick("n-terms", int)) is not None:
        cfg.n_terms = v
    if (v := pick("stopwords")) is not None:
        cfg.stopwords_path = v
    if (v := pick("lexicon")) is not None:
        cfg.lexicon_path = v
    if (v := pick("vectors")) is not None:
        cfg.vectors_path = v
    if (v := pick("dist-matrix")) is not None:
        cfg.dist_matrix_path = v
    if (v := pick("out")) is not None:
        cfg.out_dir = v
    if (v := pick("report")) is not None:
        cfg.report_format = v
    if (v := pick("svg", _parse_bool)) is not None:
        cfg.emit_svg = v
    if (v := pick("svg-topics", _parse_topic_list)) is not None:
        cfg.svg_topics = v if isinstance(v, tuple) else _parse_topic_list(v)
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        try:
            config = _build_config(args)
        except ValueError as exc:
            raise StageError("config", str(exc)) from exc

        result = run_pipeline(config)
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        report_path = out_dir / f"report.{config.report_format}"
        emit_report(
            result.reports, config.report_format, report_path,
            config=result.config, metadata=result.metadata,
        )
        print(f"wrote {report_path}")
        if config.emit_svg:
            svg_path = emit_tfn_svg(
                result.reports, out_dir / "tfns.svg", config.svg_topics, config.ramp
            )
            print(f"wrote {svg_path}")

        for r in result.reports:
            terms = ", ".join(term for term, _ in r.top_terms[:3]) or "-"
            print(
                f"topic {r.topic_id}: prevalence={r.prevalence:.3f} "
                f"pos={r.positivity:.3f} neg={r.negativity:.3f} [{terms}]"
            )
        return 0
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
