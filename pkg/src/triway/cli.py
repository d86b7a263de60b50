"""Command-line pipeline: extract -> train -> classify -> evaluate.

Configuration precedence is CLI flags over a key=value config file
(pointed to by ``TRIWAY_CONFIG``) over built-in defaults; the effective
configuration is printed at startup. All file outputs are written
atomically, so a failed run never leaves a partial artifact.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from . import features as feat
from .embeddings import EmbeddingError, load_embeddings
from .game import GameConfig, GameError, run_repetition, trace_to_json
from .info_table import build_table, group_classes, merge_equal_probability
from .jenks import fit_jenks
from .model import (TrainedModel, Verdict, classify, evaluate, model_from_json,
                    model_to_json)
from .rational import fraction_str, to_fraction
from .regions import RegionError, ThresholdPair, accuracy, coverage, trisect

CONFIG_ENV_VAR = "TRIWAY_CONFIG"


class CliError(Exception):
    """User-facing pipeline error; exits with status 2."""


@dataclass
class PipelineConfig:
    """Effective settings of one pipeline invocation.

    Defaults mirror the reference setup: 100-dim embeddings, five bins,
    a 100-word vocabulary, step 0.03, initial thresholds (1, 0).
    """

    embeddings: str | None = None
    dim: int = 100
    bins: int = 5
    vocab_size: int = 100
    step: str = "0.03"
    alpha0: str = "1"
    beta0: str = "0"
    max_rounds: int = 50
    annotations: str | None = None
    features: str | None = None
    meta: str | None = None
    model: str | None = None
    trace: str | None = None
    report: str | None = None

    def describe(self) -> str:
        lines = ["config:"]
        for f in fields(self):
            lines.append(f"  {f.name} = {getattr(self, f.name)}")
        return "\n".join(lines)


def _parse_config_file(path: Path) -> dict:
    if not path.is_file():
        raise CliError(f"config file not found: {path}")
    known = {f.name: f.type for f in fields(PipelineConfig)}
    values = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in known:
            raise CliError(f"{path}:{lineno}: unknown config key '{key}'")
        values[key] = value.strip()
    return values


def load_config(cli_values: dict) -> PipelineConfig:
    """Merge defaults, the TRIWAY_CONFIG file, and CLI flag values."""
    cfg = PipelineConfig()
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        for key, value in _parse_config_file(Path(env_path)).items():
            current = getattr(cfg, key)
            if isinstance(current, int) and not isinstance(current, bool):
                try:
                    value = int(value)
                except ValueError:
                    raise CliError(f"config key '{key}' expects an integer") from None
            setattr(cfg, key, value)
    updates = {k: v for k, v in cli_values.items() if v is not None}
    cfg = replace(cfg, **updates)
    return cfg


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require(value, name: str):
    if value is None:
        raise CliError(f"missing required setting: {name}")
    return value


def _require_file(path_str: str, what: str) -> Path:
    path = Path(path_str)
    if not path.is_file():
        raise CliError(f"{what} not found: {path}")
    return path


def _parse_threshold_setting(value, name: str) -> Fraction:
    try:
        return to_fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise CliError(f"invalid value for {name}: {value!r}") from None


def _meta_path(cfg: PipelineConfig) -> Path:
    if cfg.meta:
        return Path(cfg.meta)
    return Path(_require(cfg.features, "features")).with_suffix(".meta.json")


def _trace_path(cfg: PipelineConfig) -> Path:
    if cfg.trace:
        return Path(cfg.trace)
    return Path(_require(cfg.model, "model")).with_suffix(".trace.json")


# ---------------------------------------------------------------------------
# subcommands


def cmd_extract(cfg: PipelineConfig) -> int:
    annotations = _require_file(_require(cfg.annotations, "annotations"),
                                "annotation file")
    emb_path = _require_file(_require(cfg.embeddings, "embeddings"),
                             "embedding file")
    features_path = Path(_require(cfg.features, "features"))

    try:
        emb = load_embeddings(emb_path, cfg.dim)
    except EmbeddingError as exc:
        raise CliError(str(exc)) from None
    try:
        tweets = feat.read_annotations(annotations)
    except feat.AnnotationError as exc:
        raise CliError(str(exc)) from None
    if not tweets:
        raise CliError(f"no tweets found in {annotations}")

    legit = [t for t in tweets if t.label == 0]
    satire = [t for t in tweets if t.label == 1]
    try:
        vocab = feat.build_vocabulary(legit, satire, cfg.vocab_size)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    corpus_mean = feat.compute_corpus_mean(tweets, emb)
    records = feat.extract_features(tweets, emb, vocab, corpus_mean)

    _atomic_write(features_path, feat.features_csv_text(records))

    vocab_words = sorted(vocab.words)
    meta = {
        "dim": cfg.dim,
        "vocab_size": cfg.vocab_size,
        "vocabulary": {
            "k": vocab.k,
            "words": vocab_words,
            "scores": {w: vocab.scores.get(w) for w in vocab_words},
        },
        "corpus_mean": corpus_mean,
        "records": len(records),
        "s_np_fallbacks": sum(r.s_np_fallback for r in records),
        "s_qp_fallbacks": sum(r.s_qp_fallback for r in records),
    }
    _atomic_write(_meta_path(cfg), _dump_json(meta))

    print(f"extracted {len(records)} records -> {features_path}")
    print(f"s_np fallbacks: {meta['s_np_fallbacks']}, "
          f"s_qp fallbacks: {meta['s_qp_fallbacks']}")
    return 0


def cmd_train(cfg: PipelineConfig) -> int:
    features_path = _require_file(_require(cfg.features, "features"),
                                  "feature CSV")
    meta_path = _require_file(str(_meta_path(cfg)), "extraction meta file")
    model_path = Path(_require(cfg.model, "model"))

    try:
        records = feat.read_features_csv(features_path)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if len(records) < 2:
        raise CliError(f"training needs at least 2 records, got {len(records)}")
    meta = json.loads(meta_path.read_text(encoding="utf-8"))

    if cfg.bins < 1:
        raise CliError(f"bins must be >= 1, got {cfg.bins}")
    breaks_np = fit_jenks([r.s_np for r in records], cfg.bins)
    breaks_qp = fit_jenks([r.s_qp for r in records], cfg.bins)
    rows = build_table(records, breaks_np, breaks_qp)
    table = merge_equal_probability(group_classes(rows))

    try:
        game_cfg = GameConfig(
            step=_parse_threshold_setting(cfg.step, "step"),
            initial=ThresholdPair(
                _parse_threshold_setting(cfg.alpha0, "alpha0"),
                _parse_threshold_setting(cfg.beta0, "beta0"),
            ),
            max_rounds=cfg.max_rounds,
        )
    except (GameError, RegionError) as exc:
        raise CliError(str(exc)) from None
    thresholds, trace = run_repetition(table, game_cfg)

    vocab = feat.VocabularyScore(
        words=frozenset(meta["vocabulary"]["words"]),
        k=int(meta["vocabulary"]["k"]),
        scores=dict(meta["vocabulary"]["scores"]),
    )
    model = TrainedModel(
        breaks_np=breaks_np,
        breaks_qp=breaks_qp,
        vocab=vocab,
        corpus_mean=float(meta["corpus_mean"]),
        class_table=table,
        thresholds=thresholds,
    )
    _atomic_write(model_path, _dump_json(model_to_json(model)))
    _atomic_write(_trace_path(cfg), _dump_json(trace_to_json(trace)))

    tri = trisect(table, thresholds)
    try:
        acc = f"{float(accuracy(table, tri)):.4f}"
    except RegionError:
        acc = "undefined"
    cov = float(coverage(table, tri))
    print(f"final thresholds: {thresholds}")
    print(f"training accuracy: {acc}, coverage: {cov:.4f}")
    print(f"model -> {model_path}, trace -> {_trace_path(cfg)}")
    return 0


def _load_model(cfg: PipelineConfig) -> TrainedModel:
    model_path = _require_file(_require(cfg.model, "model"), "model file")
    try:
        return model_from_json(json.loads(model_path.read_text(encoding="utf-8")))
    except (KeyError, ValueError, RegionError) as exc:
        raise CliError(f"invalid model file {model_path}: {exc}") from None


def _load_features(cfg: PipelineConfig) -> list:
    features_path = _require_file(_require(cfg.features, "features"),
                                  "feature CSV")
    try:
        return feat.read_features_csv(features_path)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_classify(cfg: PipelineConfig, out_path: str | None) -> int:
    model = _load_model(cfg)
    records = _load_features(cfg)
    decisions = [(r.id, classify(model, r).verdict.value) for r in records]
    lines = ["id,decision"] + [f"{rid},{verdict}" for rid, verdict in decisions]
    text = "\n".join(lines) + "\n"
    if out_path:
        _atomic_write(Path(out_path), text)
        print(f"decisions -> {out_path}")
    else:
        sys.stdout.write(text)
    tallies = {v.value: 0 for v in Verdict}
    for _, verdict in decisions:
        tallies[verdict] += 1
    print(", ".join(f"{name}: {n}" for name, n in tallies.items()))
    return 0


def _report_rows(model: TrainedModel, records, pawlak: bool) -> list:
    rows = [("GTRS", evaluate(model, records))]
    if pawlak:
        pawlak_model = TrainedModel(
            breaks_np=model.breaks_np,
            breaks_qp=model.breaks_qp,
            vocab=model.vocab,
            corpus_mean=model.corpus_mean,
            class_table=model.class_table,
            thresholds=ThresholdPair(Fraction(1), Fraction(0)),
        )
        rows.append(("Pawlak", evaluate(pawlak_model, records)))
    return rows


def _render_report_text(rows) -> str:
    header = f"{'':8} {'(alpha, beta)':>16} {'accuracy':>10} {'coverage':>10} {'modified':>10}"
    lines = [header]
    for name, report in rows:
        acc = "-" if report.accuracy is None else f"{float(report.accuracy):.2%}"
        lines.append(
            f"{name:8} {str(report.thresholds):>16} {acc:>10} "
            f"{float(report.coverage):.2%}".rjust(0) +
            f" {float(report.modified):.2%}".rjust(0)
        )
    return "\n".join(lines) + "\n"


def cmd_evaluate(cfg: PipelineConfig, pawlak: bool, as_json: bool) -> int:
    model = _load_model(cfg)
    records = _load_features(cfg)
    rows = _report_rows(model, records, pawlak)
    if as_json:
        if pawlak:
            payload = {"gtrs": rows[0][1].to_json(), "pawlak": rows[1][1].to_json()}
        else:
            payload = rows[0][1].to_json()
        text = _dump_json(payload)
    else:
        text = _render_report_text(rows)
    sys.stdout.write(text)
    if cfg.report:
        _atomic_write(Path(cfg.report), text)
        print(f"report -> {cfg.report}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triway",
        description="Three-way satirical-tweet classification pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--annotations", help="annotation JSONL path")
        p.add_argument("--features", help="feature CSV path")
        p.add_argument("--meta", help="extraction meta JSON path")
        p.add_argument("--model", help="model JSON path")
        p.add_argument("--report", help="report output path")
        p.add_argument("--embeddings", help="embedding text file")
        p.add_argument("--dim", type=int, help="embedding dimensionality")
        p.add_argument("--bins", type=int, help="bins per discretized feature")
        p.add_argument("--vocab-size", type=int, dest="vocab_size",
                       help="vocabulary size for the word feature")
        p.add_argument("--step", help="per-round threshold step (decimal)")
        p.add_argument("--alpha0", help="initial acceptance threshold")
        p.add_argument("--beta0", help="initial rejection threshold")
        p.add_argument("--max-rounds", type=int, dest="max_rounds",
                       help="repetition-loop safeguard")
        p.add_argument("--trace", help="game trace JSON path")

    for name, doc in (
        ("extract", "compute feature CSV from annotated tweets"),
        ("train", "fit breaks, build the class table, learn thresholds"),
        ("classify", "apply a trained model to feature records"),
        ("evaluate", "report accuracy/coverage/modified accuracy"),
    ):
        p = sub.add_parser(name, help=doc)
        add_common(p)
        if name == "classify":
            p.add_argument("--decisions", help="decision CSV output path")
        if name == "evaluate":
            p.add_argument("--pawlak", action="store_true",
                           help="also report the (1, 0) special case")
            p.add_argument("--json", action="store_true", dest="as_json",
                           help="emit the report as JSON")
    return parser


_CONFIG_KEYS = [f.name for f in fields(PipelineConfig)]


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config({k: getattr(args, k, None) for k in _CONFIG_KEYS})
        print(cfg.describe())
        if args.command == "extract":
            return cmd_extract(cfg)
        if args.command == "train":
            return cmd_train(cfg)
        if args.command == "classify":
            return cmd_classify(cfg, args.decisions)
        if args.command == "evaluate":
            return cmd_evaluate(cfg, args.pawlak, args.as_json)
        raise CliError(f"unknown command: {args.command}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
