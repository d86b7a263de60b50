"""Trained three-way classifier: region lookup, evaluation, serialization.

A trained model freezes everything inference needs: the two fitted break
sets, the vocabulary, the entity-similarity corpus mean, the equivalence
class table, and the learned thresholds. Records map to Satirical,
Legitimate, or Deferred by their attribute tuple's region; attribute
combinations never seen in training defer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .features import FeatureRecord, VocabularyScore
from .info_table import (EquivalenceClassTable, table_from_json, table_to_json)
from .jenks import JenksBreaks, assign_bin
from .rational import fraction_str, to_fraction
from .regions import ThresholdPair, trisect


class Verdict(str, Enum):
    SATIRICAL = "Satirical"
    LEGITIMATE = "Legitimate"
    DEFERRED = "Deferred"


@dataclass(frozen=True)
class Decision:
    """Classification outcome plus the matched attribute key, if any."""

    verdict: Verdict
    matched_class: tuple | None


def region_map(table: EquivalenceClassTable, thresholds: ThresholdPair) -> dict:
    """Attribute key -> verdict at the given thresholds."""
    tri = trisect(table, thresholds)
    regions: dict[tuple, Verdict] = {}
    for i, cls in enumerate(table.classes):
        if i in tri.pos:
            verdict = Verdict.SATIRICAL
        elif i in tri.neg:
            verdict = Verdict.LEGITIMATE
        else:
            verdict = Verdict.DEFERRED
        for key in cls.keys:
            regions[key] = verdict
    return regions


@dataclass(frozen=True)
class TrainedModel:
    breaks_np: JenksBreaks
    breaks_qp: JenksBreaks
    vocab: VocabularyScore
    corpus_mean: float
    class_table: EquivalenceClassTable
    thresholds: ThresholdPair
    regions: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.regions:
            object.__setattr__(
                self, "regions", region_map(self.class_table, self.thresholds)
            )

    def attribute_key(self, record: FeatureRecord) -> tuple:
        return (
            assign_bin(self.breaks_np, record.s_np),
            assign_bin(self.breaks_qp, record.s_qp),
            record.c_nern,
            record.b_voc,
        )


def classify(model: TrainedModel, record: FeatureRecord) -> Decision:
    """Three-way decision for one record; unseen attribute tuples defer."""
    key = model.attribute_key(record)
    verdict = model.regions.get(key)
    if verdict is None:
        return Decision(verdict=Verdict.DEFERRED, matched_class=None)
    return Decision(verdict=verdict, matched_class=key)


def modified_accuracy(acc, cov):
    """Accuracy with random guessing imputed on the deferral share."""
    return acc * cov + Fraction(1, 2) * (1 - cov)


@dataclass(frozen=True)
class Report:
    """Evaluation summary; accuracy is None when nothing was decided."""

    thresholds: ThresholdPair
    accuracy: Fraction | None
    coverage: Fraction
    modified: Fraction
    counts: dict  # pos / neg / bnd / unseen record counts

    def to_json(self) -> dict:
        return {
            "alpha": float(self.thresholds.alpha),
            "beta": float(self.thresholds.beta),
            "accuracy": None if self.accuracy is None else float(self.accuracy),
            "coverage": float(self.coverage),
            "modified_accuracy": float(self.modified),
            "counts": dict(self.counts),
        }


def evaluate(model: TrainedModel, records) -> Report:
    """Classify ``records`` and report accuracy, coverage, and the
    deferral-adjusted modified accuracy, all in exact arithmetic."""
    if not records:
        raise ValueError("cannot evaluate zero records")
    counts = {"pos": 0, "neg": 0, "bnd": 0, "unseen": 0}
    decided = 0
    correct = 0
    for record in records:
        decision = classify(model, record)
        if decision.matched_class is None:
            counts["unseen"] += 1
            continue
        if decision.verdict is Verdict.SATIRICAL:
            counts["pos"] += 1
            decided += 1
            correct += int(record.label == 1)
        elif decision.verdict is Verdict.LEGITIMATE:
            counts["neg"] += 1
            decided += 1
            correct += int(record.label == 0)
        else:
            counts["bnd"] += 1
    cov = Fraction(decided, len(records))
    if decided == 0:
        return Report(
            thresholds=model.thresholds, accuracy=None, coverage=cov,
            modified=Fraction(1, 2), counts=counts,
        )
    acc = Fraction(correct, decided)
    return Report(
        thresholds=model.thresholds, accuracy=acc, coverage=cov,
        modified=modified_accuracy(acc, cov), counts=counts,
    )


# ---------------------------------------------------------------------------
# model file format


def _breaks_to_json(b: JenksBreaks) -> dict:
    return {
        "k": b.k,
        "breaks": list(b.breaks),
        "min": b.data_min,
        "max": b.data_max,
    }


def _breaks_from_json(obj: dict) -> JenksBreaks:
    return JenksBreaks(
        k=int(obj["k"]),
        breaks=tuple(float(x) for x in obj["breaks"]),
        data_min=float(obj["min"]),
        data_max=float(obj["max"]),
    )


def model_to_json(model: TrainedModel) -> dict:
    """Serializable form; regions are recomputed on load from the exact
    threshold strings, so they are not stored."""
    vocab_words = sorted(model.vocab.words)
    table = table_to_json(model.class_table)
    return {
        "breaks_np": _breaks_to_json(model.breaks_np),
        "breaks_qp": _breaks_to_json(model.breaks_qp),
        "vocabulary": {
            "k": model.vocab.k,
            "words": vocab_words,
            "scores": {w: model.vocab.scores.get(w) for w in vocab_words},
        },
        "corpus_mean": model.corpus_mean,
        "universe": table["universe"],
        "classes": table["classes"],
        "thresholds": {
            "alpha": fraction_str(model.thresholds.alpha),
            "beta": fraction_str(model.thresholds.beta),
        },
    }


def model_from_json(obj: dict) -> TrainedModel:
    vocab = VocabularyScore(
        words=frozenset(obj["vocabulary"]["words"]),
        k=int(obj["vocabulary"]["k"]),
        scores={w: s for w, s in obj["vocabulary"]["scores"].items()},
    )
    thresholds = ThresholdPair(
        to_fraction(obj["thresholds"]["alpha"]),
        to_fraction(obj["thresholds"]["beta"]),
    )
    return TrainedModel(
        breaks_np=_breaks_from_json(obj["breaks_np"]),
        breaks_qp=_breaks_from_json(obj["breaks_qp"]),
        vocab=vocab,
        corpus_mean=float(obj["corpus_mean"]),
        class_table=table_from_json(
            {"universe": obj["universe"], "classes": obj["classes"]}
        ),
        thresholds=thresholds,
    )
