"""Semantic inconsistency features computed from annotated tweets.

Four features per tweet:

* ``s_np``   -- mean cosine similarity of adjacent word pairs inside leaf
  noun phrases; low values flag incongruous attribute/noun combinations.
* ``s_qp``   -- cosine similarity between the summed word vectors of the
  main clause and of its prepositional/relative sub-clause.
* ``c_nern`` -- categorical code comparing entity-vs-noun-phrase cosine
  similarity against the corpus mean (-1 when no entity resolves).
* ``b_voc``  -- whether any token belongs to the legitimate-news
  vocabulary selected by tf-idf difference.

Degenerate sentences (no usable word pairs, no clause split) fall back to
the neutral similarity 1.0, the weakest possible inconsistency signal.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .embeddings import EmbeddingTable, cosine

NEUTRAL_SIMILARITY = 1.0


class AnnotationError(ValueError):
    """Annotated tweet violates the input schema."""


@dataclass(frozen=True)
class AnnotatedTweet:
    """A tokenized tweet with noun-phrase, clause, and entity spans.

    Spans are lists of token indices; ``leaf_nps`` spans must not nest,
    and the two ``clause_split`` spans must be disjoint.
    """

    id: str
    tokens: tuple
    label: int
    source: str = ""
    leaf_nps: tuple = ()
    clause_split: tuple | None = None  # (main_span, sub_span)
    entities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "leaf_nps", tuple(tuple(s) for s in self.leaf_nps))
        object.__setattr__(self, "entities", tuple(tuple(s) for s in self.entities))
        if self.clause_split is not None:
            main, sub = self.clause_split
            object.__setattr__(self, "clause_split", (tuple(main), tuple(sub)))
        self._validate()

    def _validate(self):
        if self.label not in (0, 1):
            raise AnnotationError(f"tweet {self.id}: label must be 0 or 1")
        n = len(self.tokens)
        spans = list(self.leaf_nps) + list(self.entities)
        if self.clause_split is not None:
            spans.extend(self.clause_split)
        for span in spans:
            for i in span:
                if not 0 <= i < n:
                    raise AnnotationError(
                        f"tweet {self.id}: span index {i} out of range (0..{n - 1})"
                    )
        nps = [set(s) for s in self.leaf_nps]
        for i, a in enumerate(nps):
            for b in nps[i + 1:]:
                if a <= b or b <= a:
                    raise AnnotationError(f"tweet {self.id}: nested leaf NP spans")
        if self.clause_split is not None:
            main, sub = self.clause_split
            if set(main) & set(sub):
                raise AnnotationError(f"tweet {self.id}: clause spans overlap")


@dataclass(frozen=True)
class FeatureRecord:
    """The four features of one tweet, plus its label.

    ``s_np_fallback``/``s_qp_fallback`` mark records where the neutral
    value was substituted for an undefined similarity.
    """

    id: str
    s_np: float
    s_qp: float
    c_nern: int
    b_voc: int
    label: int
    s_np_fallback: bool = False
    s_qp_fallback: bool = False


@dataclass(frozen=True)
class VocabularyScore:
    """Top-k legitimate-news words by tf-idf difference.

    ``scores`` keeps the per-word tf-idf difference of every scored word
    for auditing; ``words`` is the selected set.
    """

    words: frozenset
    k: int
    scores: dict = field(default_factory=dict)


def _vector_for_pair(tweet: AnnotatedTweet, index: int, emb: EmbeddingTable):
    vec = emb.lookup(tweet.tokens[index])
    # A stored all-zero vector would break cosine; treat it like OOV.
    if vec is None or not np.any(vec):
        return None
    return vec


def _np_pair_cosines(tweet: AnnotatedTweet, emb: EmbeddingTable) -> list:
    """Cosines of all adjacent in-vocabulary token pairs inside leaf NPs."""
    sims = []
    for span in tweet.leaf_nps:
        for a, b in zip(span, span[1:]):
            va = _vector_for_pair(tweet, a, emb)
            vb = _vector_for_pair(tweet, b, emb)
            if va is None or vb is None:
                continue
            sims.append(cosine(va, vb))
    return sims


def _sum_span_vectors(tweet: AnnotatedTweet, indices, emb: EmbeddingTable):
    """Sum of in-vocabulary vectors at ``indices``; None if empty or zero."""
    total = None
    for i in indices:
        vec = emb.lookup(tweet.tokens[i])
        if vec is None:
            continue
        total = vec.copy() if total is None else total + vec
    if total is None or not np.any(total):
        return None
    return total


def compute_s_np(tweet: AnnotatedTweet, emb: EmbeddingTable) -> float:
    """Mean cosine over adjacent leaf-NP word pairs; 1.0 when no pair resolves."""
    sims = _np_pair_cosines(tweet, emb)
    if not sims:
        return NEUTRAL_SIMILARITY
    return sum(sims) / len(sims)


def compute_s_qp(tweet: AnnotatedTweet, emb: EmbeddingTable) -> float:
    """Cosine between summed main-clause and sub-clause vectors; 1.0 fallback."""
    if tweet.clause_split is None:
        return NEUTRAL_SIMILARITY
    main, sub = tweet.clause_split
    u = _sum_span_vectors(tweet, main, emb)
    v = _sum_span_vectors(tweet, sub, emb)
    if u is None or v is None:
        return NEUTRAL_SIMILARITY
    return cosine(u, v)


def compute_s_nern(tweet: AnnotatedTweet, emb: EmbeddingTable) -> float | None:
    """Cosine between entity vectors and non-entity leaf-NP vectors.

    Returns None when no named entity resolves to a vector, or when
    excluding entity tokens leaves no usable noun-phrase token.
    """
    if not tweet.entities:
        return None
    entity_indices = {i for span in tweet.entities for i in span}
    ent = _sum_span_vectors(tweet, sorted(entity_indices), emb)
    if ent is None:
        return None
    np_indices = [i for span in tweet.leaf_nps for i in span if i not in entity_indices]
    if not np_indices:
        return None
    phrases = _sum_span_vectors(tweet, np_indices, emb)
    if phrases is None:
        return None
    return cosine(ent, phrases)


def binarize_c_nern(s_nern: float | None, corpus_mean: float) -> int:
    """Map an entity similarity to {-1, 0, 1} against the corpus mean."""
    if s_nern is None:
        return -1
    return 1 if s_nern >= corpus_mean else 0


def compute_corpus_mean(tweets, emb: EmbeddingTable) -> float:
    """Mean of the entity similarities that are present across ``tweets``.

    Returns 0.0 when no tweet yields a value (every record then codes as
    -1 regardless, so the mean is moot).
    """
    values = []
    for tweet in tweets:
        s = compute_s_nern(tweet, emb)
        if s is not None:
            values.append(s)
    if not values:
        return 0.0
    return sum(values) / len(values)


def build_vocabulary(legit_tweets, satire_tweets, k: int) -> VocabularyScore:
    """Select the k words with the highest legit-minus-satire tf-idf score.

    tf(w, corpus) is the raw count of w over the corpus token total;
    idf(w) = ln(N / (1 + df(w))) with N the combined tweet count and
    df(w) the number of tweets containing w. Ties break lexicographically.
    """
    if k <= 0:
        raise ValueError(f"vocabulary size must be positive, got {k}")
    if not legit_tweets or not satire_tweets:
        raise ValueError("both corpora must be non-empty to build a vocabulary")

    def corpus_counts(tweets):
        counts = Counter()
        for t in tweets:
            counts.update(tok.lower() for tok in t.tokens)
        return counts, sum(counts.values())

    legit_tf, legit_total = corpus_counts(legit_tweets)
    satire_tf, satire_total = corpus_counts(satire_tweets)
    if legit_total == 0 or satire_total == 0:
        raise ValueError("both corpora must contain at least one token")

    df = Counter()
    n_tweets = len(legit_tweets) + len(satire_tweets)
    for t in list(legit_tweets) + list(satire_tweets):
        df.update({tok.lower() for tok in t.tokens})

    scores = {}
    for word in set(legit_tf) | set(satire_tf):
        idf = math.log(n_tweets / (1 + df[word]))
        scores[word] = (legit_tf[word] / legit_total) * idf - (
            satire_tf[word] / satire_total
        ) * idf

    ranked = sorted(scores, key=lambda w: (-scores[w], w))
    selected = frozenset(ranked[:k])
    return VocabularyScore(words=selected, k=k, scores=scores)


def compute_b_voc(tweet: AnnotatedTweet, vocab: VocabularyScore) -> int:
    """1 if any lowercased token belongs to the vocabulary, else 0."""
    return int(any(tok.lower() in vocab.words for tok in tweet.tokens))


def extract_features(tweets, emb: EmbeddingTable, vocab: VocabularyScore,
                     corpus_mean: float) -> list:
    """One :class:`FeatureRecord` per tweet; deterministic, never raises
    on degenerate sentences (the neutral fallbacks absorb them)."""
    records = []
    for tweet in tweets:
        np_sims = _np_pair_cosines(tweet, emb)
        if np_sims:
            s_np, np_fb = sum(np_sims) / len(np_sims), False
        else:
            s_np, np_fb = NEUTRAL_SIMILARITY, True
        s_qp = compute_s_qp(tweet, emb)
        qp_fb = False
        if tweet.clause_split is None:
            qp_fb = True
        else:
            main, sub = tweet.clause_split
            if (_sum_span_vectors(tweet, main, emb) is None
                    or _sum_span_vectors(tweet, sub, emb) is None):
                qp_fb = True
        records.append(FeatureRecord(
            id=tweet.id,
            s_np=s_np,
            s_qp=s_qp,
            c_nern=binarize_c_nern(compute_s_nern(tweet, emb), corpus_mean),
            b_voc=compute_b_voc(tweet, vocab),
            label=tweet.label,
            s_np_fallback=np_fb,
            s_qp_fallback=qp_fb,
        ))
    return records


# ---------------------------------------------------------------------------
# file formats


def read_annotations(path) -> list:
    """Parse an annotation JSONL file into :class:`AnnotatedTweet` objects."""
    tweets = []
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise AnnotationError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            try:
                split = obj.get("clause_split")
                tweets.append(AnnotatedTweet(
                    id=str(obj["id"]),
                    tokens=obj["tokens"],
                    label=int(obj["label"]),
                    source=str(obj.get("source", "")),
                    leaf_nps=obj.get("leaf_nps", []),
                    clause_split=None if split is None else (split["main"], split["sub"]),
                    entities=obj.get("entities", []),
                ))
            except (KeyError, TypeError, AnnotationError) as exc:
                raise AnnotationError(f"{path}:{lineno}: {exc}") from None
    return tweets


FEATURE_CSV_HEADER = ["id", "s_np", "s_qp", "c_nern", "b_voc", "label"]


def features_csv_text(records) -> str:
    """Feature records as CSV text; floats carry 6 decimal places."""
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FEATURE_CSV_HEADER)
    for r in records:
        writer.writerow([
            r.id, f"{r.s_np:.6f}", f"{r.s_qp:.6f}",
            r.c_nern, r.b_voc, r.label,
        ])
    return buffer.getvalue()


def write_features_csv(records, path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        fh.write(features_csv_text(records))


def read_features_csv(path) -> list:
    """Read a feature CSV produced by :func:`write_features_csv`."""
    records = []
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != FEATURE_CSV_HEADER:
            raise ValueError(
                f"{path}: unexpected feature CSV header {reader.fieldnames}"
            )
        for row in reader:
            records.append(FeatureRecord(
                id=row["id"],
                s_np=float(row["s_np"]),
                s_qp=float(row["s_qp"]),
                c_nern=int(row["c_nern"]),
                b_voc=int(row["b_voc"]),
                label=int(row["label"]),
            ))
    return records
