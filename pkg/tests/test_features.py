import math

import pytest

from triway import (AnnotatedTweet, AnnotationError, EmbeddingTable,
                    VocabularyScore, binarize_c_nern, build_vocabulary,
                    compute_b_voc, compute_corpus_mean, compute_s_nern,
                    compute_s_np, compute_s_qp, extract_features,
                    read_annotations, read_features_csv, write_features_csv)

import numpy as np


def emb(**vectors):
    return EmbeddingTable(
        dim=len(next(iter(vectors.values()))),
        entries={k: np.array(v, dtype=float) for k, v in vectors.items()},
    )


def tweet(tokens, nps=(), clause=None, entities=(), label=0, id="t"):
    return AnnotatedTweet(id=id, tokens=tokens, label=label, source="x",
                          leaf_nps=nps, clause_split=clause, entities=entities)


# --- s_np ------------------------------------------------------------------

def test_s_np_identical_adjacent_words():
    e = emb(cat=(1, 0))
    assert compute_s_np(tweet(["cat", "cat"], nps=[[0, 1]]), e) == 1.0


def test_s_np_orthogonal_pair():
    e = emb(a=(1, 0), b=(0, 1))
    assert compute_s_np(tweet(["a", "b"], nps=[[0, 1]]), e) == 0.0


def test_s_np_two_phrases_hand_arithmetic():
    # pairs (a,b) and (b,c): cos=0 and cos((0,1),(1,1)) = 1/sqrt(2)
    expected = (0.0 + 1 / math.sqrt(2)) / 2
    e = emb(a=(1, 0), b=(0, 1), c=(1, 1))
    t = tweet(["a", "b", "b", "c"], nps=[[0, 1], [2, 3]])
    assert compute_s_np(t, e) == pytest.approx(expected, abs=1e-12)


def test_s_np_no_pairs_falls_back_neutral():
    e = emb(a=(1, 0))
    assert compute_s_np(tweet(["a"], nps=[[0]]), e) == 1.0
    assert compute_s_np(tweet(["a", "b"], nps=[]), e) == 1.0


def test_s_np_oov_pairs_skipped():
    # (a, zz) has an OOV member; only (a, b) counts
    e = emb(a=(1, 0), b=(1, 0))
    t = tweet(["a", "zz", "a", "b"], nps=[[0, 1], [2, 3]])
    assert compute_s_np(t, e) == 1.0


def test_s_np_order_of_phrases_irrelevant():
    e = emb(a=(1, 0), b=(0, 1), c=(1, 1))
    t1 = tweet(["a", "b", "b", "c"], nps=[[0, 1], [2, 3]])
    t2 = tweet(["a", "b", "b", "c"], nps=[[2, 3], [0, 1]])
    assert compute_s_np(t1, e) == compute_s_np(t2, e)


# --- s_qp ------------------------------------------------------------------

def test_s_qp_identical_sums():
    e = emb(x=(2, 3))
    t = tweet(["x", "by", "x"], nps=[], clause=([0], [2]))
    assert compute_s_qp(t, e) == 1.0


def test_s_qp_hand_summed_clauses():
    e = emb(a=(1, 0), b=(0, 1), c=(1, 1))
    t = tweet(["a", "b", "of", "c"], nps=[], clause=([0, 1], [3]))
    assert compute_s_qp(t, e) == pytest.approx(1.0, abs=1e-12)


def test_s_qp_opposite_vectors():
    e = emb(a=(1, 0), b=(-1, 0))
    t = tweet(["a", "b"], nps=[], clause=([0], [1]))
    assert compute_s_qp(t, e) == -1.0


def test_s_qp_missing_split_neutral():
    e = emb(a=(1, 0))
    assert compute_s_qp(tweet(["a"], nps=[]), e) == 1.0


def test_s_qp_zero_sum_neutral():
    e = emb(a=(1, 0), b=(-1, 0), c=(0, 1))
    t = tweet(["a", "b", "c"], nps=[], clause=([0, 1], [2]))
    assert compute_s_qp(t, e) == 1.0


def test_s_qp_all_oov_side_neutral():
    e = emb(a=(1, 0))
    t = tweet(["a", "zz"], nps=[], clause=([0], [1]))
    assert compute_s_qp(t, e) == 1.0


# --- s_nern / c_nern -------------------------------------------------------

def test_s_nern_absent_without_entities():
    e = emb(x=(1, 1))
    assert compute_s_nern(tweet(["x"], nps=[[0]]), e) is None


def test_s_nern_entity_vs_phrase_copies():
    e = emb(x=(1, 1))
    t = tweet(["x", "x"], nps=[[1]], entities=[[0]])
    assert compute_s_nern(t, e) == pytest.approx(1.0, abs=1e-9)


def test_s_nern_orthogonal():
    e = emb(a=(1, 0), b=(0, 1))
    t = tweet(["a", "b"], nps=[[1]], entities=[[0]])
    assert compute_s_nern(t, e) == 0.0


def test_s_nern_entity_tokens_excluded_from_phrases():
    # the NP is exactly the entity; exclusion leaves nothing
    e = emb(a=(1, 0))
    t = tweet(["a"], nps=[[0]], entities=[[0]])
    assert compute_s_nern(t, e) is None


def test_s_nern_oov_entity_absent():
    e = emb(b=(1, 0))
    t = tweet(["zz", "b"], nps=[[1]], entities=[[0]])
    assert compute_s_nern(t, e) is None


@pytest.mark.parametrize("value, mean, expected", [
    (None, 0.3, -1),
    (0.2, 0.3, 0),
    (0.3, 0.3, 1),
])
def test_binarize_c_nern(value, mean, expected):
    assert binarize_c_nern(value, mean) == expected


def test_corpus_mean_over_present_values_only():
    e = emb(a=(1, 0), b=(0, 1), c=(1, 0))
    with_entity = tweet(["a", "c"], nps=[[1]], entities=[[0]])  # s = 1.0
    without = tweet(["b"], nps=[[0]])
    assert compute_corpus_mean([with_entity, without], e) == 1.0
    assert compute_corpus_mean([without], e) == 0.0


# --- vocabulary / b_voc ----------------------------------------------------

def test_build_vocabulary_spec_example():
    legit = [tweet(["senate", "bill"], label=0)]
    satire = [tweet(["zombie"], label=1)]
    # all idf terms are ln(2/2) = 0 here, so every score is 0 and the
    # lexicographic tie-break decides
    vocab = build_vocabulary(legit, satire, 1)
    assert vocab.words == frozenset(["bill"])
    assert all(s == 0.0 for s in vocab.scores.values())


def test_build_vocabulary_prefers_legit_heavy_words():
    legit = [tweet(["senate", "vote"], label=0), tweet(["senate", "tax"], label=0),
             tweet(["court"], label=0)]
    satire = [tweet(["zombie", "moon"], label=1), tweet(["zombie"], label=1)]
    vocab = build_vocabulary(legit, satire, 2)
    assert "senate" in vocab.words
    assert "zombie" not in vocab.words
    assert vocab.scores["zombie"] < 0


def test_build_vocabulary_saturates_when_k_exceeds_words():
    legit = [tweet(["senate", "bill"], label=0)]
    satire = [tweet(["zombie"], label=1)]
    vocab = build_vocabulary(legit, satire, 50)
    assert vocab.words == frozenset(["senate", "bill", "zombie"])


def test_build_vocabulary_identical_corpora_lexicographic():
    legit = [tweet(["b", "a", "c"], label=0)]
    satire = [tweet(["b", "a", "c"], label=1)]
    vocab = build_vocabulary(legit, satire, 2)
    assert vocab.words == frozenset(["a", "b"])


def test_build_vocabulary_rejects_bad_k():
    legit = [tweet(["a"], label=0)]
    satire = [tweet(["b"], label=1)]
    with pytest.raises(ValueError):
        build_vocabulary(legit, satire, 0)


def test_build_vocabulary_rejects_empty_corpus():
    with pytest.raises(ValueError):
        build_vocabulary([], [tweet(["a"], label=1)], 1)


def test_b_voc_membership():
    vocab = VocabularyScore(words=frozenset(["senate"]), k=1)
    assert compute_b_voc(tweet(["Senate", "x"]), vocab) == 1
    assert compute_b_voc(tweet(["x"]), vocab) == 0
    assert compute_b_voc(tweet([]), vocab) == 0


def test_b_voc_monotone_under_vocab_growth():
    small = VocabularyScore(words=frozenset(["a"]), k=1)
    grown = VocabularyScore(words=frozenset(["a", "b"]), k=2)
    for tokens in (["a"], ["b"], ["c"], ["a", "b"]):
        t = tweet(tokens)
        assert compute_b_voc(t, grown) >= compute_b_voc(t, small)


# --- extract_features ------------------------------------------------------

def test_extract_features_deterministic():
    e = emb(a=(1, 0), b=(0, 1), c=(1, 1))
    tweets = [tweet(["a", "b"], nps=[[0, 1]], label=1, id="x")]
    vocab = VocabularyScore(words=frozenset(["a"]), k=1)
    r1 = extract_features(tweets, e, vocab, 0.5)
    r2 = extract_features(tweets, e, vocab, 0.5)
    assert r1 == r2


def test_extract_features_no_entity_codes_minus_one():
    e = emb(a=(1, 0))
    records = extract_features([tweet(["a"], nps=[[0]])], e,
                               VocabularyScore(frozenset(), 1), 0.0)
    assert records[0].c_nern == -1


def test_extract_features_carries_np_value():
    expected = (0.0 + 1 / math.sqrt(2)) / 2
    e = emb(a=(1, 0), b=(0, 1), c=(1, 1))
    t = tweet(["a", "b", "b", "c"], nps=[[0, 1], [2, 3]], label=1)
    record = extract_features([t], e, VocabularyScore(frozenset(), 1), 0.0)[0]
    assert record.s_np == pytest.approx(expected, abs=1e-12)
    assert not record.s_np_fallback


def test_extract_features_all_oov_still_produces_record():
    e = emb(q=(1, 0))
    t = tweet(["zz", "yy"], nps=[[0, 1]], clause=([0], [1]), label=1)
    vocab = VocabularyScore(words=frozenset(["zz"]), k=1)
    record = extract_features([t], e, vocab, 0.0)[0]
    assert record.s_np == 1.0 and record.s_qp == 1.0
    assert record.c_nern == -1
    assert record.b_voc == 1
    assert record.s_np_fallback and record.s_qp_fallback


# --- schema validation and file formats -------------------------------------

def test_tweet_rejects_out_of_range_span():
    with pytest.raises(AnnotationError, match="out of range"):
        tweet(["a"], nps=[[0, 1]])


def test_tweet_rejects_nested_leaf_nps():
    with pytest.raises(AnnotationError, match="nested"):
        tweet(["a", "b", "c"], nps=[[0, 1, 2], [1, 2]])


def test_tweet_rejects_overlapping_clauses():
    with pytest.raises(AnnotationError, match="overlap"):
        tweet(["a", "b"], clause=([0, 1], [1]))


def test_tweet_rejects_bad_label():
    with pytest.raises(AnnotationError, match="label"):
        tweet(["a"], label=2)


def test_read_annotations_fixture(tweets_path):
    tweets = read_annotations(tweets_path)
    assert len(tweets) == 20
    assert sum(t.label for t in tweets) == 10
    by_id = {t.id: t for t in tweets}
    assert by_id["wd01"].clause_split == ((0, 1, 2, 3), (5,))
    assert by_id["wd02"].entities == ((0,),)


def test_read_annotations_rejects_bad_json(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"id": "x", "tokens": ["a"], "label": 1}\nnot json\n')
    with pytest.raises(AnnotationError, match="2"):
        read_annotations(path)


def test_features_csv_roundtrip(tmp_path):
    e = emb(a=(1, 0), b=(0, 1))
    t = tweet(["a", "b"], nps=[[0, 1]], label=1, id="r1")
    records = extract_features([t], e, VocabularyScore(frozenset(["a"]), 1), 0.0)
    path = tmp_path / "f.csv"
    write_features_csv(records, path)
    back = read_features_csv(path)
    assert back[0].id == "r1"
    assert back[0].s_np == 0.0
    assert back[0].b_voc == 1 and back[0].label == 1


def test_features_csv_formats_six_decimals(tmp_path):
    e = emb(a=(1, 0), b=(0, 1), c=(1, 1))
    t = tweet(["a", "b", "b", "c"], nps=[[0, 1], [2, 3]], label=0, id="r1")
    path = tmp_path / "f.csv"
    write_features_csv(extract_features([t], e, VocabularyScore(frozenset(), 1), 0.0), path)
    line = path.read_text().splitlines()[1]
    assert line == "r1,0.353553,1.000000,-1,0,0"


def test_read_features_csv_rejects_wrong_header(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("id,s_np\nx,1\n")
    with pytest.raises(ValueError, match="header"):
        read_features_csv(path)
