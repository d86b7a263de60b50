"""Walk through the four semantic-inconsistency features on two tweets.

Run from the repository root:

    python demos/01_semantic_features.py
"""

from pathlib import Path

from triway import (AnnotatedTweet, binarize_c_nern, build_vocabulary,
                    compute_b_voc, compute_corpus_mean, compute_s_nern,
                    compute_s_np, compute_s_qp, load_embeddings,
                    read_annotations)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

emb = load_embeddings(FIXTURES / "toy_embeddings_10d.txt", expected_dim=10)
tweets = read_annotations(FIXTURES / "tweets20.jsonl")
by_id = {t.id: t for t in tweets}

legit = [t for t in tweets if t.label == 0]
satire = [t for t in tweets if t.label == 1]
vocab = build_vocabulary(legit, satire, k=8)
mean = compute_corpus_mean(tweets, emb)

print(f"legitimate-vocabulary (top 8 by tf-idf difference): {sorted(vocab.words)}")
print(f"corpus mean entity similarity: {mean:.4f}\n")

for tid in ("wd01", "pp01"):
    tweet: AnnotatedTweet = by_id[tid]
    kind = "satirical" if tweet.label else "legitimate"
    print(f"{tid} ({kind}): {' '.join(tweet.tokens)}")
    print(f"  noun-phrase pair similarity  s_np = {compute_s_np(tweet, emb):+.4f}")
    print(f"  clause-pair similarity       s_qp = {compute_s_qp(tweet, emb):+.4f}")
    s_nern = compute_s_nern(tweet, emb)
    shown = "absent" if s_nern is None else f"{s_nern:+.4f}"
    code = binarize_c_nern(s_nern, mean)
    print(f"  entity-vs-phrase similarity       = {shown} -> c_nern = {code}")
    print(f"  vocabulary membership       b_voc = {compute_b_voc(tweet, vocab)}")
    print()

print("Lower s_np / s_qp mean stronger inconsistency; satirical tweets tend")
print("to combine words that rarely co-occur, pulling the cosines down.")
