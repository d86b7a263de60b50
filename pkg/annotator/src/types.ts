export type RawTweet = {
  id: string;
  text: string;
  label: 0 | 1;
  source: string;
};

export type ClauseSplit = {
  main: number[];
  sub: number[];
};

/** One line of the annotation JSONL consumed by the classifier pipeline. */
export type AnnotatedTweet = {
  id: string;
  tokens: string[];
  label: 0 | 1;
  source: string;
  leaf_nps: number[][];
  clause_split: ClauseSplit | null;
  entities: number[][];
};

/**
 * Check the downstream schema invariants. Returns a list of violations,
 * empty when the tweet is valid.
 */
export function schemaViolations(tweet: AnnotatedTweet): string[] {
  const problems: string[] = [];
  const n = tweet.tokens.length;
  if (tweet.label !== 0 && tweet.label !== 1) {
    problems.push(`label must be 0 or 1, got ${tweet.label}`);
  }
  const spans: Array<[string, number[]]> = [
    ...tweet.leaf_nps.map((s, i): [string, number[]] => [`leaf_nps[${i}]`, s]),
    ...tweet.entities.map((s, i): [string, number[]] => [`entities[${i}]`, s]),
  ];
  if (tweet.clause_split) {
    spans.push(["clause_split.main", tweet.clause_split.main]);
    spans.push(["clause_split.sub", tweet.clause_split.sub]);
  }
  for (const [name, span] of spans) {
    if (span.length === 0) problems.push(`${name} is empty`);
    for (const idx of span) {
      if (!Number.isInteger(idx) || idx < 0 || idx >= n) {
        problems.push(`${name} index ${idx} out of range 0..${n - 1}`);
      }
    }
  }
  for (let i = 0; i < tweet.leaf_nps.length; i++) {
    for (let j = i + 1; j < tweet.leaf_nps.length; j++) {
      const a = new Set(tweet.leaf_nps[i]);
      const b = new Set(tweet.leaf_nps[j]);
      const nested =
        [...a].every((x) => b.has(x)) || [...b].every((x) => a.has(x));
      if (nested) problems.push(`leaf_nps[${i}] and leaf_nps[${j}] nest`);
    }
  }
  if (tweet.clause_split) {
    const main = new Set(tweet.clause_split.main);
    if (tweet.clause_split.sub.some((x) => main.has(x))) {
      problems.push("clause spans overlap");
    }
  }
  return problems;
}
