import winkNLP, { ItemEntity, ItsFunction } from "wink-nlp";
import model from "wink-eng-lite-web-model";

import { AnnotatedTweet, ClauseSplit, RawTweet } from "./types.js";

const nlp = winkNLP(model);
const its = nlp.its;

// tags that may form a leaf noun phrase; a run must contain a noun head
const NP_TAGS = new Set(["ADJ", "NOUN", "PROPN", "NUM"]);
const NP_HEADS = new Set(["NOUN", "PROPN"]);
// relative pronouns that open a relative clause (tag-gated to skip the
// determiner reading of "that")
const REL_PRONOUNS = new Set(["who", "whom", "which", "that", "where", "when"]);
const REL_TAGS = new Set(["PRON", "SCONJ", "ADV"]);

type Tagged = { tokens: string[]; tags: string[] };

function readTagged(text: string): Tagged {
  const doc = nlp.readDoc(text);
  return {
    tokens: doc.tokens().out(),
    tags: doc.tokens().out(its.pos as ItsFunction<string>) as string[],
  };
}

/** Count word tokens (punctuation excluded). */
export function tokenCount(text: string): number {
  const { tags } = readTagged(text);
  return tags.filter((t) => t !== "PUNCT").length;
}

export type DedupeResult = {
  kept: RawTweet[];
  dropped: Array<{ id: string; reason: string }>;
};

/**
 * Remove exact-text duplicates (first occurrence survives) and tweets
 * shorter than `minTokens` word tokens.
 */
export function dedupeFilter(raws: RawTweet[], minTokens = 5): DedupeResult {
  const seen = new Set<string>();
  const kept: RawTweet[] = [];
  const dropped: Array<{ id: string; reason: string }> = [];
  for (const raw of raws) {
    const text = raw.text.trim();
    if (seen.has(text)) {
      dropped.push({ id: raw.id, reason: "duplicate text" });
      continue;
    }
    seen.add(text);
    const count = tokenCount(text);
    if (count < minTokens) {
      dropped.push({ id: raw.id, reason: `${count} tokens < ${minTokens}` });
      continue;
    }
    kept.push(raw);
  }
  return { kept, dropped };
}

/** Maximal contiguous noun-phrase runs; maximality keeps them non-nested. */
function leafNounPhrases(tags: string[]): number[][] {
  const spans: number[][] = [];
  let run: number[] = [];
  let hasHead = false;
  const flush = () => {
    if (run.length > 0 && hasHead) spans.push(run);
    run = [];
    hasHead = false;
  };
  for (let i = 0; i < tags.length; i++) {
    if (NP_TAGS.has(tags[i])) {
      run.push(i);
      hasHead = hasHead || NP_HEADS.has(tags[i]);
    } else {
      flush();
    }
  }
  flush();
  return spans;
}

/**
 * Split at the first preposition or relative pronoun, dropping the
 * boundary token itself and all punctuation. Null when no boundary
 * leaves words on both sides.
 */
function clauseSplit(tokens: string[], tags: string[]): ClauseSplit | null {
  let boundary = -1;
  for (let i = 1; i < tokens.length - 1; i++) {
    const isPreposition = tags[i] === "ADP";
    const isRelative =
      REL_PRONOUNS.has(tokens[i].toLowerCase()) && REL_TAGS.has(tags[i]);
    if (isPreposition || isRelative) {
      boundary = i;
      break;
    }
  }
  if (boundary < 0) return null;
  const words = (lo: number, hi: number) => {
    const span: number[] = [];
    for (let i = lo; i < hi; i++) {
      if (tags[i] !== "PUNCT") span.push(i);
    }
    return span;
  };
  const main = words(0, boundary);
  const sub = words(boundary + 1, tokens.length);
  if (main.length === 0 || sub.length === 0) return null;
  return { main, sub };
}

/** Recognizer entities plus proper-noun runs that they do not cover. */
function entitySpans(text: string, tags: string[]): number[][] {
  const doc = nlp.readDoc(text);
  const spans: number[][] = [];
  const covered = new Set<number>();
  doc.entities().each((e: ItemEntity) => {
    const [start, end] = e.out(its.span as ItsFunction<number[]>) as number[];
    const span: number[] = [];
    for (let i = start; i <= end; i++) {
      span.push(i);
      covered.add(i);
    }
    spans.push(span);
  });
  let run: number[] = [];
  const flush = () => {
    if (run.length > 0 && run.every((i) => !covered.has(i))) {
      spans.push(run);
    }
    run = [];
  };
  for (let i = 0; i < tags.length; i++) {
    if (tags[i] === "PROPN") run.push(i);
    else flush();
  }
  flush();
  spans.sort((a, b) => a[0] - b[0]);
  return spans;
}

export type AnnotateOutcome =
  | { ok: true; tweet: AnnotatedTweet; warning?: string }
  | { ok: false; warning: string };

export function annotateTweet(raw: RawTweet): AnnotateOutcome {
  const text = raw.text.trim();
  if (text.length === 0) {
    return { ok: false, warning: `${raw.id}: empty text, skipped` };
  }
  let tagged: Tagged;
  try {
    tagged = readTagged(text);
  } catch (err) {
    // emit with empty spans so the record still flows downstream
    return {
      ok: true,
      tweet: {
        id: raw.id,
        tokens: text.split(/\s+/),
        label: raw.label,
        source: raw.source,
        leaf_nps: [],
        clause_split: null,
        entities: [],
      },
      warning: `${raw.id}: tagger failed (${String(err)}), empty spans`,
    };
  }
  const { tokens, tags } = tagged;
  return {
    ok: true,
    tweet: {
      id: raw.id,
      tokens,
      label: raw.label,
      source: raw.source,
      leaf_nps: leafNounPhrases(tags),
      clause_split: clauseSplit(tokens, tags),
      entities: entitySpans(text, tags),
    },
  };
}

export type BatchResult = { tweets: AnnotatedTweet[]; warnings: string[] };

/** Annotate a batch, preserving input order. */
export function annotateAll(raws: RawTweet[]): BatchResult {
  const tweets: AnnotatedTweet[] = [];
  const warnings: string[] = [];
  for (const raw of raws) {
    const outcome = annotateTweet(raw);
    if (outcome.warning) warnings.push(outcome.warning);
    if (outcome.ok) tweets.push(outcome.tweet);
  }
  return { tweets, warnings };
}
