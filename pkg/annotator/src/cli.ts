import { readFileSync, writeFileSync } from "node:fs";

import { annotateAll, dedupeFilter } from "./annotate.js";
import { rawTweetsFromCsv, rawTweetsFromJsonl, toJsonl } from "./io.js";
import { schemaViolations } from "./types.js";

const USAGE =
  "usage: triway-annotate --in raw.csv|raw.jsonl --out annotated.jsonl " +
  "[--min-tokens 5]";

type Args = { input: string; output: string; minTokens: number };

export function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let output: string | undefined;
  let minTokens = 5;
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--in":
        input = argv[++i];
        break;
      case "--out":
        output = argv[++i];
        break;
      case "--min-tokens":
        minTokens = Number(argv[++i]);
        break;
      default:
        throw new Error(`unknown argument: ${argv[i]}\n${USAGE}`);
    }
  }
  if (!input || !output || !Number.isInteger(minTokens) || minTokens < 0) {
    throw new Error(USAGE);
  }
  return { input, output, minTokens };
}

export function runCli(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  let text: string;
  try {
    text = readFileSync(args.input, "utf-8");
  } catch {
    console.error(`error: cannot read ${args.input}`);
    return 2;
  }
  let raws;
  try {
    raws = args.input.endsWith(".jsonl")
      ? rawTweetsFromJsonl(text)
      : rawTweetsFromCsv(text);
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }

  const { kept, dropped } = dedupeFilter(raws, args.minTokens);
  const { tweets, warnings } = annotateAll(kept);
  const invalid = tweets.flatMap((t) =>
    schemaViolations(t).map((v) => `${t.id}: schema violation: ${v}`)
  );
  if (invalid.length > 0) {
    for (const line of invalid) console.error(`error: ${line}`);
    return 1;
  }

  writeFileSync(args.output, toJsonl(tweets), "utf-8");
  const logLines = [
    ...dropped.map((d) => `dropped ${d.id}: ${d.reason}`),
    ...warnings.map((w) => `warning ${w}`),
  ];
  writeFileSync(args.output + ".log", logLines.join("\n") + "\n", "utf-8");

  console.log(
    `annotated ${tweets.length} tweets -> ${args.output} ` +
      `(${dropped.length} dropped, ${warnings.length} warnings)`
  );
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(runCli(process.argv.slice(2)));
}
