import { AnnotatedTweet, RawTweet } from "./types.js";

/** Minimal CSV parser: quoted fields, doubled-quote escapes, CRLF. */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = "";
  let quoted = false;
  let i = 0;
  const pushField = () => {
    row.push(field);
    field = "";
  };
  const pushRow = () => {
    pushField();
    rows.push(row);
    row = [];
  };
  while (i < text.length) {
    const ch = text[i];
    if (quoted) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
        i++;
        continue;
      }
      field += ch;
      i++;
      continue;
    }
    if (ch === '"' && field.length === 0) {
      quoted = true;
      i++;
    } else if (ch === ",") {
      pushField();
      i++;
    } else if (ch === "\n") {
      pushRow();
      i++;
    } else if (ch === "\r") {
      i++;
    } else {
      field += ch;
      i++;
    }
  }
  if (field.length > 0 || row.length > 0) pushRow();
  return rows;
}

function toLabel(value: string, where: string): 0 | 1 {
  if (value === "0") return 0;
  if (value === "1") return 1;
  throw new Error(`${where}: label must be 0 or 1, got ${JSON.stringify(value)}`);
}

export function rawTweetsFromCsv(text: string): RawTweet[] {
  const rows = parseCsv(text).filter((r) => r.length > 1 || r[0] !== "");
  if (rows.length === 0) throw new Error("empty CSV input");
  const header = rows[0].map((h) => h.trim().toLowerCase());
  const expected = ["id", "text", "label", "source"];
  if (expected.some((name, i) => header[i] !== name)) {
    throw new Error(
      `CSV header must be id,text,label,source, got ${rows[0].join(",")}`
    );
  }
  return rows.slice(1).map((r, n) => ({
    id: r[0],
    text: r[1] ?? "",
    label: toLabel(r[2] ?? "", `row ${n + 2}`),
    source: r[3] ?? "",
  }));
}

export function rawTweetsFromJsonl(text: string): RawTweet[] {
  const raws: RawTweet[] = [];
  text.split("\n").forEach((line, n) => {
    if (!line.trim()) return;
    let obj: Record<string, unknown>;
    try {
      obj = JSON.parse(line);
    } catch {
      throw new Error(`line ${n + 1}: invalid JSON`);
    }
    raws.push({
      id: String(obj.id),
      text: String(obj.text ?? ""),
      label: toLabel(String(obj.label), `line ${n + 1}`),
      source: String(obj.source ?? ""),
    });
  });
  return raws;
}

export function toJsonl(tweets: AnnotatedTweet[]): string {
  return tweets.map((t) => JSON.stringify(t)).join("\n") + "\n";
}
