/**
 * Thin scripting bindings over the `paratok` command-line tool.
 *
 * No tokenization or metric logic lives here: every call shells out to the
 * CLI and parses the documented wire formats (JSON-per-line encodings, CSV
 * metric tables, the parallel-set directory layout). Errors raised by the
 * tool surface with their primary error name on `Error.name`.
 */

import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

const PARATOK_BIN = process.env.PARATOK_BIN ?? "paratok";

export interface SetManifest {
  languages: string[];
  language_tags: string[];
  pivot: string;
  cap: number;
  char_subset: number;
  size: number;
  aligned_count: number;
  filler_counts: Record<string, number>;
}

export interface TokenizerHandle {
  directory: string;
  manifest: SetManifest;
  alignedMask: boolean[];
}

export interface EncodingRecord {
  ids: number[];
  attention_mask: number[];
  type_ids: number[];
  language_id: number;
}

export class ParatokError extends Error {
  constructor(name: string, message: string) {
    super(message);
    this.name = name;
  }
}

function run(args: string[]): string {
  const proc = spawnSync(PARATOK_BIN, args, { encoding: "utf-8" });
  if (proc.error) {
    throw new ParatokError("SpawnFailure", String(proc.error));
  }
  if (proc.status !== 0) {
    // the CLI reports "error: <Name>: <detail>" on stderr
    const match = /error:\s*([A-Za-z]+)(?::\s*(.*))?/s.exec(proc.stderr ?? "");
    const name = match?.[1] ?? "ParatokError";
    throw new ParatokError(name, match?.[2]?.trim() || proc.stderr || `exit ${proc.status}`);
  }
  return proc.stdout;
}

/** Open a parallel-set directory written by `paratok build-parallel` or `run`. */
export function loadTokenizer(directory: string): TokenizerHandle {
  const manifestPath = join(directory, "manifest.json");
  if (!existsSync(manifestPath)) {
    throw new ParatokError("FileNotFound", `no manifest.json in ${directory}`);
  }
  const manifest = JSON.parse(readFileSync(manifestPath, "utf-8")) as SetManifest;
  const maskText = readFileSync(join(directory, "aligned.mask"), "utf-8");
  const alignedMask = maskText
    .split("\n")
    .filter((line) => line !== "")
    .map((line) => line === "1");
  return { directory, manifest, alignedMask };
}

/** Encode one text with the vocabulary its language token selects. */
export function encode(
  handle: TokenizerHandle,
  langToken: string,
  text: string,
): EncodingRecord {
  const out = run([
    "encode",
    "--set",
    handle.directory,
    "--lang",
    langToken,
    "--text",
    text,
  ]);
  return JSON.parse(out.trim()) as EncodingRecord;
}

/** Encode many texts in one tool invocation (one JSON object per line). */
export function encodeLines(
  handle: TokenizerHandle,
  langToken: string,
  texts: string[],
): EncodingRecord[] {
  const dir = mkdtempSync(join(tmpdir(), "paratok-bind-"));
  try {
    const inputPath = join(dir, "input.txt");
    writeFileSync(inputPath, texts.join("\n") + "\n", "utf-8");
    const out = run([
      "encode",
      "--set",
      handle.directory,
      "--lang",
      langToken,
      "--input",
      inputPath,
    ]);
    return out
      .trim()
      .split("\n")
      .map((line) => JSON.parse(line) as EncodingRecord);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

/** Decode ids back to text (specials dropped, continuations glued). */
export function decode(
  handle: TokenizerHandle,
  langToken: string,
  ids: number[],
): string {
  const out = run([
    "decode",
    "--set",
    handle.directory,
    "--lang",
    langToken,
    "--ids",
    ids.join(","),
  ]);
  return out.replace(/\n$/, "");
}

function metricValues(csvText: string): Record<string, number | null> {
  const values: Record<string, number | null> = {};
  for (const line of csvText.trim().split("\n").slice(1)) {
    const cells = line.split(",");
    const language = cells[2];
    const raw = cells[3];
    values[language] = raw === "NA" ? null : Number(raw);
  }
  return values;
}

/** Tokens per word for one corpus column, via `paratok metrics fertility`. */
export function fertility(
  handle: TokenizerHandle,
  corpusTsv: string,
  lang: string,
): number {
  const out = run([
    "metrics",
    "fertility",
    "--set",
    handle.directory,
    "--corpus",
    corpusTsv,
    "--langs",
    lang,
  ]);
  return metricValues(out)[lang] as number;
}

/** Symmetric token-count ratio against a reference language. */
export function parity(
  handle: TokenizerHandle,
  corpusTsv: string,
  lang: string,
  reference: string,
): number {
  const out = run([
    "metrics",
    "parity",
    "--set",
    handle.directory,
    "--corpus",
    corpusTsv,
    "--langs",
    lang,
    "--reference",
    reference,
  ]);
  return metricValues(out)[lang] as number;
}

/** Total UNK ids emitted over one corpus column. */
export function unkCount(
  handle: TokenizerHandle,
  corpusTsv: string,
  lang: string,
): number {
  const out = run([
    "metrics",
    "unk",
    "--set",
    handle.directory,
    "--corpus",
    corpusTsv,
    "--langs",
    lang,
  ]);
  return metricValues(out)[lang] as number;
}

/** Margin-based retrieval error rate between two embedding blob files. */
export function xsimErrorRate(srcPath: string, tgtPath: string, k = 4): number {
  const out = run(["xsim", "--src", srcPath, "--tgt", tgtPath, "--k", String(k)]);
  const line = out.trim().split("\n")[1];
  return Number(line.split(",").at(-1));
}

/** Escape hatch: run any subcommand and return its stdout. */
export function rawCommand(args: string[]): string {
  return run(args);
}
