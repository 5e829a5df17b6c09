// Bindings for the divscore CLI. Everything goes through the executable:
// inputs are serialized to the CLI's file formats, results come back as its
// deterministic JSON. No similarity or spectrum math is reimplemented here,
// so a score obtained through this module is the CLI's answer verbatim.

import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface ScoreResult {
  /** Effective sample count, exactly as printed by the CLI (6 significant digits). */
  score: number;
  /** Shannon entropy of the spectrum, recovered as ln(score). */
  entropy: number;
  n: number;
  eigenvalues_top10: number[];
}

/** validation: the CLI rejected the input (exit 2). numerical: the spectral
 *  computation failed (exit 3). spawn: the CLI could not be run at all. */
export type ErrorKind = "validation" | "numerical" | "spawn";

export class DivscoreError extends Error {
  readonly kind: ErrorKind;
  readonly exitCode: number | null;

  constructor(kind: ErrorKind, message: string, exitCode: number | null = null) {
    super(message);
    this.name = "DivscoreError";
    this.kind = kind;
    this.exitCode = exitCode;
  }
}

export interface ScorerOptions {
  /** CLI executable. Defaults to $DIVSCORE_CLI, then "divscore" on PATH. */
  command?: string;
}

interface CliScorePayload {
  metric: string;
  score: number;
  n: number;
  eigenvalues_top10: number[];
}

function toCsv(matrix: ReadonlyArray<ReadonlyArray<number>>): string {
  // String(v) is the shortest round-trip form, which the CLI parses back to
  // the identical double; non-finite and junk entries are left for the CLI
  // to reject so validation lives in exactly one place
  return matrix.map((row) => Array.from(row, (v) => String(v)).join(",")).join("\n") + "\n";
}

export class Scorer {
  readonly command: string;
  /** Version reported by the executable; matches the "version" field of report output. */
  readonly version: string;

  constructor(options: ScorerOptions = {}) {
    this.command = options.command ?? process.env["DIVSCORE_CLI"] ?? "divscore";
    const banner = this.run(["--version"]).trim();
    const match = /^divscore (\S+)$/.exec(banner);
    if (!match || match[1] === undefined) {
      throw new DivscoreError("spawn", `unexpected --version output: ${JSON.stringify(banner)}`);
    }
    this.version = match[1];
  }

  /** Score an n x d feature matrix under the cosine kernel. */
  scoreFeatures(matrix: ReadonlyArray<ReadonlyArray<number>>): ScoreResult {
    return this.scoreViaFile("features.csv", toCsv(matrix), ["--kernel", "cosine"]);
  }

  /** Score a precomputed n x n similarity matrix. */
  scoreKernel(matrix: ReadonlyArray<ReadonlyArray<number>>): ScoreResult {
    return this.scoreViaFile("kernel.csv", toCsv(matrix), ["--kernel", "precomputed"]);
  }

  /** Score texts under the n-gram overlap kernel. Tokenization happens in the
   *  CLI (whitespace split per line), so maxN aside there is nothing to configure. */
  scoreTexts(texts: ReadonlyArray<string>, maxN?: number): ScoreResult {
    texts.forEach((text, i) => {
      if (text.includes("\n")) {
        throw new DivscoreError(
          "validation",
          `text ${i} contains a newline; the line-oriented input format cannot carry it`,
        );
      }
    });
    const extra = ["--kernel", "ngram"];
    if (maxN !== undefined) {
      extra.push("--ngram-max", String(maxN));
    }
    return this.scoreViaFile("texts.txt", texts.map((t) => t + "\n").join(""), extra);
  }

  private scoreViaFile(name: string, content: string, extra: string[]): ScoreResult {
    const dir = mkdtempSync(join(tmpdir(), "divscore-"));
    try {
      const input = join(dir, name);
      writeFileSync(input, content, "utf8");
      const payload = JSON.parse(this.run(["score", "--input", input, ...extra])) as CliScorePayload;
      return {
        score: payload.score,
        entropy: Math.log(payload.score),
        n: payload.n,
        eigenvalues_top10: payload.eigenvalues_top10,
      };
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }

  private run(args: string[]): string {
    const proc = spawnSync(this.command, args, {
      encoding: "utf8",
      maxBuffer: 64 * 1024 * 1024,
    });
    if (proc.error) {
      throw new DivscoreError("spawn", `failed to run ${this.command}: ${proc.error.message}`);
    }
    if (proc.status !== 0) {
      const kind: ErrorKind = proc.status === 3 ? "numerical" : "validation";
      const detail = (proc.stderr ?? "").trim() || `exit code ${String(proc.status)}`;
      throw new DivscoreError(kind, detail, proc.status);
    }
    return proc.stdout;
  }
}

let shared: Scorer | undefined;

function sharedScorer(): Scorer {
  shared ??= new Scorer();
  return shared;
}

export function scoreFeatures(matrix: ReadonlyArray<ReadonlyArray<number>>): ScoreResult {
  return sharedScorer().scoreFeatures(matrix);
}

export function scoreKernel(matrix: ReadonlyArray<ReadonlyArray<number>>): ScoreResult {
  return sharedScorer().scoreKernel(matrix);
}

export function scoreTexts(texts: ReadonlyArray<string>, maxN?: number): ScoreResult {
  return sharedScorer().scoreTexts(texts, maxN);
}

export function cliVersion(): string {
  return sharedScorer().version;
}
