/**
 * TypeScript client for the dutchdraw CLI.
 *
 * Every call shells out to the CLI's JSON interface, so the values seen
 * here are exactly the library's doubles (JSON carries shortest
 * round-trip representations). Core errors surface as DutchDrawError
 * with the core error name in `kind`.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export type Direction = "min" | "max";
export type ExpectationMethod = "closed" | "exact";

export interface ArgoptSet {
  kind: "only" | "all" | "all_except";
  ks: number[];
}

export interface BaselineOutcome {
  value: number;
  /** every optimizing classifier size k, materialized */
  argopt: number[];
  argoptSet: ArgoptSet;
  method: "closed_form" | "exhaustive";
}

export interface ScoreRow {
  measure: string;
  display: string;
  beta?: number;
  modelScore: number | null;
  scoreError: string | null;
  baselineMin: number | null;
  baselineMax: number | null;
  verdict: "beats_baseline" | "does_not_beat" | null;
  rescaled: number | null;
}

export interface ScoreOptions {
  measures?: string[];
  beta?: number;
  rescale?: boolean;
}

export interface ClientOptions {
  /** CLI invocation, e.g. ["dutchdraw"] or ["python3", "-m", "dutchdraw"] */
  command?: string[];
  timeoutMs?: number;
}

export class DutchDrawError extends Error {
  constructor(readonly kind: string, message: string) {
    super(message);
    this.name = kind;
  }
}

interface RawRow {
  measure: string;
  display: string;
  beta?: number;
  baseline_min: number | null;
  baseline_max: number | null;
  argopt_min: ArgoptSet | null;
  argopt_max: ArgoptSet | null;
  method_min: string | null;
  method_max: string | null;
  undefined?: string[];
  model_score?: number | null;
  score_error?: string;
  verdict?: "beats_baseline" | "does_not_beat" | null;
  rescaled?: number | null;
}

function materialize(set: ArgoptSet, m: number): number[] {
  if (set.kind === "only") return [...set.ks];
  const excluded = new Set(set.kind === "all_except" ? set.ks : []);
  const out: number[] = [];
  for (let k = 0; k <= m; k++) if (!excluded.has(k)) out.push(k);
  return out;
}

function checkBinary(name: string, values: number[]): void {
  if (values.length < 1) {
    throw new DutchDrawError("LengthMismatch", `${name} is empty`);
  }
  for (const v of values) {
    if (v !== 0 && v !== 1) {
      throw new DutchDrawError("NonBinaryValue", `${name} contains ${v}`);
    }
  }
}

export class DutchDrawClient {
  private readonly command: string[];
  private readonly timeoutMs: number;
  readonly coreVersion: string;

  constructor(options: ClientOptions = {}) {
    this.command = options.command ?? ["dutchdraw"];
    this.timeoutMs = options.timeoutMs ?? 120_000;
    const banner = this.run(["--version"]).trim();
    const match = /^dutchdraw (\d+\.\d+\.\d+)$/.exec(banner);
    if (!match) {
      throw new DutchDrawError(
        "VersionMismatch",
        `unexpected core version banner: ${JSON.stringify(banner)}`,
      );
    }
    this.coreVersion = match[1];
  }

  private run(args: string[]): string {
    const [cmd, ...prefix] = this.command;
    try {
      return execFileSync(cmd, [...prefix, ...args], {
        encoding: "utf8",
        stdio: ["ignore", "pipe", "pipe"],
        timeout: this.timeoutMs,
      });
    } catch (error) {
      const err = error as { stderr?: string; message?: string };
      const stderr = (err.stderr ?? "").trim();
      const match = /^error: ([A-Za-z]+): (.*)$/s.exec(stderr);
      if (match) throw new DutchDrawError(match[1], match[2]);
      if (stderr.startsWith("error: ")) {
        throw new DutchDrawError("CLIError", stderr.slice("error: ".length));
      }
      throw new DutchDrawError("CLIError", stderr || String(err.message));
    }
  }

  private runJson(args: string[]): unknown {
    return JSON.parse(this.run([...args, "--format", "json"]));
  }

  /** Optimal expected score of a measure over all DD classifiers. */
  baseline(
    measure: string,
    m: number,
    p: number,
    direction: Direction,
    beta = 1.0,
  ): BaselineOutcome {
    const report = this.runJson([
      "baseline", "-m", String(m), "-p", String(p),
      "--direction", direction, "--measures", measure, "--beta", String(beta),
    ]) as { rows: RawRow[] };
    const row = report.rows[0];
    if (row.undefined) {
      throw new DutchDrawError(
        "UndefinedMeasure",
        `${row.display} undefined: needs ${row.undefined.join(", ")}`,
      );
    }
    const value = direction === "max" ? row.baseline_max : row.baseline_min;
    const argoptSet =
      direction === "max" ? row.argopt_max : row.argopt_min;
    const method = direction === "max" ? row.method_max : row.method_min;
    if (value === null || argoptSet === null || method === null) {
      throw new DutchDrawError("CLIError", "baseline row is incomplete");
    }
    return {
      value,
      argoptSet,
      argopt: materialize(argoptSet, m),
      method: method as BaselineOutcome["method"],
    };
  }

  /** Expected measure value for the classifier predicting k positives. */
  expectation(
    measure: string,
    m: number,
    p: number,
    k: number,
    method: ExpectationMethod = "exact",
    beta = 1.0,
  ): number {
    const payload = this.runJson([
      "expectation", "--measures", measure, "-m", String(m),
      "-p", String(p), "-k", String(k), "--method", method,
      "--beta", String(beta),
    ]) as { value: number };
    return payload.value;
  }

  /** Score a prediction vector against the DD baselines. */
  score(
    yTrue: number[],
    yPred: number[],
    options: ScoreOptions = {},
  ): ScoreRow[] {
    checkBinary("yTrue", yTrue);
    checkBinary("yPred", yPred);
    if (yTrue.length !== yPred.length) {
      throw new DutchDrawError(
        "LengthMismatch",
        `yTrue has ${yTrue.length} entries, yPred has ${yPred.length}`,
      );
    }
    const dir = mkdtempSync(join(tmpdir(), "dutchdraw-"));
    try {
      const file = join(dir, "labels.csv");
      const lines = ["y_true,y_pred"];
      for (let i = 0; i < yTrue.length; i++) {
        lines.push(`${yTrue[i]},${yPred[i]}`);
      }
      writeFileSync(file, lines.join("\n") + "\n");
      const args = ["score", "--labels", file,
                    "--measures", (options.measures ?? ["all"]).join(","),
                    "--beta", String(options.beta ?? 1.0)];
      if (options.rescale) args.push("--rescale");
      const report = this.runJson(args) as { rows: RawRow[] };
      return report.rows.map((row) => ({
        measure: row.measure,
        display: row.display,
        ...(row.beta !== undefined ? { beta: row.beta } : {}),
        modelScore: row.model_score ?? null,
        scoreError: row.score_error ?? null,
        baselineMin: row.baseline_min,
        baselineMax: row.baseline_max,
        verdict: row.verdict ?? null,
        rescaled: row.rescaled ?? null,
      }));
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }

  /** Map a raw score onto [-1, 1] anchored at the DD baseline band. */
  rescale(
    measure: string,
    m: number,
    p: number,
    score: number,
    beta = 1.0,
  ): number {
    const payload = this.runJson([
      "rescale", "--measures", measure, "-m", String(m), "-p", String(p),
      "--score", String(score), "--beta", String(beta),
    ]) as { rescaled: number };
    return payload.rescaled;
  }
}
