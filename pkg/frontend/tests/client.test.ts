import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  DutchDrawClient,
  DutchDrawError,
  type ScoreRow,
} from "../src/index";

const here = dirname(fileURLToPath(import.meta.url));
const command = process.env.DUTCHDRAW_CMD?.split(" ") ?? ["dutchdraw"];
const client = new DutchDrawClient({ command });

function expectKind(fn: () => unknown, kind: string) {
  try {
    fn();
  } catch (err) {
    expect(err).toBeInstanceOf(DutchDrawError);
    expect((err as DutchDrawError).kind).toBe(kind);
    return;
  }
  expect.fail(`expected ${kind} to be thrown`);
}

function expectSameValue(
  got: number | string | null,
  want: number | string | null,
  ctx: string,
) {
  if (typeof got === "number" && typeof want === "number") {
    // bit-identical doubles, including -0 and exact ties
    expect(Object.is(got, want), `${ctx}: ${got} vs ${want}`).toBe(true);
  } else {
    expect(got, ctx).toStrictEqual(want);
  }
}

describe("handshake", () => {
  it("validates the core version banner", () => {
    expect(client.coreVersion).toMatch(/^\d+\.\d+\.\d+$/);
  });

  it("rejects a non-dutchdraw command", () => {
    expect(() => new DutchDrawClient({ command: ["node", "--version"] }))
      .toThrow(DutchDrawError);
  });
});

describe("behavior", () => {
  it("balanced accuracy baseline is 1/2 on the whole grid", () => {
    const b = client.baseline("bacc", 10, 3, "max");
    expect(b.value).toBe(0.5);
    expect(b.argopt).toStrictEqual([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
    expect(b.method).toBe("closed_form");
  });

  it("f1 maximum matches the closed form bit for bit", () => {
    const b = client.baseline("f1", 303, 139, "max");
    expect(Object.is(b.value, (2 * 139) / (1 * 139 + 303))).toBe(true);
    expect(b.argopt).toStrictEqual([303]);
  });

  it("exact G2 expectation reproduces the worked value", () => {
    const v = client.expectation("g2", 10, 9, 2, "exact");
    expect(Math.abs(v - (4 * Math.sqrt(2)) / 15)).toBeLessThanOrEqual(1e-12);
  });

  it("propagates core error kinds", () => {
    expectKind(() => client.baseline("mcc", 10, 0, "max"), "UndefinedMeasure");
    expectKind(() => client.baseline("pt", 10, 4, "max"), "UnsupportedMeasure");
    expectKind(() => client.expectation("g2", 10, 4, 2, "closed"),
               "NonlinearMeasure");
    expectKind(() => client.expectation("pt", 10, 4, 2), "UnsupportedMeasure");
    expectKind(() => client.rescale("tp", 10, 4, 2), "DegenerateScale");
    expectKind(() => client.score([1, 0], [1]), "LengthMismatch");
    expectKind(() => client.score([1, 2], [1, 0]), "NonBinaryValue");
  });

  it("scores perfect predictions above the accuracy baseline", () => {
    const rows = client.score([1, 0, 1, 0, 0], [1, 0, 1, 0, 0],
                              { measures: ["acc"] });
    expect(rows[0].modelScore).toBe(1);
    expect(rows[0].verdict).toBe("beats_baseline");
  });

  it("reports the degenerate prevalence-threshold condition", () => {
    const rows = client.score([1, 1, 0, 0], [1, 0, 1, 0],
                              { measures: ["pt"] });
    expect(rows[0].modelScore).toBeNull();
    expect(rows[0].scoreError).toMatch(/^PtDenominatorZero/);
    expect(rows[0].baselineMax).toBeNull();
  });

  it("rescales the codomain top to 1", () => {
    expect(client.rescale("f1", 303, 139, 1.0)).toBe(1);
    expect(client.rescale("f1", 303, 139, 0.5)).toBeLessThan(0);
  });
});

interface Fixture {
  seed: number;
  cases: Array<{
    op: "baseline" | "expectation" | "score" | "rescale";
    args: Record<string, unknown>;
    expect: Record<string, unknown>;
  }>;
}

describe("binding parity", () => {
  it("matches direct library calls bit for bit on the 200-case panel", () => {
    const fixture: Fixture = JSON.parse(
      readFileSync(join(here, "..", "fixtures", "parity.json"), "utf8"),
    );
    expect(fixture.cases.length).toBe(200);

    for (const [i, c] of fixture.cases.entries()) {
      const ctx = `case ${i} (${c.op})`;
      const a = c.args as Record<string, never>;
      const wantError = c.expect.error as string | undefined;

      if (c.op === "baseline") {
        const call = () =>
          client.baseline(a["measure"], a["m"], a["p"], a["direction"],
                          a["beta"]);
        if (wantError) {
          expectKind(call, wantError);
        } else {
          const got = call();
          expectSameValue(got.value, c.expect.value as number, ctx);
          expect(got.argopt, ctx).toStrictEqual(c.expect.argopt);
          expect(got.method, ctx).toBe(c.expect.method);
        }
      } else if (c.op === "expectation") {
        const call = () =>
          client.expectation(a["measure"], a["m"], a["p"], a["k"],
                             a["method"], a["beta"]);
        if (wantError) {
          expectKind(call, wantError);
        } else {
          expectSameValue(call(), c.expect.value as number, ctx);
        }
      } else if (c.op === "score") {
        const rows = client.score(a["y_true"], a["y_pred"], {
          measures: a["measures"],
          beta: a["beta"],
          rescale: a["rescale"],
        });
        const want = c.expect.rows as Array<Record<string, never>>;
        expect(rows.length, ctx).toBe(want.length);
        rows.forEach((row: ScoreRow, j: number) => {
          const w = want[j];
          const rctx = `${ctx} row ${j} (${w["display"]})`;
          expect(row.measure, rctx).toBe(w["measure"]);
          expect(row.display, rctx).toBe(w["display"]);
          expectSameValue(row.modelScore, w["model_score"], rctx);
          expectSameValue(row.scoreError ?? null, w["score_error"] ?? null, rctx);
          expectSameValue(row.baselineMin, w["baseline_min"], rctx);
          expectSameValue(row.baselineMax, w["baseline_max"], rctx);
          expectSameValue(row.verdict, w["verdict"], rctx);
          expectSameValue(row.rescaled, w["rescaled"], rctx);
        });
      } else {
        const call = () =>
          client.rescale(a["measure"], a["m"], a["p"], a["score"], a["beta"]);
        if (wantError) {
          expectKind(call, wantError);
        } else {
          expectSameValue(call(), c.expect.value as number, ctx);
        }
      }
    }
  });
});
