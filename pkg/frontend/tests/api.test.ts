import { describe, expect, it } from "vitest";

import {
  DivscoreError,
  Scorer,
  cliVersion,
  scoreFeatures,
  scoreKernel,
  scoreTexts,
} from "../src/index.js";

// independent oracle: entropy over a two-point spectrum ((1+c)/2, (1-c)/2)
function twoPointScore(c: number): number {
  const lams = [(1 + c) / 2, (1 - c) / 2];
  return Math.exp(-lams.reduce((h, l) => h + (l > 0 ? l * Math.log(l) : 0), 0));
}

describe("scoreFeatures", () => {
  it("orthonormal rows count fully", () => {
    const r = scoreFeatures([
      [1, 0, 0],
      [0, 1, 0],
      [0, 0, 1],
    ]);
    expect(r.score).toBe(3);
    expect(r.n).toBe(3);
    expect(r.eigenvalues_top10).toEqual([0.333333, 0.333333, 0.333333]);
  });

  it("identical rows count once", () => {
    const r = scoreFeatures([
      [3, 4],
      [3, 4],
    ]);
    expect(r.score).toBe(1);
  });

  it("known two-row overlap", () => {
    const r = scoreFeatures([
      [1, 0],
      [1, 1],
    ]);
    expect(Math.abs(r.score - twoPointScore(Math.SQRT1_2))).toBeLessThan(1e-5);
  });
});

describe("scoreKernel", () => {
  it("identity counts fully", () => {
    const r = scoreKernel([
      [1, 0, 0, 0],
      [0, 1, 0, 0],
      [0, 0, 1, 0],
      [0, 0, 0, 1],
    ]);
    expect(r.score).toBe(4);
  });

  it("all-ones counts once", () => {
    const r = scoreKernel([
      [1, 1, 1],
      [1, 1, 1],
      [1, 1, 1],
    ]);
    expect(r.score).toBe(1);
    expect(r.eigenvalues_top10[0]).toBe(1);
    // trailing eigenvalues are eigensolver residue, printed as-is
    for (const lam of r.eigenvalues_top10.slice(1)) {
      expect(Math.abs(lam)).toBeLessThan(1e-12);
    }
  });

  it("half-linked pair plus a loner", () => {
    const r = scoreKernel([
      [1, 0.5, 0],
      [0.5, 1, 0],
      [0, 0, 1],
    ]);
    expect(r.score).toBe(2.74946); // spectrum (1/2, 1/3, 1/6)
  });
});

describe("scoreTexts", () => {
  it("identical texts count once", () => {
    expect(scoreTexts(["alpha beta", "alpha beta"]).score).toBe(1);
  });

  it("disjoint texts count fully", () => {
    expect(scoreTexts(["aa", "bb"]).score).toBe(2);
  });

  it("known overlap at order 2", () => {
    const r = scoreTexts(["x y", "y z"], 2);
    expect(Math.abs(r.score - twoPointScore(0.25))).toBeLessThan(1e-5);
  });
});

describe("result shape", () => {
  it("entropy is ln of the printed score", () => {
    const r = scoreKernel([
      [1, 0.3],
      [0.3, 1],
    ]);
    expect(r.entropy).toBe(Math.log(r.score));
    expect(r.eigenvalues_top10).toHaveLength(2);
  });
});

describe("errors", () => {
  function catching(fn: () => unknown): DivscoreError {
    try {
      fn();
    } catch (err) {
      expect(err).toBeInstanceOf(DivscoreError);
      return err as DivscoreError;
    }
    throw new Error("expected a DivscoreError");
  }

  it("asymmetric kernel is a validation error", () => {
    const err = catching(() =>
      scoreKernel([
        [1, 0.9],
        [0.1, 1],
      ]),
    );
    expect(err.name).toBe("DivscoreError");
    expect(err.kind).toBe("validation");
    expect(err.exitCode).toBe(2);
    expect(err.message).toMatch(/asymmetry/);
  });

  it("indefinite kernel is a numerical error", () => {
    const err = catching(() =>
      scoreKernel([
        [1, 0, 0.9],
        [0, 1, 0.9],
        [0.9, 0.9, 1],
      ]),
    );
    expect(err.kind).toBe("numerical");
    expect(err.exitCode).toBe(3);
    expect(err.message).toMatch(/positive semidefinite/);
  });

  it("non-finite features are rejected by the CLI", () => {
    const err = catching(() => scoreFeatures([[Number.NaN, 1]]));
    expect(err.kind).toBe("validation");
    expect(err.message).toMatch(/not finite/);
  });

  it("ragged rows are rejected with a line number", () => {
    const err = catching(() => scoreFeatures([[1, 2], [3]]));
    expect(err.kind).toBe("validation");
    expect(err.message).toMatch(/line 2/);
  });

  it("empty text lines are rejected", () => {
    const err = catching(() => scoreTexts(["fine", ""]));
    expect(err.kind).toBe("validation");
    expect(err.message).toMatch(/empty line/);
  });

  it("embedded newlines never reach the CLI", () => {
    const err = catching(() => scoreTexts(["one\ntwo"]));
    expect(err.kind).toBe("validation");
    expect(err.exitCode).toBeNull();
    expect(err.message).toMatch(/newline/);
  });

  it("an unrunnable executable is a spawn error", () => {
    const err = catching(() => new Scorer({ command: "/nonexistent/divscore" }));
    expect(err.kind).toBe("spawn");
  });
});

describe("version", () => {
  it("looks like a semantic version", () => {
    expect(cliVersion()).toMatch(/^\d+\.\d+\.\d+$/);
  });
});
