// Weight renormalization and edit invariants: any sequence of UI edits must
// keep the snapshot acceptable to the API (scores in [0,1], weights sum 1).
import { describe, expect, it } from "vitest";

import {
  clamp01,
  DEFAULT_SNAPSHOT,
  initialState,
  renormalizeWeights,
  setAllScores,
  setDomainScore,
  setWeight,
  weightSum,
} from "../src/state";

describe("renormalizeWeights", () => {
  it("keeps the edited value and rescales the rest proportionally", () => {
    const out = renormalizeWeights([0.4, 0.3, 0.3], 0, 0.5);
    expect(out[0]).toBeCloseTo(0.5, 12);
    // untouched 0.3/0.3 split the remaining 0.5 equally
    expect(out[1]).toBeCloseTo(0.25, 12);
    expect(out[2]).toBeCloseTo(0.25, 12);
    expect(weightSum(out)).toBeCloseTo(1, 14);
  });

  it("pushing one weight to 0.99 rescales the others to fill 0.01", () => {
    const out = renormalizeWeights([0.4, 0.6], 0, 0.99);
    expect(out[0]).toBeCloseTo(0.99, 12);
    expect(out[1]).toBeCloseTo(0.01, 12);
    expect(weightSum(out)).toBe(1);
  });

  it("splits evenly when the untouched weights were all zero", () => {
    const out = renormalizeWeights([1, 0, 0], 0, 0.4);
    expect(out[0]).toBeCloseTo(0.4, 12);
    expect(out[1]).toBeCloseTo(0.3, 12);
    expect(out[2]).toBeCloseTo(0.3, 12);
  });

  it("clamps edits outside [0,1]", () => {
    expect(renormalizeWeights([0.5, 0.5], 0, 1.7)[0]).toBe(1);
    expect(renormalizeWeights([0.5, 0.5], 0, -0.2)[0]).toBe(0);
  });

  it("a single weight is always exactly 1", () => {
    expect(renormalizeWeights([1], 0, 0.4)).toEqual([1]);
  });

  it("keeps the sum at 1 across random edit sequences", () => {
    let seed = 1337;
    const rand = () => {
      // xorshift: deterministic fuzz without a dependency
      seed ^= seed << 13;
      seed ^= seed >>> 17;
      seed ^= seed << 5;
      return ((seed >>> 0) % 10_000) / 10_000;
    };
    for (let n = 2; n <= 6; n++) {
      let weights = Array.from({ length: n }, () => 1 / n);
      for (let i = 0; i < 500; i++) {
        const index = Math.floor(rand() * n);
        weights = renormalizeWeights(weights, index, rand());
        expect(Math.abs(weightSum(weights) - 1)).toBeLessThanOrEqual(1e-12);
        for (const w of weights) {
          expect(w).toBeGreaterThanOrEqual(0);
          expect(w).toBeLessThanOrEqual(1 + 1e-12);
        }
      }
    }
  });
});

describe("snapshot edits", () => {
  it("score edits clamp into [0,1] and leave the original untouched", () => {
    const next = setDomainScore(DEFAULT_SNAPSHOT, "technical", 0, 1.8);
    expect(next.domainScores.technical[0]).toBe(1);
    expect(DEFAULT_SNAPSHOT.domainScores.technical[0]).toBe(0.5);
    const lower = setDomainScore(next, "security", 1, -3);
    expect(lower.domainScores.security[1]).toBe(0);
  });

  it("weight edits go through renormalization", () => {
    const next = setWeight(DEFAULT_SNAPSHOT, 1, 0.9);
    expect(next.domainWeights[1]).toBeCloseTo(0.9, 12);
    expect(weightSum(next.domainWeights)).toBe(1);
  });

  it("setAllScores saturates every domain", () => {
    const next = setAllScores(DEFAULT_SNAPSHOT, 1);
    for (const domain of ["technical", "security", "operational"] as const) {
      expect(next.domainScores[domain].every((v) => v === 1)).toBe(true);
    }
  });

  it("initialState clones the default snapshot", () => {
    const a = initialState();
    const b = initialState();
    a.workingSnapshot.domainWeights[0] = 0.9;
    expect(b.workingSnapshot.domainWeights[0]).toBe(0.4);
  });

  it("clamp01 normalizes NaN to 0", () => {
    expect(clamp01(Number.NaN)).toBe(0);
  });
});
