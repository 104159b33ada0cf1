// Scenario state: the editable working snapshot, trajectory controls, the
// last score report, and an optional frozen baseline for comparisons.
//
// Editing invariants: scores clamp to [0, 1] and weight edits renormalize
// proportionally so the displayed weights always sum to 1. Any sequence of
// UI edits therefore yields a snapshot the API accepts.

import type { ProjectionRequest, ScoreReportDoc, SeriesDoc, SnapshotDoc } from "./types";

export interface TrajectoryControls {
  alpha: number;
  beta: number;
  lambda: number;
  i0: number;
  iF: number;
  k: number;
  horizon: number;
  step: number;
  ltMode: "literal" | "prose";
}

export interface FrozenBaseline {
  controls: TrajectoryControls;
  series: SeriesDoc;
}

export interface ScenarioState {
  workingSnapshot: SnapshotDoc;
  trajectoryControls: TrajectoryControls;
  lastScores: ScoreReportDoc | null;
  comparisonBaseline: FrozenBaseline | null;
}

export const DEFAULT_CONTROLS: TrajectoryControls = {
  alpha: 0.2,
  beta: 0.9,
  lambda: 0.5,
  i0: 0.0,
  iF: 1.0,
  k: 1.0,
  horizon: 6.0,
  step: 0.25,
  ltMode: "literal",
};

// mirrors fixtures/snapshot-basic.json so the dashboard is usable with an
// empty store; every number shown still comes back from the API
export const DEFAULT_SNAPSHOT: SnapshotDoc = {
  id: "basic",
  timestamp: "2026-01-15T00:00:00Z",
  label: "Basic readiness fixture",
  domainScores: {
    technical: [0.5, 0.2],
    security: [0.9, 0.4],
    operational: [0.1, 0.8],
  },
  domainWeights: [0.4, 0.6],
  targetState: [0.9, 0.8],
  technicalMatrix: [
    [0.25, 0.5, 0.75],
    [0.1, 0.6, 0.3],
    [0.8, 0.4, 0.2],
  ],
  riskMatrix: {
    entries: [
      [0.2, 0.4, 0.6],
      [0.0, 0.0, 0.0],
      [1.0, 0.5, 0.0],
    ],
    dimensionWeights: [0.5, 0.3, 0.2],
  },
  notes: "",
};

export function initialState(): ScenarioState {
  return {
    workingSnapshot: structuredClone(DEFAULT_SNAPSHOT),
    trajectoryControls: { ...DEFAULT_CONTROLS },
    lastScores: null,
    comparisonBaseline: null,
  };
}

export function clamp01(value: number): number {
  if (Number.isNaN(value)) return 0;
  return Math.min(1, Math.max(0, value));
}

/** Set one weight and proportionally rescale the untouched ones so the vector
 * sums to exactly 1. When the untouched weights are all zero the remainder is
 * split evenly among them. */
export function renormalizeWeights(
  weights: readonly number[],
  editedIndex: number,
  newValue: number,
): number[] {
  const edited = clamp01(newValue);
  if (weights.length === 1) return [1.0];
  const rest = weights.filter((_, i) => i !== editedIndex);
  const restSum = rest.reduce((a, b) => a + b, 0);
  const remainder = 1 - edited;
  const out = weights.map((w, i) => {
    if (i === editedIndex) return edited;
    return restSum > 0 ? (w / restSum) * remainder : remainder / rest.length;
  });
  // pin the float sum to exactly 1 on the last untouched entry
  let fixup = out.length - 1;
  if (fixup === editedIndex) fixup -= 1;
  const sumOthers = out.reduce((a, b, i) => (i === fixup ? a : a + b), 0);
  out[fixup] = 1 - sumOthers;
  if (out[fixup]! < 0) out[fixup] = 0; // guard against -0/underflow noise
  return out;
}

export function weightSum(weights: readonly number[]): number {
  return weights.reduce((a, b) => a + b, 0);
}

export function setDomainScore(
  snapshot: SnapshotDoc,
  domain: keyof SnapshotDoc["domainScores"],
  index: number,
  value: number,
): SnapshotDoc {
  const next = structuredClone(snapshot);
  next.domainScores[domain][index] = clamp01(value);
  return next;
}

export function setWeight(snapshot: SnapshotDoc, index: number, value: number): SnapshotDoc {
  const next = structuredClone(snapshot);
  next.domainWeights = renormalizeWeights(snapshot.domainWeights, index, value);
  return next;
}

export function setAllScores(snapshot: SnapshotDoc, value: number): SnapshotDoc {
  const next = structuredClone(snapshot);
  const v = clamp01(value);
  for (const domain of ["technical", "security", "operational"] as const) {
    next.domainScores[domain] = next.domainScores[domain].map(() => v);
  }
  return next;
}

export function projectionRequest(controls: TrajectoryControls): ProjectionRequest {
  return {
    alpha: controls.alpha,
    beta: controls.beta,
    lambda: controls.lambda,
    i0: controls.i0,
    iF: controls.iF,
    k: controls.k,
    horizon: controls.horizon,
    step: controls.step,
    ltMode: controls.ltMode,
  };
}
