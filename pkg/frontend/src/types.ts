// Document shapes exchanged with the local HTTP API. Field names mirror the
// JSON schemas served at /api/schema/{name}.

export interface DomainScores {
  technical: number[];
  security: number[];
  operational: number[];
}

export interface RiskMatrixDoc {
  entries: number[][];
  dimensionWeights: number[];
}

export interface SnapshotDoc {
  id?: string;
  timestamp?: string;
  label?: string;
  notes?: string;
  domainScores: DomainScores;
  domainWeights: number[];
  perDomainWeights?: DomainScores;
  technicalMatrix?: number[][];
  riskMatrix?: RiskMatrixDoc;
  targetState?: number[];
}

export interface ScoreReportDoc {
  snapshotId: string;
  label: string;
  pqr: { value: number; normalized: number };
  pi: { literal: number; rescaled: number; n: number };
  rs: number;
  current: number[];
  gaps: { values: number[]; ranking: number[] } | null;
  riskVector: number[] | null;
  warnings: string[];
}

export interface ProjectionRequest {
  alpha: number;
  beta: number;
  lambda: number;
  i0: number;
  iF: number;
  k: number;
  horizon: number;
  step: number;
  ltMode: "literal" | "prose";
  actions?: { name: string; impact: number; horizon: "short" | "medium" | "long" }[];
}

export interface SeriesDoc {
  times: number[];
  preparedness: number[];
  progress: number[];
  shortTerm: number[];
  mediumTerm: number[];
  longTerm: number[];
}

export interface ProblemDoc {
  variables: { name: string; lo: number; hi: number }[];
  objectives: string[];
  inequalities: string[];
  equalities: string[];
  t: number;
}

export interface SolutionDoc {
  assignment: Record<string, number>;
  objectiveValue: number;
  maxInequalityViolation: number;
  maxEqualityViolation: number;
  feasible: boolean;
  diagnostics: { startsTried: number; iterations: number; penaltyAtExit: number };
}

export interface IndexEntry {
  id: string;
  timestamp: string;
  label: string;
}
