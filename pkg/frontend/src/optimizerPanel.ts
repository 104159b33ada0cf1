// Optimizer panel: editable variables/objectives/constraints, a run button
// POSTing /api/optimize, a solution table (infeasible results visually
// distinct), and a history of previous runs for comparison. Client-side
// validation stops requests that would violate the problem invariants
// (at least one variable and one objective); 400 responses surface next to
// the field the API named.

import { ApiClient, ApiError, LatestWins } from "./api";
import type { ProblemDoc, SolutionDoc } from "./types";

interface RunRecord {
  problem: ProblemDoc;
  solution: SolutionDoc;
}

const DEFAULT_PROBLEM: ProblemDoc = {
  variables: [
    { name: "x", lo: 0, hi: 1 },
    { name: "y", lo: 0, hi: 1 },
  ],
  objectives: ["x + y"],
  inequalities: ["x + y - 1"],
  equalities: [],
  t: 0,
};

export class OptimizerPanel {
  private readonly latest = new LatestWins();
  readonly history: RunRecord[] = [];
  problem: ProblemDoc = structuredClone(DEFAULT_PROBLEM);

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.render();
  }

  private el<K extends keyof HTMLElementTagNameMap>(tag: K, cls?: string, text?: string) {
    const node = this.root.ownerDocument.createElement(tag);
    if (cls) node.className = cls;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private render(): void {
    this.root.replaceChildren();
    const doc = this.root.ownerDocument;

    const form = this.el("div", "problem-form");
    const fields: [keyof ProblemDoc & string, string, string][] = [
      ["variables", "variables (name, lo, hi per line)", this.problem.variables.map((v) => `${v.name}, ${v.lo}, ${v.hi}`).join("\n")],
      ["objectives", "objectives (one expression per line)", this.problem.objectives.join("\n")],
      ["inequalities", "inequalities (g <= 0)", this.problem.inequalities.join("\n")],
      ["equalities", "equalities (h = 0)", this.problem.equalities.join("\n")],
    ];
    for (const [key, label, value] of fields) {
      const wrap = this.el("label", "problem-field");
      wrap.appendChild(this.el("span", "field-label", label));
      const area = doc.createElement("textarea");
      area.rows = 3;
      area.value = value;
      area.dataset.field = key;
      wrap.appendChild(area);
      const error = this.el("div", "field-error hidden");
      error.dataset.errorFor = key;
      wrap.appendChild(error);
      form.appendChild(wrap);
    }

    const tWrap = this.el("label", "problem-field");
    tWrap.appendChild(this.el("span", "field-label", "t (fixed time for this solve)"));
    const tInput = doc.createElement("input");
    tInput.type = "number";
    tInput.step = "0.1";
    tInput.value = String(this.problem.t);
    tInput.dataset.field = "t";
    tWrap.appendChild(tInput);
    form.appendChild(tWrap);

    const run = doc.createElement("button");
    run.textContent = "Run optimization";
    run.dataset.role = "run";
    run.addEventListener("click", () => void this.run());
    form.appendChild(run);
    this.root.appendChild(form);

    const result = this.el("div", "solution");
    result.dataset.role = "solution";
    this.root.appendChild(result);

    const history = this.el("div", "history");
    history.dataset.role = "history";
    this.root.appendChild(history);
  }

  private clearFieldErrors(): void {
    this.root.querySelectorAll<HTMLElement>("[data-error-for]").forEach((node) => {
      node.classList.add("hidden");
      node.textContent = "";
    });
  }

  private showFieldError(field: string, message: string): void {
    // the API names fields like "variables[0].lo": anchor on the prefix
    const key = field.split(/[.[]/, 1)[0] ?? field;
    const node =
      this.root.querySelector<HTMLElement>(`[data-error-for="${key}"]`) ??
      this.root.querySelector<HTMLElement>('[data-error-for="objectives"]');
    if (node) {
      node.classList.remove("hidden");
      node.textContent = message;
    }
  }

  /** Parse the textareas into a problem document; null when invalid. */
  collectProblem(): ProblemDoc | null {
    this.clearFieldErrors();
    const read = (field: string): string[] =>
      (this.root.querySelector<HTMLTextAreaElement>(`textarea[data-field="${field}"]`)?.value ?? "")
        .split("\n")
        .map((line) => line.trim())
        .filter((line) => line.length > 0);

    const variables: ProblemDoc["variables"] = [];
    for (const line of read("variables")) {
      const parts = line.split(",").map((p) => p.trim());
      const lo = Number(parts[1]);
      const hi = Number(parts[2]);
      if (parts.length !== 3 || !parts[0] || Number.isNaN(lo) || Number.isNaN(hi)) {
        this.showFieldError("variables", `cannot parse variable line: ${line}`);
        return null;
      }
      if (!(lo < hi)) {
        this.showFieldError("variables", `variable ${parts[0]}: lo must be below hi`);
        return null;
      }
      variables.push({ name: parts[0], lo, hi });
    }
    if (variables.length === 0) {
      this.showFieldError("variables", "at least one decision variable is required");
      return null;
    }
    const objectives = read("objectives");
    if (objectives.length === 0) {
      this.showFieldError("objectives", "at least one objective is required");
      return null;
    }
    const tRaw = this.root.querySelector<HTMLInputElement>('input[data-field="t"]')?.value ?? "0";
    return {
      variables,
      objectives,
      inequalities: read("inequalities"),
      equalities: read("equalities"),
      t: Number(tRaw) || 0,
    };
  }

  async run(): Promise<void> {
    const problem = this.collectProblem();
    if (problem === null) return; // invalid state never reaches the API
    this.problem = problem;
    const host = this.root.querySelector<HTMLElement>('[data-role="solution"]')!;
    host.classList.add("stale");
    try {
      const solution = await this.latest.run("optimize", (signal) =>
        this.api.optimize(problem, signal),
      );
      if (solution === null) return;
      this.history.push({ problem: structuredClone(problem), solution });
      this.renderSolution(solution);
      this.renderHistory();
    } catch (err) {
      if (err instanceof ApiError && err.field) {
        this.showFieldError(err.field, err.message);
      } else {
        this.showFieldError("objectives", (err as Error).message);
      }
      host.classList.remove("stale");
    }
  }

  private renderSolution(solution: SolutionDoc): void {
    const host = this.root.querySelector<HTMLElement>('[data-role="solution"]')!;
    host.replaceChildren();
    host.classList.remove("stale");
    host.classList.toggle("infeasible", !solution.feasible);

    const badge = this.el(
      "div",
      solution.feasible ? "badge feasible" : "badge infeasible",
      solution.feasible ? "feasible" : "infeasible",
    );
    host.appendChild(badge);

    const table = this.el("table", "assignment");
    for (const [name, value] of Object.entries(solution.assignment)) {
      const row = this.el("tr");
      row.appendChild(this.el("td", "", name));
      const cell = this.el("td", "", value.toPrecision(6));
      cell.dataset.variable = name;
      row.appendChild(cell);
      table.appendChild(row);
    }
    host.appendChild(table);

    host.appendChild(
      this.el("div", "objective", `objective: ${solution.objectiveValue.toPrecision(6)}`),
    );
    host.appendChild(
      this.el(
        "div",
        "violations",
        `violations: ineq ${solution.maxInequalityViolation.toExponential(2)}, ` +
          `eq ${solution.maxEqualityViolation.toExponential(2)}`,
      ),
    );
  }

  private renderHistory(): void {
    const host = this.root.querySelector<HTMLElement>('[data-role="history"]')!;
    host.replaceChildren();
    if (this.history.length === 0) return;
    host.appendChild(this.el("h3", "", "previous runs"));
    const list = this.el("ol", "run-list");
    for (const record of this.history) {
      const item = this.el(
        "li",
        record.solution.feasible ? "run" : "run infeasible",
        `${record.problem.objectives.join("; ")} -> ` +
          `${record.solution.objectiveValue.toPrecision(6)} ` +
          `(${record.solution.feasible ? "feasible" : "infeasible"})`,
      );
      list.appendChild(item);
    }
    host.appendChild(list);
  }
}
