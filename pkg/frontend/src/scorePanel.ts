// Score panel: editable domain scores and weights with live recompute.
// Every edit is debounced (250 ms) into POST /api/score; readouts show the
// literal and normalized values plus every warning verbatim. While a request
// is in flight or failed the previous numbers grey out as stale; failures
// raise a banner with a retry button. No score math happens client-side.

import { ApiClient, ApiError, LatestWins } from "./api";
import { debounce, EDIT_DEBOUNCE_MS } from "./debounce";
import {
  ScenarioState,
  setDomainScore,
  setWeight,
  weightSum,
} from "./state";

const DOMAINS = ["technical", "security", "operational"] as const;

export class ScorePanel {
  private readonly latest = new LatestWins();
  private readonly scheduleRefresh: ReturnType<typeof debounce<[]>>;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: ScenarioState,
    debounceMs: number = EDIT_DEBOUNCE_MS,
  ) {
    this.scheduleRefresh = debounce(() => void this.refresh(), debounceMs);
    this.renderSkeleton();
    this.renderInputs();
  }

  /** Kick the first recompute immediately (no debounce on initial load). */
  async start(): Promise<void> {
    await this.refresh();
  }

  private el<K extends keyof HTMLElementTagNameMap>(tag: K, cls?: string, text?: string) {
    const node = this.root.ownerDocument.createElement(tag);
    if (cls) node.className = cls;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private renderSkeleton(): void {
    this.root.replaceChildren();
    const banner = this.el("div", "banner hidden");
    banner.dataset.role = "error-banner";
    const retry = this.el("button", "retry", "Retry");
    retry.addEventListener("click", () => void this.refresh());
    banner.appendChild(this.el("span", "banner-text", ""));
    banner.appendChild(retry);
    this.root.appendChild(banner);

    const readout = this.el("div", "readout stale");
    readout.dataset.role = "readout";
    this.root.appendChild(readout);

    const inputs = this.el("div", "score-inputs");
    inputs.dataset.role = "inputs";
    this.root.appendChild(inputs);

    const warnings = this.el("ul", "warnings");
    warnings.dataset.role = "warnings";
    this.root.appendChild(warnings);
  }

  private renderInputs(): void {
    const container = this.root.querySelector<HTMLElement>('[data-role="inputs"]')!;
    container.replaceChildren();
    const doc = this.root.ownerDocument;
    const snapshot = this.state.workingSnapshot;
    const n = snapshot.domainWeights.length;

    const table = this.el("table", "input-grid");
    const head = this.el("tr");
    head.appendChild(this.el("th", "", "area"));
    for (const domain of DOMAINS) head.appendChild(this.el("th", "", domain));
    head.appendChild(this.el("th", "", "weight"));
    table.appendChild(head);

    for (let i = 0; i < n; i++) {
      const row = this.el("tr");
      row.appendChild(this.el("td", "", `area ${i + 1}`));
      for (const domain of DOMAINS) {
        const cell = this.el("td");
        const input = doc.createElement("input");
        input.type = "number";
        input.min = "0";
        input.max = "1";
        input.step = "0.05";
        input.value = String(snapshot.domainScores[domain][i]);
        input.dataset.kind = "score";
        input.dataset.domain = domain;
        input.dataset.index = String(i);
        input.addEventListener("input", () => {
          this.state.workingSnapshot = setDomainScore(
            this.state.workingSnapshot,
            domain,
            i,
            Number(input.value),
          );
          this.markStale();
          this.scheduleRefresh();
        });
        cell.appendChild(input);
        row.appendChild(cell);
      }
      const weightCell = this.el("td");
      const weightInput = doc.createElement("input");
      weightInput.type = "number";
      weightInput.min = "0";
      weightInput.max = "1";
      weightInput.step = "0.05";
      weightInput.value = String(snapshot.domainWeights[i]);
      weightInput.dataset.kind = "weight";
      weightInput.dataset.index = String(i);
      weightInput.addEventListener("input", () => {
        this.state.workingSnapshot = setWeight(
          this.state.workingSnapshot,
          i,
          Number(weightInput.value),
        );
        this.syncWeightInputs();
        this.markStale();
        this.scheduleRefresh();
      });
      weightCell.appendChild(weightInput);
      row.appendChild(weightCell);
      table.appendChild(row);
    }
    container.appendChild(table);

    const sum = this.el("div", "weight-sum");
    sum.dataset.role = "weight-sum";
    container.appendChild(sum);
    this.updateWeightSum();
  }

  private syncWeightInputs(): void {
    const weights = this.state.workingSnapshot.domainWeights;
    this.root
      .querySelectorAll<HTMLInputElement>('input[data-kind="weight"]')
      .forEach((input) => {
        const i = Number(input.dataset.index);
        input.value = (weights[i] ?? 0).toFixed(4);
      });
    this.updateWeightSum();
  }

  private updateWeightSum(): void {
    const sum = weightSum(this.state.workingSnapshot.domainWeights);
    const node = this.root.querySelector<HTMLElement>('[data-role="weight-sum"]');
    if (node) node.textContent = `weight sum: ${sum.toFixed(4)}`;
  }

  private markStale(): void {
    this.root.querySelector('[data-role="readout"]')?.classList.add("stale");
  }

  private showError(message: string): void {
    const banner = this.root.querySelector<HTMLElement>('[data-role="error-banner"]')!;
    banner.classList.remove("hidden");
    banner.querySelector(".banner-text")!.textContent = message;
  }

  private clearError(): void {
    this.root.querySelector('[data-role="error-banner"]')!.classList.add("hidden");
  }

  async refresh(): Promise<void> {
    this.markStale();
    try {
      const report = await this.latest.run("score", (signal) =>
        this.api.score(this.state.workingSnapshot, signal),
      );
      if (report === null) return; // superseded by a newer edit
      this.state.lastScores = report;
      this.clearError();
      this.renderReadout();
    } catch (err) {
      const message =
        err instanceof ApiError && err.field
          ? `${err.message} (field: ${err.field})`
          : (err as Error).message;
      this.showError(message);
    }
  }

  private renderReadout(): void {
    const report = this.state.lastScores;
    if (!report) return;
    const readout = this.root.querySelector<HTMLElement>('[data-role="readout"]')!;
    readout.classList.remove("stale");
    readout.replaceChildren();

    const rows: [string, string][] = [
      ["PQR (literal, 0-3)", report.pqr.value.toPrecision(6)],
      ["PQR (normalized)", report.pqr.normalized.toPrecision(6)],
      ["PI (literal, 1/n)", report.pi.literal.toPrecision(6)],
      [`PI (rescaled, n=${report.pi.n})`, report.pi.rescaled.toPrecision(6)],
      ["RS (root sum square)", report.rs.toPrecision(6)],
    ];
    if (report.riskVector) {
      rows.push(["risk vector", report.riskVector.map((r) => r.toPrecision(4)).join(", ")]);
    }
    for (const [label, value] of rows) {
      const row = this.el("div", "metric");
      row.appendChild(this.el("span", "metric-label", label));
      const num = this.el("span", "metric-value", value);
      num.dataset.metric = label;
      row.appendChild(num);
      readout.appendChild(row);
    }

    const warnings = this.root.querySelector<HTMLElement>('[data-role="warnings"]')!;
    warnings.replaceChildren();
    for (const warning of report.warnings) {
      warnings.appendChild(this.el("li", "warning", warning));
    }
  }
}
