// Trajectory panel: sliders for the transformation parameters, a five-series
// chart re-fetched from /api/project on every change, a literal/prose toggle
// for the long-term curve, and a freezable baseline overlay. Slider bounds
// come from the served projection schema (form generation from schema).

import { ApiClient, ApiError, LatestWins } from "./api";
import { renderLineChart, ChartSeries } from "./chart";
import { debounce, EDIT_DEBOUNCE_MS } from "./debounce";
import { projectionRequest, ScenarioState, TrajectoryControls } from "./state";
import type { SeriesDoc } from "./types";

const SERIES_COLORS: Record<string, string> = {
  P: "#2563eb",
  I: "#059669",
  ST: "#d97706",
  MT: "#7c3aed",
  LT: "#dc2626",
};

interface SliderSpec {
  key: keyof TrajectoryControls;
  label: string;
  min: number;
  max: number;
  step: number;
}

const FALLBACK_SLIDERS: SliderSpec[] = [
  { key: "alpha", label: "alpha (initial preparedness)", min: 0, max: 1, step: 0.01 },
  { key: "beta", label: "beta (target preparedness)", min: 0, max: 1, step: 0.01 },
  { key: "lambda", label: "lambda (transformation rate)", min: 0.01, max: 4, step: 0.01 },
  { key: "i0", label: "i0 (initial implementation)", min: 0, max: 1, step: 0.01 },
  { key: "iF", label: "iF (final implementation)", min: 0, max: 1, step: 0.01 },
  { key: "k", label: "k (implementation rate)", min: 0.01, max: 4, step: 0.01 },
  { key: "horizon", label: "horizon (periods)", min: 1, max: 20, step: 0.5 },
];

type NumericSchema = { minimum?: number; maximum?: number; exclusiveMinimum?: number };

export function slidersFromSchema(schema: Record<string, unknown> | null): SliderSpec[] {
  if (!schema) return FALLBACK_SLIDERS;
  const properties = (schema.properties ?? {}) as Record<string, NumericSchema>;
  return FALLBACK_SLIDERS.map((spec) => {
    const prop = properties[spec.key === "lambda" ? "lambda" : spec.key];
    if (!prop) return spec;
    const min =
      prop.minimum ?? (prop.exclusiveMinimum !== undefined ? prop.exclusiveMinimum + spec.step : spec.min);
    const max = prop.maximum ?? spec.max;
    return { ...spec, min, max };
  });
}

export class TrajectoryPanel {
  private readonly latest = new LatestWins();
  private readonly scheduleRefresh: ReturnType<typeof debounce<[]>>;
  private lastSeries: SeriesDoc | null = null;
  private sliders: SliderSpec[] = FALLBACK_SLIDERS;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: ScenarioState,
    debounceMs: number = EDIT_DEBOUNCE_MS,
  ) {
    this.scheduleRefresh = debounce(() => void this.refresh(), debounceMs);
  }

  async start(): Promise<void> {
    let schema: Record<string, unknown> | null = null;
    try {
      schema = await this.api.schema("projection");
    } catch {
      schema = null; // fall back to built-in slider bounds
    }
    this.sliders = slidersFromSchema(schema);
    this.renderControls();
    await this.refresh();
  }

  private el<K extends keyof HTMLElementTagNameMap>(tag: K, cls?: string, text?: string) {
    const node = this.root.ownerDocument.createElement(tag);
    if (cls) node.className = cls;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private renderControls(): void {
    this.root.replaceChildren();
    const doc = this.root.ownerDocument;

    const banner = this.el("div", "banner hidden");
    banner.dataset.role = "error-banner";
    const retry = this.el("button", "retry", "Retry");
    retry.addEventListener("click", () => void this.refresh());
    banner.appendChild(this.el("span", "banner-text"));
    banner.appendChild(retry);
    this.root.appendChild(banner);

    const controls = this.el("div", "sliders");
    for (const spec of this.sliders) {
      const wrap = this.el("label", "slider");
      wrap.appendChild(this.el("span", "slider-label", spec.label));
      const input = doc.createElement("input");
      input.type = "range";
      input.min = String(spec.min);
      input.max = String(spec.max);
      input.step = String(spec.step);
      input.value = String(this.state.trajectoryControls[spec.key]);
      input.dataset.control = spec.key;
      const value = this.el("span", "slider-value", String(this.state.trajectoryControls[spec.key]));
      input.addEventListener("input", () => {
        (this.state.trajectoryControls[spec.key] as number) = Number(input.value);
        value.textContent = input.value;
        this.scheduleRefresh();
      });
      wrap.appendChild(input);
      wrap.appendChild(value);
      controls.appendChild(wrap);
    }

    const ltToggle = this.el("label", "lt-toggle");
    ltToggle.appendChild(this.el("span", "slider-label", "long-term mode"));
    const select = doc.createElement("select");
    select.dataset.control = "ltMode";
    for (const mode of ["literal", "prose"]) {
      const option = doc.createElement("option");
      option.value = mode;
      option.textContent = mode;
      select.appendChild(option);
    }
    select.value = this.state.trajectoryControls.ltMode;
    select.addEventListener("change", () => {
      this.state.trajectoryControls.ltMode = select.value as "literal" | "prose";
      this.scheduleRefresh();
    });
    ltToggle.appendChild(select);
    controls.appendChild(ltToggle);

    const freeze = doc.createElement("button");
    freeze.textContent = "Freeze baseline";
    freeze.dataset.role = "freeze";
    freeze.addEventListener("click", () => {
      if (this.lastSeries) {
        this.state.comparisonBaseline = {
          controls: { ...this.state.trajectoryControls },
          series: this.lastSeries,
        };
        this.renderChart();
      }
    });
    controls.appendChild(freeze);

    const clear = doc.createElement("button");
    clear.textContent = "Clear baseline";
    clear.dataset.role = "clear-baseline";
    clear.addEventListener("click", () => {
      this.state.comparisonBaseline = null;
      this.renderChart();
    });
    controls.appendChild(clear);

    this.root.appendChild(controls);
    const chart = this.el("div", "chart-host");
    chart.dataset.role = "chart";
    this.root.appendChild(chart);
    const legend = this.el("div", "legend");
    for (const [name, color] of Object.entries(SERIES_COLORS)) {
      const item = this.el("span", "legend-item", name);
      item.style.color = color;
      legend.appendChild(item);
    }
    this.root.appendChild(legend);
  }

  async refresh(): Promise<void> {
    try {
      const series = await this.latest.run("project", (signal) =>
        this.api.project(projectionRequest(this.state.trajectoryControls), signal),
      );
      if (series === null) return;
      this.lastSeries = series;
      this.root.querySelector('[data-role="error-banner"]')?.classList.add("hidden");
      this.renderChart();
    } catch (err) {
      const banner = this.root.querySelector<HTMLElement>('[data-role="error-banner"]');
      if (banner) {
        banner.classList.remove("hidden");
        banner.querySelector(".banner-text")!.textContent =
          err instanceof ApiError ? err.message : (err as Error).message;
      }
    }
  }

  private renderChart(): void {
    if (!this.lastSeries) return;
    const host = this.root.querySelector<HTMLElement>('[data-role="chart"]');
    if (!host) return;
    const series: ChartSeries[] = [
      { name: "P", color: SERIES_COLORS.P!, times: this.lastSeries.times, values: this.lastSeries.preparedness },
      { name: "I", color: SERIES_COLORS.I!, times: this.lastSeries.times, values: this.lastSeries.progress },
      { name: "ST", color: SERIES_COLORS.ST!, times: this.lastSeries.times, values: this.lastSeries.shortTerm },
      { name: "MT", color: SERIES_COLORS.MT!, times: this.lastSeries.times, values: this.lastSeries.mediumTerm },
      { name: "LT", color: SERIES_COLORS.LT!, times: this.lastSeries.times, values: this.lastSeries.longTerm },
    ];
    const baseline = this.state.comparisonBaseline;
    if (baseline) {
      series.push({
        name: "P (baseline)",
        color: SERIES_COLORS.P!,
        times: baseline.series.times,
        values: baseline.series.preparedness,
        dashed: true,
      });
      series.push({
        name: "I (baseline)",
        color: SERIES_COLORS.I!,
        times: baseline.series.times,
        values: baseline.series.progress,
        dashed: true,
      });
    }
    renderLineChart(host, series);
  }

  /** Latest fetched series (test seam; the chart renders exactly this). */
  get currentSeries(): SeriesDoc | null {
    return this.lastSeries;
  }
}
