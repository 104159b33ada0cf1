// Optimizer panel: client-side validation before any request, solution
// rendering with a distinct infeasible state, field-anchored 400 errors,
// and a history of runs.
import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api";
import { OptimizerPanel } from "../src/optimizerPanel";
import optimizeParabola from "../fixtures/optimize-parabola.json";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function mount(): HTMLElement {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return root;
}

function setField(root: HTMLElement, field: string, value: string): void {
  const area = root.querySelector<HTMLTextAreaElement>(`textarea[data-field="${field}"]`)!;
  area.value = value;
}

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.replaceChildren();
});

describe("OptimizerPanel", () => {
  it("removing all objectives is a client-side error before any request", async () => {
    const fetchMock = vi.fn();
    vi.stubGlobal("fetch", fetchMock);
    const root = mount();
    const panel = new OptimizerPanel(root, new ApiClient(""));
    setField(root, "objectives", "");
    await panel.run();
    expect(fetchMock).not.toHaveBeenCalled();
    const error = root.querySelector<HTMLElement>('[data-error-for="objectives"]')!;
    expect(error.classList.contains("hidden")).toBe(false);
    expect(error.textContent).toContain("objective");
  });

  it("unparseable variable lines never reach the API", async () => {
    const fetchMock = vi.fn();
    vi.stubGlobal("fetch", fetchMock);
    const root = mount();
    const panel = new OptimizerPanel(root, new ApiClient(""));
    setField(root, "variables", "x, 1.0");  // missing upper bound
    await panel.run();
    expect(fetchMock).not.toHaveBeenCalled();
    expect(
      root.querySelector('[data-error-for="variables"]')!.classList.contains("hidden"),
    ).toBe(false);
  });

  it("renders the solution returned by the API", async () => {
    vi.stubGlobal("fetch", vi.fn().mockImplementation(() => Promise.resolve(jsonResponse(optimizeParabola))));
    const root = mount();
    const panel = new OptimizerPanel(root, new ApiClient(""));
    setField(root, "variables", "x, 0, 1");
    setField(root, "objectives", "-(x - 0.5)^2");
    setField(root, "inequalities", "");
    await panel.run();

    const xCell = root.querySelector<HTMLElement>('[data-variable="x"]')!;
    expect(Number(xCell.textContent)).toBeCloseTo(0.5, 4);
    expect(root.querySelector(".badge.feasible")).not.toBeNull();
    expect(root.querySelector('[data-role="solution"]')!.classList.contains("infeasible")).toBe(
      false,
    );
  });

  it("infeasible solutions are visually distinct and listed as such", async () => {
    const infeasible = {
      ...optimizeParabola,
      feasible: false,
      maxInequalityViolation: 9.0,
    };
    vi.stubGlobal("fetch", vi.fn().mockImplementation(() => Promise.resolve(jsonResponse(infeasible))));
    const root = mount();
    const panel = new OptimizerPanel(root, new ApiClient(""));
    await panel.run();
    expect(root.querySelector('[data-role="solution"]')!.classList.contains("infeasible")).toBe(
      true,
    );
    expect(root.querySelector(".badge.infeasible")).not.toBeNull();
    expect(root.querySelector(".run-list .run.infeasible")).not.toBeNull();
  });

  it("400 responses land next to the field the API names", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse({ error: "expression references undeclared ['z']", field: "objectives" }, 400),
      ),
    );
    const root = mount();
    const panel = new OptimizerPanel(root, new ApiClient(""));
    setField(root, "objectives", "x + z");
    await panel.run();
    const error = root.querySelector<HTMLElement>('[data-error-for="objectives"]')!;
    expect(error.classList.contains("hidden")).toBe(false);
    expect(error.textContent).toContain("undeclared");
  });

  it("two identical runs produce identical history entries", async () => {
    vi.stubGlobal("fetch", vi.fn().mockImplementation(() => Promise.resolve(jsonResponse(optimizeParabola))));
    const root = mount();
    const panel = new OptimizerPanel(root, new ApiClient(""));
    await panel.run();
    await panel.run();
    expect(panel.history).toHaveLength(2);
    expect(panel.history[0]!.solution).toEqual(panel.history[1]!.solution);
    const rows = [...root.querySelectorAll(".run-list .run")].map((n) => n.textContent);
    expect(rows[0]).toBe(rows[1]);
  });
});
