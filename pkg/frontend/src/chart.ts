// Minimal dependency-free SVG line chart. Each series becomes one
// <polyline data-series="name">; the baseline overlay reuses the same
// renderer with dashed styling.

export interface ChartSeries {
  name: string;
  color: string;
  times: number[];
  values: number[];
  dashed?: boolean;
}

const WIDTH = 640;
const HEIGHT = 280;
const PAD = 36;

function scale(value: number, lo: number, hi: number, outLo: number, outHi: number): number {
  if (hi === lo) return (outLo + outHi) / 2;
  return outLo + ((value - lo) / (hi - lo)) * (outHi - outLo);
}

export function renderLineChart(container: HTMLElement, series: ChartSeries[]): void {
  const doc = container.ownerDocument;
  const svgNs = "http://www.w3.org/2000/svg";
  const svg = doc.createElementNS(svgNs, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "chart");

  const allT = series.flatMap((s) => s.times);
  const allV = series.flatMap((s) => s.values);
  const tLo = Math.min(0, ...allT);
  const tHi = Math.max(1e-9, ...allT);
  const vLo = Math.min(0, ...allV);
  const vHi = Math.max(1e-9, ...allV);

  // axes
  for (const [x1, y1, x2, y2] of [
    [PAD, HEIGHT - PAD, WIDTH - 8, HEIGHT - PAD],
    [PAD, HEIGHT - PAD, PAD, 8],
  ] as const) {
    const axis = doc.createElementNS(svgNs, "line");
    axis.setAttribute("x1", String(x1));
    axis.setAttribute("y1", String(y1));
    axis.setAttribute("x2", String(x2));
    axis.setAttribute("y2", String(y2));
    axis.setAttribute("class", "axis");
    svg.appendChild(axis);
  }
  const vMaxLabel = doc.createElementNS(svgNs, "text");
  vMaxLabel.setAttribute("x", "4");
  vMaxLabel.setAttribute("y", "16");
  vMaxLabel.setAttribute("class", "axis-label");
  vMaxLabel.textContent = vHi.toPrecision(3);
  svg.appendChild(vMaxLabel);
  const tMaxLabel = doc.createElementNS(svgNs, "text");
  tMaxLabel.setAttribute("x", String(WIDTH - 40));
  tMaxLabel.setAttribute("y", String(HEIGHT - 12));
  tMaxLabel.setAttribute("class", "axis-label");
  tMaxLabel.textContent = `t=${tHi.toPrecision(3)}`;
  svg.appendChild(tMaxLabel);

  for (const s of series) {
    const points = s.times
      .map((t, i) => {
        const x = scale(t, tLo, tHi, PAD, WIDTH - 8);
        const y = scale(s.values[i] ?? 0, vLo, vHi, HEIGHT - PAD, 8);
        return `${x.toFixed(2)},${y.toFixed(2)}`;
      })
      .join(" ");
    const line = doc.createElementNS(svgNs, "polyline");
    line.setAttribute("points", points);
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", s.color);
    line.setAttribute("stroke-width", "2");
    line.setAttribute("data-series", s.name);
    if (s.dashed) line.setAttribute("stroke-dasharray", "6 4");
    svg.appendChild(line);
  }

  container.replaceChildren(svg);
}
