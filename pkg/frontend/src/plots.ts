// SVG curve rendering: two overlaid word spectra and one correlation
// curve with its peak annotated. Plain polylines, no dependencies.

import { CorrelationSeries, SpectrumSeries } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 460;
const HEIGHT = 180;
const PAD = 28;

function polylinePoints(xs: number[], ys: number[]): string {
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1e-12);
  const xSpan = xMax - xMin || 1;
  const points: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    const x = PAD + ((xs[i] - xMin) / xSpan) * (WIDTH - 2 * PAD);
    const y = HEIGHT - PAD - (ys[i] / yMax) * (HEIGHT - 2 * PAD);
    points.push(`${x.toFixed(1)},${y.toFixed(1)}`);
  }
  return points.join(" ");
}

function makeSvg(className: string): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", className);
  const axis = document.createElementNS(SVG_NS, "line");
  axis.setAttribute("x1", String(PAD));
  axis.setAttribute("y1", String(HEIGHT - PAD));
  axis.setAttribute("x2", String(WIDTH - PAD));
  axis.setAttribute("y2", String(HEIGHT - PAD));
  axis.setAttribute("class", "axis");
  svg.appendChild(axis);
  return svg;
}

function addCurve(svg: SVGSVGElement, xs: number[], ys: number[],
                  className: string, series: string): void {
  const line = document.createElementNS(SVG_NS, "polyline");
  line.setAttribute("points", polylinePoints(xs, ys));
  line.setAttribute("class", className);
  line.setAttribute("data-series", series);
  line.setAttribute("fill", "none");
  svg.appendChild(line);
}

export function renderSpectra(
  container: HTMLElement,
  query: SpectrumSeries,
  reference: SpectrumSeries,
): void {
  const svg = makeSvg("spectra-plot");
  // a shared vertical scale keeps the two curves comparable
  const yMax = Math.max(...query.magnitude, ...reference.magnitude, 1e-12);
  const scale = (s: SpectrumSeries) => s.magnitude.map((m) => m / yMax);
  addCurve(svg, reference.frequency_hz, scale(reference), "fft-curve reference", "reference");
  addCurve(svg, query.frequency_hz, scale(query), "fft-curve query", "query");
  container.appendChild(svg);
}

export function renderCorrelation(
  container: HTMLElement,
  correlation: CorrelationSeries,
  peakLagHz: number,
  peakValue: number,
): void {
  const svg = makeSvg("correlation-plot");
  addCurve(svg, correlation.lag_hz, correlation.value, "correlation-curve", "correlation");

  const xs = correlation.lag_hz;
  const xMin = xs[0];
  const xSpan = xs[xs.length - 1] - xMin || 1;
  const yMax = Math.max(...correlation.value, 1e-12);
  const px = PAD + ((peakLagHz - xMin) / xSpan) * (WIDTH - 2 * PAD);
  const py = HEIGHT - PAD - (peakValue / yMax) * (HEIGHT - 2 * PAD);

  const marker = document.createElementNS(SVG_NS, "circle");
  marker.setAttribute("cx", px.toFixed(1));
  marker.setAttribute("cy", py.toFixed(1));
  marker.setAttribute("r", "4");
  marker.setAttribute("class", "peak-marker");
  svg.appendChild(marker);

  const annotation = document.createElementNS(SVG_NS, "text");
  annotation.setAttribute("x", Math.min(px + 8, WIDTH - 120).toFixed(1));
  annotation.setAttribute("y", Math.max(py - 8, 14).toFixed(1));
  annotation.setAttribute("class", "peak-annotation");
  const sign = peakLagHz >= 0 ? "+" : "";
  annotation.textContent = `peak ${peakValue.toFixed(2)} @ ${sign}${peakLagHz.toFixed(1)} Hz`;
  svg.appendChild(annotation);

  container.appendChild(svg);
}
