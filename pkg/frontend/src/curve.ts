/** Learning-curve parsing and a no-dependency SVG chart. */

import type { CurvePoint } from './types.js';

export function parseCurveCsv(csv: string): CurvePoint[] {
  const lines = csv.trim().split('\n');
  if (lines.length === 0) return [];
  const header = lines[0].split(',');
  const points: CurvePoint[] = [];
  for (const line of lines.slice(1)) {
    if (!line.trim()) continue;
    const cells = line.split(',');
    const row: Record<string, number> = {};
    header.forEach((name, i) => {
      row[name] = Number(cells[i]);
    });
    points.push({
      labeled_count: row['labeled_count'],
      accuracy: row['accuracy'],
      precision: row['precision'],
      recall: row['recall'],
      f1: row['f1'],
    });
  }
  return points;
}

const SVG_NS = 'http://www.w3.org/2000/svg';
const WIDTH = 420;
const HEIGHT = 180;
const PAD = 28;

function polyline(points: CurvePoint[], metric: 'accuracy' | 'f1',
                  xMin: number, xMax: number): string {
  const span = Math.max(1, xMax - xMin);
  return points
    .map((p) => {
      const x = PAD + ((p.labeled_count - xMin) / span) * (WIDTH - 2 * PAD);
      const y = HEIGHT - PAD - p[metric] * (HEIGHT - 2 * PAD);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(' ');
}

/** Accuracy and F1 against labeled count, rebuilt from scratch each update. */
export function renderCurve(points: CurvePoint[]): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute('class', 'curve');
  svg.dataset.points = String(points.length);
  if (points.length === 0) return svg;

  const xMin = points[0].labeled_count;
  const xMax = points[points.length - 1].labeled_count;

  const axis = document.createElementNS(SVG_NS, 'path');
  axis.setAttribute('d',
    `M ${PAD} ${PAD} L ${PAD} ${HEIGHT - PAD} L ${WIDTH - PAD} ${HEIGHT - PAD}`);
  axis.setAttribute('class', 'axis');
  axis.setAttribute('fill', 'none');
  axis.setAttribute('stroke', '#777');
  svg.appendChild(axis);

  for (const [metric, color] of [['accuracy', '#2a7ae2'], ['f1', '#d95f02']] as const) {
    const line = document.createElementNS(SVG_NS, 'polyline');
    line.setAttribute('points', polyline(points, metric, xMin, xMax));
    line.setAttribute('fill', 'none');
    line.setAttribute('stroke', color);
    line.setAttribute('stroke-width', '1.5');
    line.setAttribute('class', `curve-${metric}`);
    svg.appendChild(line);
  }

  const last = points[points.length - 1];
  const label = document.createElementNS(SVG_NS, 'text');
  label.setAttribute('x', String(PAD));
  label.setAttribute('y', String(PAD - 8));
  label.setAttribute('class', 'curve-label');
  label.textContent =
    `n=${last.labeled_count} acc=${last.accuracy.toFixed(3)} f1=${last.f1.toFixed(3)}`;
  svg.appendChild(label);
  return svg;
}
