/**
 * Annotation pane: label the most informative NSU the learner asks for,
 * and watch the learning curve extend one point per labeled instance.
 */

import { Api } from './api.js';
import { parseCurveCsv, renderCurve } from './curve.js';
import { renderAnnotationCard } from './views.js';

export class AnnotationPane {
  private currentTaskId: number | null = null;
  private busy = false;

  readonly cardBox: HTMLElement;
  readonly statusBox: HTMLElement;
  readonly curveBox: HTMLElement;

  constructor(private api: Api, private root: HTMLElement) {
    root.innerHTML = `
      <div class="al-status"></div>
      <div class="card-box"></div>
      <div class="curve-box"></div>`;
    this.statusBox = root.querySelector('.al-status')!;
    this.cardBox = root.querySelector('.card-box')!;
    this.curveBox = root.querySelector('.curve-box')!;
  }

  async start(): Promise<void> {
    await Promise.all([this.loadNext(), this.refreshCurve()]);
  }

  async loadNext(): Promise<void> {
    const next = await this.api.alNext();
    if (!next.task) {
      this.currentTaskId = null;
      this.cardBox.replaceChildren();
      this.statusBox.textContent = 'Pool exhausted - nothing left to annotate.';
      return;
    }
    this.currentTaskId = next.task.id;
    this.statusBox.textContent = `${next.remaining} instances in the pool`;
    const card = renderAnnotationCard(next.task, {
      onSubmit: (label) => void this.label(label),
      onSkip: () => void this.skip(),
    });
    this.cardBox.replaceChildren(card);
  }

  async refreshCurve(): Promise<void> {
    const csv = await this.api.alCurveCsv();
    const points = parseCurveCsv(csv);
    this.curveBox.replaceChildren(renderCurve(points));
    const last = points[points.length - 1];
    if (last) {
      this.curveBox.dataset.labeledCount = String(last.labeled_count);
      this.curveBox.dataset.accuracy = last.accuracy.toFixed(6);
    }
  }

  async label(label: string): Promise<void> {
    if (this.busy || this.currentTaskId === null) return;
    this.busy = true;
    try {
      const result = await this.api.alLabel(this.currentTaskId, label);
      this.statusBox.textContent =
        `labeled_count ${result.labeled_count}, dev accuracy ${result.accuracy.toFixed(3)}`;
      this.statusBox.dataset.labeledCount = String(result.labeled_count);
      await this.refreshCurve();
      await this.loadNext();
    } finally {
      this.busy = false;
    }
  }

  async skip(): Promise<void> {
    if (this.busy || this.currentTaskId === null) return;
    this.busy = true;
    try {
      await this.api.alSkip(this.currentTaskId);
      await this.loadNext();
    } finally {
      this.busy = false;
    }
  }
}
