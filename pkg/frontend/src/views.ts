/**
 * DOM builders for the two views.  Everything shown is copied verbatim
 * from an API payload; the console never computes probabilities itself.
 */

import type { AlTaskView, DistEntry, StateView, TurnView } from './types.js';
import { NSU_CLASSES } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function formatProb(p: number): string {
  return p.toFixed(4);
}

/** Horizontal probability bars for a distribution. */
export function renderBars(title: string, entries: DistEntry[]): HTMLElement {
  const box = el('div', 'dist');
  box.appendChild(el('h4', 'dist-title', title));
  for (const entry of entries) {
    const row = el('div', 'bar-row');
    row.dataset.value = entry.value;
    row.dataset.prob = formatProb(entry.prob);
    const label = el('span', 'bar-label', entry.value);
    const track = el('span', 'bar-track');
    const fill = el('span', 'bar-fill');
    fill.style.width = `${Math.round(entry.prob * 100)}%`;
    track.appendChild(fill);
    const prob = el('span', 'bar-prob', formatProb(entry.prob));
    row.append(label, track, prob);
    box.appendChild(row);
  }
  return box;
}

export function renderHistory(turns: TurnView[]): HTMLElement {
  const list = el('ul', 'history');
  for (const turn of turns) {
    const item = el('li', `turn turn-${turn.speaker}`,
      `${turn.speaker === 'user' ? 'U' : 'M'}: ${turn.text}`);
    if (turn.warning) {
      item.appendChild(el('span', 'warning', ` (${turn.warning})`));
    }
    list.appendChild(item);
  }
  return list;
}

/** The session snapshot: QUD with max-QUD highlight, facts, act/class bars. */
export function renderState(state: StateView): HTMLElement {
  const box = el('div', 'state-view');

  const qud = el('div', 'qud');
  qud.appendChild(el('h4', undefined, `QUD (size ${state.qud.length})`));
  const maxProbs = new Map(state.max_qud.map((e) => [e.index, e.prob]));
  const list = el('ol', 'qud-list');
  for (const entry of state.qud) {
    const item = el('li', 'qud-entry');
    if (entry.index === state.max_qud_index) item.classList.add('max-qud');
    item.dataset.index = String(entry.index);
    const prob = maxProbs.get(entry.index) ?? 0;
    item.append(
      el('span', 'qud-q', entry.q),
      el('span', 'qud-prob', ` p=${formatProb(prob)}`),
      el('div', 'qud-utt', entry.utt),
    );
    if (entry.fec.length) {
      item.appendChild(el('div', 'qud-fec', `fec: ${entry.fec.join(', ')}`));
    }
    list.appendChild(item);
  }
  qud.appendChild(list);
  box.appendChild(qud);

  const facts = el('div', 'facts');
  facts.appendChild(el('h4', undefined, `Facts (${state.facts.length})`));
  const factList = el('ul', 'fact-list');
  for (const fact of state.facts) {
    factList.appendChild(el('li', 'fact', fact));
  }
  facts.appendChild(factList);
  box.appendChild(facts);

  box.appendChild(renderBars('a_a', state.a_a));
  box.appendChild(renderBars('nsu_a', state.nsu_a));
  if (state.new_fec.length) {
    box.appendChild(el('div', 'new-fec', `new-fec: ${state.new_fec.join(', ')}`));
  }
  return box;
}

export interface AnnotationCallbacks {
  onSubmit(label: string): void;
  onSkip(): void;
}

/** One annotation card: the pair, the model's view, and the label buttons. */
export function renderAnnotationCard(
  task: AlTaskView,
  callbacks: AnnotationCallbacks,
): HTMLElement {
  const card = el('div', 'annotation-card');
  card.dataset.taskId = String(task.id);

  card.appendChild(el('div', 'card-antecedent', `A: ${task.antecedent}`));
  card.appendChild(el('div', 'card-nsu', `B: ${task.nsu}`));
  card.appendChild(el('div', 'card-entropy', `entropy ${task.entropy.toFixed(4)}`));
  card.appendChild(renderBars('predicted', task.predicted));

  let chosen: string | null = null;
  const buttons = el('div', 'class-buttons');
  const submit = el('button', 'submit', 'Label');
  submit.disabled = true;

  for (const cls of NSU_CLASSES) {
    const button = el('button', 'class-button', cls);
    button.addEventListener('click', () => {
      chosen = cls;
      submit.disabled = false;
      for (const other of buttons.querySelectorAll('.class-button')) {
        other.classList.toggle('chosen', other === button);
      }
    });
    buttons.appendChild(button);
  }
  card.appendChild(buttons);

  submit.addEventListener('click', () => {
    if (chosen !== null) callbacks.onSubmit(chosen);
  });
  const skip = el('button', 'skip', 'Skip');
  skip.addEventListener('click', () => callbacks.onSkip());

  const actions = el('div', 'card-actions');
  actions.append(submit, skip);
  card.appendChild(actions);
  return card;
}
