/**
 * Dialogue pane: type an utterance, watch the dialogue state evolve.
 *
 * The pane is stateless beyond the session id: every render pulls the
 * snapshot and the turn log from the service, so a page refresh rebuilds
 * the identical view.
 */

import { Api } from './api.js';
import { renderHistory, renderState } from './views.js';

export class DialoguePane {
  private sessionId: string | null = null;
  private busy = false;
  private pendingText: string | null = null;

  readonly input: HTMLInputElement;
  readonly sendButton: HTMLButtonElement;
  readonly historyBox: HTMLElement;
  readonly stateBox: HTMLElement;
  readonly banner: HTMLElement;

  constructor(private api: Api, private root: HTMLElement) {
    root.innerHTML = `
      <div class="banner" hidden></div>
      <div class="history-box"></div>
      <form class="utterance-form">
        <input type="text" class="utterance-input" placeholder="Say something..." />
        <button type="submit" class="send">Send</button>
      </form>
      <div class="state-box"></div>`;
    this.banner = root.querySelector('.banner')!;
    this.historyBox = root.querySelector('.history-box')!;
    this.stateBox = root.querySelector('.state-box')!;
    this.input = root.querySelector('.utterance-input')!;
    this.sendButton = root.querySelector('.send')!;
    root.querySelector('.utterance-form')!.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.submit();
    });
    this.banner.addEventListener('click', () => void this.retry());
  }

  get session(): string | null {
    return this.sessionId;
  }

  async start(): Promise<void> {
    const created = await this.api.createSession();
    this.sessionId = created.id;
    await this.refresh();
  }

  /** Re-pull everything from GET endpoints and rebuild the view. */
  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const [{ state }, { turns }] = await Promise.all([
      this.api.getState(this.sessionId),
      this.api.getLog(this.sessionId),
    ]);
    this.historyBox.replaceChildren(renderHistory(turns));
    this.stateBox.replaceChildren(renderState(state));
  }

  /** Send the input-box text; empty input sends nothing. */
  async submit(): Promise<void> {
    const text = this.input.value.trim();
    if (!text || this.busy || !this.sessionId) return;
    await this.post(text);
  }

  private async post(text: string): Promise<void> {
    this.busy = true;
    this.sendButton.disabled = true;
    try {
      await this.api.postUtterance(this.sessionId!, { text });
      this.input.value = '';
      this.hideBanner();
      await this.refresh();
    } catch (error) {
      this.pendingText = text;
      this.showBanner(`Request failed (${String(error)}) - click to retry`);
    } finally {
      this.busy = false;
      this.sendButton.disabled = false;
    }
  }

  async retry(): Promise<void> {
    const text = this.pendingText;
    if (!text || this.busy) return;
    this.pendingText = null;
    await this.post(text);
  }

  private showBanner(message: string): void {
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private hideBanner(): void {
    this.banner.hidden = true;
    this.banner.textContent = '';
  }
}
