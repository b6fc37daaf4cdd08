/** Thin typed client over the nsukit HTTP API. */

import type {
  AlLabelResponse,
  AlNextResponse,
  ClassifyResponse,
  SessionCreated,
  StateView,
  TurnView,
  UtteranceRequest,
  UtteranceResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class Api {
  constructor(
    private baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      const detail = await response.text();
      throw new ApiError(response.status, detail || response.statusText);
    }
    return (await response.json()) as T;
  }

  createSession(): Promise<SessionCreated> {
    return this.request('POST', '/sessions');
  }

  postUtterance(sessionId: string, body: UtteranceRequest): Promise<UtteranceResponse> {
    return this.request('POST', `/sessions/${sessionId}/utterance`, body);
  }

  getState(sessionId: string): Promise<{ state: StateView }> {
    return this.request('GET', `/sessions/${sessionId}/state`);
  }

  getLog(sessionId: string): Promise<{ turns: TurnView[] }> {
    return this.request('GET', `/sessions/${sessionId}/log`);
  }

  classify(nsu: string, antecedent: string): Promise<ClassifyResponse> {
    return this.request('POST', '/classify', { nsu, antecedent });
  }

  alNext(): Promise<AlNextResponse> {
    return this.request('GET', '/al/next');
  }

  alLabel(taskId: number, label: string): Promise<AlLabelResponse> {
    return this.request('POST', `/al/${taskId}/label`, { label });
  }

  alSkip(taskId: number): Promise<{ remaining: number }> {
    return this.request('POST', `/al/${taskId}/skip`);
  }

  async alCurveCsv(): Promise<string> {
    const response = await this.fetchImpl(this.baseUrl + '/al/curve');
    if (!response.ok) {
      throw new ApiError(response.status, response.statusText);
    }
    return response.text();
  }
}
