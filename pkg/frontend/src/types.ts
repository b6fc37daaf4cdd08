/**
 * JSON shapes of the nsukit HTTP API.  This file is the API schema the
 * console is built against; it mirrors the service's response models and
 * is the only coupling to the engine.
 */

export interface DistEntry {
  value: string;
  prob: number;
}

export interface QudEntryView {
  index: number;
  utt: string;
  q: string;
  fec: string[];
}

export interface MaxQudEntry {
  index: number;
  prob: number;
}

export interface StateView {
  u_a: string;
  u_b: string;
  a_a: DistEntry[];
  a_b: DistEntry[];
  nsu_a: DistEntry[];
  new_fec: string[];
  facts: string[];
  qud: QudEntryView[];
  max_qud: MaxQudEntry[];
  max_qud_index: number;
  text: string;
}

export interface SessionCreated {
  id: string;
  state: StateView;
}

export interface UtteranceRequest {
  text: string;
  speaker?: 'user' | 'system';
  nsu_class?: string;
  semantics?: string;
  answer?: string;
  fec?: string[];
}

export interface UtteranceResponse {
  state: StateView;
  warning: string | null;
  fired: string[];
}

export interface TurnView {
  speaker: string;
  text: string;
  warning: string | null;
  snapshot: string;
}

export interface ClassifyResponse {
  distribution: DistEntry[];
  argmax: string;
  entropy: number;
}

export interface AlTaskView {
  id: number;
  nsu: string;
  antecedent: string;
  entropy: number;
  predicted: DistEntry[];
}

export interface AlNextResponse {
  task: AlTaskView | null;
  remaining: number;
}

export interface AlLabelResponse {
  labeled_count: number;
  accuracy: number;
  f1: number;
}

export interface CurvePoint {
  labeled_count: number;
  accuracy: number;
  precision: number;
  recall: number;
  f1: number;
}

/** The fifteen NSU classes, in taxonomy order; the annotation card shows one button per class. */
export const NSU_CLASSES = [
  'Ack', 'RepAck', 'CE', 'CheckQu', 'Sluice', 'Filler', 'ShortAns',
  'AffAns', 'Reject', 'RepAffAns', 'HelpReject', 'PropMod', 'FactMod',
  'BareModPh', 'Conj',
] as const;

export type NsuClass = (typeof NSU_CLASSES)[number];
