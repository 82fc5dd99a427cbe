// Keyboard-first triage: curation volume is hundreds of candidates, so
// every queue action has a single-key binding. Pure mapping, no DOM.

export type QueueAction =
  | "next"
  | "previous"
  | "accept"
  | "discard"
  | "reload"
  | "context";

const BINDINGS: Record<string, QueueAction> = {
  j: "next",
  ArrowDown: "next",
  k: "previous",
  ArrowUp: "previous",
  a: "accept",
  d: "discard",
  r: "reload",
  c: "context",
};

export interface KeyStroke {
  key: string;
  ctrlKey?: boolean;
  metaKey?: boolean;
  altKey?: boolean;
}

export function actionForKey(stroke: KeyStroke): QueueAction | null {
  if (stroke.ctrlKey || stroke.metaKey || stroke.altKey) return null;
  return BINDINGS[stroke.key] ?? null;
}
