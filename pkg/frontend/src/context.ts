// Render model for the term-context panel: the ancestry of the selected
// candidate as labeled chains, exactly in the order the service reports
// (nearest ancestors first).

import { AncestorEntry, ApiError, CurationApi, TermContext } from "./api.js";

export interface ContextLine {
  relation: "is_a" | "part_of";
  id: string;
  name: string;
}

export function ancestorLines(context: TermContext): ContextLine[] {
  const lines: ContextLine[] = [];
  for (const entry of context.is_a_ancestors) {
    lines.push({ relation: "is_a", id: entry.id, name: entry.name });
  }
  for (const entry of context.part_of_ancestors) {
    lines.push({ relation: "part_of", id: entry.id, name: entry.name });
  }
  return lines;
}

export interface ContextPanelState {
  context: TermContext | null;
  error: string | null;
}

export class TermContextPanel {
  readonly state: ContextPanelState = { context: null, error: null };

  constructor(private readonly api: CurationApi) {}

  async show(termId: string): Promise<void> {
    try {
      this.state.context = await this.api.getTerm(termId);
      this.state.error = null;
    } catch (error) {
      this.state.context = null;
      this.state.error =
        error instanceof ApiError && error.status === 404
          ? `unknown term ${termId}`
          : String(error);
    }
  }

  lines(): ContextLine[] {
    return this.state.context ? ancestorLines(this.state.context) : [];
  }
}

export function formatAncestor(entry: AncestorEntry): string {
  return `${entry.id} ${entry.name}`;
}
