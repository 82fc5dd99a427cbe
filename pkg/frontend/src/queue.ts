// Review-queue controller. Holds the candidate list, the cursor and the
// error banners; every verdict POSTs a decision and then re-reads the
// list so the screen always shows server state. Optimistic updates are
// rolled back when the server rejects a decision.

import { ApiError, CandidateRow, CurationApi } from "./api.js";

export interface QueueFilter {
  frame?: string;
  status?: string;
}

export interface QueueState {
  rows: CandidateRow[];
  cursor: number;
  filter: QueueFilter;
  /** full-width banner: the service could not be reached */
  bannerError: string | null;
  /** per-action message: the service rejected a decision */
  inlineError: string | null;
  loading: boolean;
}

export function countsByStatus(rows: CandidateRow[]): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const row of rows) {
    counts[row.status] = (counts[row.status] ?? 0) + 1;
  }
  return counts;
}

export class ReviewQueue {
  readonly state: QueueState = {
    rows: [],
    cursor: 0,
    filter: {},
    bannerError: null,
    inlineError: null,
    loading: false,
  };

  private listeners: Array<(state: QueueState) => void> = [];

  constructor(
    private readonly api: CurationApi,
    private readonly curator: string = "reviewer",
  ) {}

  subscribe(listener: (state: QueueState) => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  selected(): CandidateRow | null {
    return this.state.rows[this.state.cursor] ?? null;
  }

  next(): void {
    if (this.state.cursor < this.state.rows.length - 1) {
      this.state.cursor += 1;
      this.notify();
    }
  }

  previous(): void {
    if (this.state.cursor > 0) {
      this.state.cursor -= 1;
      this.notify();
    }
  }

  async load(filter: QueueFilter = this.state.filter): Promise<void> {
    this.state.filter = filter;
    this.state.loading = true;
    this.notify();
    try {
      const rows = await this.api.getCandidates(filter);
      this.state.rows = rows;
      this.state.cursor = Math.min(this.state.cursor, Math.max(rows.length - 1, 0));
      this.state.bannerError = null;
    } catch (error) {
      // the stale list is kept on screen; nothing is silently dropped
      this.state.bannerError =
        error instanceof ApiError ? error.message : String(error);
    } finally {
      this.state.loading = false;
      this.notify();
    }
  }

  async decide(verdict: "accept" | "discard", rationale = ""): Promise<boolean> {
    const row = this.selected();
    if (!row) return false;
    const snapshot = row.status;
    row.status = verdict === "accept" ? "accepted" : "discarded";
    this.state.inlineError = null;
    this.notify();
    try {
      await this.api.postDecision({
        term: row.term,
        frame: row.frame,
        verdict,
        rationale,
        curator: this.curator,
      });
    } catch (error) {
      row.status = snapshot;
      this.state.inlineError =
        error instanceof ApiError ? error.message : String(error);
      this.notify();
      return false;
    }
    await this.load();
    return true;
  }

  accept(rationale = ""): Promise<boolean> {
    return this.decide("accept", rationale);
  }

  discard(rationale = ""): Promise<boolean> {
    return this.decide("discard", rationale);
  }
}

export function evidenceLines(row: CandidateRow): string[] {
  // rendered verbatim from the payload fields, one chain per item
  return row.evidence.map((e) => `${e.head} → ${e.verb} [${e.via}]`);
}

export function filterReasonLine(row: CandidateRow): string | null {
  if (!row.filter_reason) return null;
  return `${row.filter_reason.rule} (blocked by ${row.filter_reason.blocker})`;
}
