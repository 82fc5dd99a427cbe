// Typed client for the curation service HTTP API. All reads are GETs and
// the single mutation is POST /decisions; nothing else ever writes.

export interface EvidenceItem {
  head: string;
  verb: string;
  via: string;
}

export interface FilterReason {
  rule: string;
  blocker: string;
}

export interface CandidateRow {
  term: string;
  term_name: string;
  frame: string;
  frame_definition: string;
  evidence: EvidenceItem[];
  status: string;
  filter_reason: FilterReason | null;
}

export interface FrameInfo {
  name: string;
  definition: string;
  lexical_units: { lemma: string; pos: string }[];
  frame_elements: string[];
}

export interface AncestorEntry {
  id: string;
  name: string;
}

export interface TermContext {
  id: string;
  name: string;
  namespace: string;
  obsolete: boolean;
  synonyms: string[];
  is_a_ancestors: AncestorEntry[];
  part_of_ancestors: AncestorEntry[];
}

export interface DecisionPayload {
  term?: string;
  verb?: string;
  frame: string;
  verdict: "accept" | "discard";
  rationale?: string;
  curator?: string;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

export class CurationApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (error) {
      throw new ApiError(`service unreachable: ${String(error)}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: unknown };
        if (body && body.detail !== undefined) detail = JSON.stringify(body.detail);
      } catch {
        // keep the status text
      }
      throw new ApiError(`${response.status}: ${detail}`, response.status);
    }
    return (await response.json()) as T;
  }

  getFrames(): Promise<FrameInfo[]> {
    return this.request<FrameInfo[]>("/frames");
  }

  getCandidates(filter: { frame?: string; status?: string } = {}): Promise<CandidateRow[]> {
    const params = new URLSearchParams();
    if (filter.frame) params.set("frame", filter.frame);
    if (filter.status) params.set("status", filter.status);
    const query = params.toString();
    return this.request<CandidateRow[]>(`/candidates${query ? `?${query}` : ""}`);
  }

  getTerm(termId: string): Promise<TermContext> {
    return this.request<TermContext>(`/terms/${encodeURIComponent(termId)}`);
  }

  postDecision(decision: DecisionPayload): Promise<Record<string, string>> {
    return this.request<Record<string, string>>("/decisions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(decision),
    });
  }
}
