"""Human review service and the append-only decision log.

Decisions are JSON Lines, one verdict per line, keyed by either
(verb, frame) for stage-1 assignments or (term, frame) for mapping
candidates. The log is never rewritten: state is always a pure replay of
its lines, so restarting the service (or re-running the batch pipeline
with ``--decisions``) reproduces exactly the curated state. A single
writer lock serializes appends; reads see immutable snapshots.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from pydantic import BaseModel

from . import __version__
from .aligner import (
    FrameAssignment,
    MappingCandidate,
    MappingReport,
    apply_assignment_curation,
    apply_curation,
    classify_mappings,
)
from .lexframes import FrameIndex
from .ontology import IS_A, PART_OF, OntologyGraph, UnknownTermError

VERDICTS = frozenset({"accept", "discard"})

# First line of an exported decision file; replay skips it.
EXPORT_HEADER = {"format": "frame-align-decisions", "version": 1}


class DecisionLogError(ValueError):
    """Corrupt or inconsistent decision log content."""


@dataclass(frozen=True)
class CurationDecision:
    frame: str
    verdict: str
    term: str | None = None
    verb: str | None = None
    rationale: str = ""
    curator: str = ""
    timestamp: str = ""

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise DecisionLogError(f"verdict must be accept or discard, got {self.verdict!r}")
        if (self.term is None) == (self.verb is None):
            raise DecisionLogError("decision needs exactly one of term or verb")
        if not self.frame:
            raise DecisionLogError("decision without a frame")

    def key(self) -> tuple[str, str, str]:
        if self.term is not None:
            return ("mapping", self.term, self.frame)
        return ("assignment", str(self.verb), self.frame)

    def as_dict(self) -> dict[str, str]:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        return out


def decision_from_dict(raw: dict, line_number: int | None = None) -> CurationDecision:
    where = f"line {line_number}: " if line_number is not None else ""
    if not isinstance(raw, dict):
        raise DecisionLogError(f"{where}decision must be a JSON object")
    allowed = {"frame", "verdict", "term", "verb", "rationale", "curator", "timestamp"}
    unknown = set(raw) - allowed
    if unknown:
        raise DecisionLogError(f"{where}unknown decision fields: {sorted(unknown)}")
    try:
        return CurationDecision(
            frame=raw["frame"],
            verdict=raw["verdict"],
            term=raw.get("term"),
            verb=raw.get("verb"),
            rationale=raw.get("rationale", ""),
            curator=raw.get("curator", ""),
            timestamp=raw.get("timestamp", ""),
        )
    except KeyError as exc:
        raise DecisionLogError(f"{where}decision missing field {exc}") from exc
    except DecisionLogError as exc:
        raise DecisionLogError(f"{where}{exc}") from exc


def read_decision_log(path: str | Path) -> list[CurationDecision]:
    """Parse a decision log or exported decision file, in line order."""
    decisions: list[CurationDecision] = []
    with open(path, encoding="utf-8") as handle:
        for number, raw_line in enumerate(handle, start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DecisionLogError(f"line {number}: not valid JSON ({exc.msg})") from exc
            if isinstance(raw, dict) and raw.get("format") == EXPORT_HEADER["format"]:
                continue  # header object of an exported file
            decisions.append(decision_from_dict(raw, number))
    return decisions


def append_decision(path: str | Path, decision: CurationDecision) -> None:
    with open(path, "a", encoding="utf-8") as handle:
        handle.write(json.dumps(decision.as_dict(), sort_keys=True) + "\n")


def export_decisions(log_path: str | Path, out_path: str | Path) -> int:
    """Write the canonical decision file: deduplicated last-wins, sorted.

    Returns the number of decisions exported. The output replays to the
    same state as the full log and is accepted by ``map --decisions``.
    """
    decisions = read_decision_log(log_path)
    last: dict[tuple[str, str, str], CurationDecision] = {}
    for decision in decisions:
        last[decision.key()] = decision
    ordered = [last[key] for key in sorted(last)]
    lines = [json.dumps(EXPORT_HEADER, sort_keys=True)]
    lines += [json.dumps(d.as_dict(), sort_keys=True) for d in ordered]
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return len(ordered)


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class PipelineState:
    """Immutable pipeline outputs plus the mutable decision overlay."""

    graph: OntologyGraph
    index: FrameIndex
    base_assignments: list[FrameAssignment]
    base_candidates: list[MappingCandidate]
    decisions: list[CurationDecision]
    provenance: dict[str, object]
    accepted_frames: set[str] | None = None

    def frame_universe(self) -> set[str]:
        """Frames in scope for reporting: stage-1 survivors if known."""
        if self.accepted_frames is not None:
            return self.accepted_frames
        return set(self.index.frames)

    def current_assignments(self) -> list[FrameAssignment]:
        return apply_assignment_curation(self.base_assignments, self.decisions, strict=False)

    def current_candidates(self) -> list[MappingCandidate]:
        return apply_curation(self.base_candidates, self.decisions, strict=False)

    def report(self) -> MappingReport:
        report = classify_mappings(self.current_candidates(), self.frame_universe())
        report.assignments = self.current_assignments()
        report.provenance = self.provenance
        return report

    def knows(self, decision: CurationDecision) -> bool:
        if decision.term is not None:
            return any(
                c.term == decision.term and c.frame == decision.frame
                for c in self.base_candidates
            )
        return any(
            a.verb == decision.verb and a.frame == decision.frame
            for a in self.base_assignments
        )


def term_context(state: PipelineState, term_id: str) -> dict[str, object]:
    """Term payload with its ancestry, ordered nearest-first."""
    term = state.graph.term(term_id)

    def chain(relations: frozenset[str]) -> list[dict[str, str]]:
        ordered: list[str] = []
        frontier = [term_id]
        seen: set[str] = set()
        while frontier:
            level: list[str] = []
            for tid in frontier:
                current = state.graph.terms[tid]
                for _, pid in current.parents(relations):
                    parent = state.graph.terms.get(pid)
                    if parent is None or parent.obsolete or pid in seen:
                        continue
                    seen.add(pid)
                    level.append(pid)
            level.sort()
            ordered.extend(level)
            frontier = level
        return [
            {"id": pid, "name": state.graph.terms[pid].name} for pid in ordered
        ]

    # Partonomy context: mixed-path ancestors that sit across a part_of
    # edge, in the same nearest-first order.
    part_of_ancestors = [
        entry
        for entry in chain(frozenset({IS_A, PART_OF}))
        if state.graph.is_part_of(term_id, entry["id"])
    ]
    return {
        "id": term.id,
        "name": term.name,
        "namespace": term.namespace,
        "obsolete": term.obsolete,
        "synonyms": list(term.synonyms),
        "is_a_ancestors": chain(frozenset({IS_A})),
        "part_of_ancestors": part_of_ancestors,
    }


class DecisionBody(BaseModel):
    """POST /decisions payload; the server adds the timestamp."""

    frame: str
    verdict: str
    term: str | None = None
    verb: str | None = None
    rationale: str = ""
    curator: str = ""


def build_app(state: PipelineState, log_path: str | Path):
    """FastAPI app over a pipeline state; decisions append to ``log_path``."""
    from fastapi import FastAPI, HTTPException
    from fastapi.middleware.cors import CORSMiddleware

    app = FastAPI(title="frame-align curation", version=__version__)
    # single-user localhost tool; the browser UI may be served elsewhere
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    write_lock = threading.Lock()
    log_path = Path(log_path)

    @app.get("/frames")
    def get_frames() -> list[dict[str, object]]:
        return [
            {
                "name": frame.name,
                "definition": frame.definition,
                "lexical_units": [
                    {"lemma": lu.lemma, "pos": lu.pos} for lu in frame.lexical_units
                ],
                "frame_elements": list(frame.frame_elements),
            }
            for frame in state.index.frames.values()
        ]

    @app.get("/assignments")
    def get_assignments() -> list[dict[str, str]]:
        return [
            {"verb": a.verb, "frame": a.frame, "via": a.via, "status": a.status}
            for a in state.current_assignments()
        ]

    @app.get("/candidates")
    def get_candidates(frame: str | None = None, status: str | None = None):
        rows = []
        for cand in state.current_candidates():
            if frame and cand.frame != frame:
                continue
            if status and cand.status != status:
                continue
            term = state.graph.terms.get(cand.term)
            rows.append(
                {
                    "term": cand.term,
                    "term_name": term.name if term else "",
                    "frame": cand.frame,
                    "frame_definition": state.index.frames[cand.frame].definition,
                    "evidence": [e.as_dict() for e in cand.evidence],
                    "status": cand.status,
                    "filter_reason": cand.filter_reason.as_dict()
                    if cand.filter_reason
                    else None,
                }
            )
        return rows

    @app.get("/terms/{term_id}")
    def get_term(term_id: str):
        try:
            return term_context(state, term_id)
        except UnknownTermError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.post("/decisions")
    def post_decision(body: DecisionBody):
        try:
            decision = CurationDecision(
                frame=body.frame,
                verdict=body.verdict,
                term=body.term,
                verb=body.verb,
                rationale=body.rationale,
                curator=body.curator,
                timestamp=utc_now_iso(),
            )
        except DecisionLogError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        if not state.knows(decision):
            raise HTTPException(
                status_code=404,
                detail=f"no candidate or assignment for {decision.key()}",
            )
        with write_lock:
            append_decision(log_path, decision)
            state.decisions.append(decision)
        return decision.as_dict()

    @app.get("/decisions")
    def get_decisions() -> list[dict[str, str]]:
        return [d.as_dict() for d in state.decisions]

    @app.get("/report")
    def get_report():
        return state.report().as_dict()

    return app


def load_state_decisions(state: PipelineState, log_path: str | Path) -> None:
    """Replay an existing log into the state (used at service startup)."""
    path = Path(log_path)
    if path.exists():
        state.decisions.extend(read_decision_log(path))


def serve(state: PipelineState, log_path: str | Path, host: str, port: int) -> None:
    import uvicorn

    load_state_decisions(state, log_path)
    app = build_app(state, log_path)
    uvicorn.run(app, host=host, port=port, log_level="info")
