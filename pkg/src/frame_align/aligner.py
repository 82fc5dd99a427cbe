"""Two-stage alignment of ontology concepts to semantic frames.

Stage 1 links domain verbs to the frames that list them as verbal lexical
units (falling back to curator-supplied synonyms). Stage 2 walks every
live ontology term, denominalizes the head noun(s) of its name and emits a
mapping candidate for each frame whose lexical units contain a resulting
verb. Candidates then pass through the generality/partonomy filter: a
candidate loses to any competing candidate of the same frame that it is a
subclass or a part of, because the more general or whole concept already
covers it. Filtering only marks statuses; human curation decisions are
applied on top and always win.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .lexframes import FrameIndex, VerbEntry
from .morph import DerivationLexicon, denominalize, extract_heads
from .ontology import OntologyGraph

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .curation import CurationDecision

# assignment/candidate statuses
CANDIDATE = "candidate"
AUTO_RETAINED = "auto_retained"
AUTO_FILTERED = "auto_filtered"
ACCEPTED = "accepted"
DISCARDED = "discarded"

FINAL_STATUSES = frozenset({AUTO_RETAINED, ACCEPTED})

# assignment evidence
VIA_DIRECT_LU = "direct_lu"
VIA_SYNONYM = "synonym"
VIA_DEFINITION_WORD = "definition_word"

# candidate evidence
VIA_NOMINALIZATION = "nominalization"
VIA_DIRECT_NOUN_LU = "direct_noun_lu"

# filter reasons
SUBCLASS_OF_CANDIDATE = "subclass_of_candidate"
PART_OF_CANDIDATE = "part_of_candidate"

# report case labels
NO_MAPPING = "no_mapping"
SINGLE_MAPPING = "single_mapping"
MULTI_VERB = "multiple_mapping_multi_verb"
MULTI_SPECIFIC = "multiple_mapping_multi_specific"

WITHIN_FRAME = "within_frame"
GLOBAL = "global"


class AlignError(ValueError):
    """Pipeline-level contract violation (unknown decision target, ...)."""


@dataclass(frozen=True)
class FrameAssignment:
    verb: str
    frame: str
    via: str
    status: str = CANDIDATE

    def key(self) -> tuple[str, str]:
        return (self.verb, self.frame)


@dataclass(frozen=True)
class Evidence:
    head: str
    verb: str
    via: str

    def as_dict(self) -> dict[str, str]:
        return {"head": self.head, "verb": self.verb, "via": self.via}


@dataclass(frozen=True)
class FilterReason:
    rule: str
    blocker: str

    def as_dict(self) -> dict[str, str]:
        return {"rule": self.rule, "blocker": self.blocker}


@dataclass(frozen=True)
class MappingCandidate:
    term: str
    frame: str
    evidence: tuple[Evidence, ...]
    status: str = CANDIDATE
    filter_reason: FilterReason | None = None

    def key(self) -> tuple[str, str]:
        return (self.term, self.frame)

    def verbs(self) -> set[str]:
        return {e.verb for e in self.evidence}


def assign_frames_to_verbs(
    verbs: Sequence[VerbEntry], index: FrameIndex
) -> list[FrameAssignment]:
    """Stage 1: one candidate assignment per frame evoking each verb.

    Synonyms are consulted only when the verb itself is not a verbal
    lexical unit anywhere. All assignments start as curation candidates.
    """
    assignments: list[FrameAssignment] = []
    for entry in verbs:
        direct = index.frames_for_lexeme(entry.verb, "v")
        if direct:
            for frame in sorted(direct):
                assignments.append(
                    FrameAssignment(verb=entry.verb, frame=frame, via=VIA_DIRECT_LU)
                )
            continue
        via_synonym: set[str] = set()
        for synonym in entry.synonyms:
            via_synonym |= index.frames_for_lexeme(synonym, "v")
        for frame in sorted(via_synonym):
            assignments.append(
                FrameAssignment(verb=entry.verb, frame=frame, via=VIA_SYNONYM)
            )
    return assignments


def accepted_frame_names(
    assignments: Sequence[FrameAssignment], index: FrameIndex
) -> set[str]:
    """Frames surviving stage 1: at least one non-discarded assignment."""
    survivors = {a.frame for a in assignments if a.status != DISCARDED}
    return survivors & set(index.frames)


def generate_candidates(
    graph: OntologyGraph,
    index: FrameIndex,
    accepted_frames: set[str],
    lexicon: DerivationLexicon,
    overrides: Mapping[str, list[str]] | None = None,
    match_noun_lus: bool = False,
    namespace: str | None = None,
) -> list[MappingCandidate]:
    """Stage 2 collection: head-noun matches of every live term name.

    Obsolete terms never produce candidates; ``namespace`` restricts
    generation to terms of that namespace without shrinking the graph.
    Candidates for the same (term, frame) pair are merged with their
    evidence unioned.
    """
    overrides = overrides or {}
    merged: dict[tuple[str, str], list[Evidence]] = {}
    for term_id in sorted(graph.terms):
        term = graph.terms[term_id]
        if term.obsolete:
            continue
        if namespace is not None and term.namespace != namespace:
            continue
        heads = overrides.get(term_id)
        if heads is None:
            heads = extract_heads(term.name)
        for head in heads:
            for verb in denominalize(head, lexicon):
                for frame in index.frames_for_lexeme(verb, "v") & accepted_frames:
                    evidence = Evidence(head=head, verb=verb, via=VIA_NOMINALIZATION)
                    merged.setdefault((term_id, frame), []).append(evidence)
            if match_noun_lus:
                for frame in index.frames_for_lexeme(head, "n") & accepted_frames:
                    evidence = Evidence(head=head, verb=head, via=VIA_DIRECT_NOUN_LU)
                    merged.setdefault((term_id, frame), []).append(evidence)
    candidates = []
    for (term_id, frame) in sorted(merged):
        evidence = tuple(dict.fromkeys(merged[(term_id, frame)]))
        candidates.append(
            MappingCandidate(term=term_id, frame=frame, evidence=evidence)
        )
    return candidates


def filter_candidates(
    graph: OntologyGraph,
    candidates: Sequence[MappingCandidate],
    scope: str = WITHIN_FRAME,
    partof_pure: bool = False,
) -> list[MappingCandidate]:
    """Mark each candidate auto_retained or auto_filtered.

    A candidate is filtered when it is a subclass or a part of another
    candidate in scope (same frame by default, any candidate under
    ``scope="global"``). Statuses already fixed by curation are left
    untouched. The result is independent of input order: competitors are
    scanned in sorted term order and the first blocker is recorded.
    """
    if scope not in (WITHIN_FRAME, GLOBAL):
        raise ValueError(f"scope must be {WITHIN_FRAME!r} or {GLOBAL!r}, got {scope!r}")
    by_key = sorted(candidates, key=lambda c: (c.frame, c.term))
    out: list[MappingCandidate] = []
    for cand in candidates:
        graph.term(cand.term)  # unknown ids are an error, not a silent retain
        if cand.status in (ACCEPTED, DISCARDED):
            out.append(cand)
            continue
        competitors = [
            other
            for other in by_key
            if other.key() != cand.key()
            and (scope == GLOBAL or other.frame == cand.frame)
        ]
        reason = None
        for other in competitors:
            if graph.is_subclass_of(cand.term, other.term):
                reason = FilterReason(rule=SUBCLASS_OF_CANDIDATE, blocker=other.term)
                break
        if reason is None:
            for other in competitors:
                if graph.is_part_of(cand.term, other.term, pure=partof_pure):
                    reason = FilterReason(rule=PART_OF_CANDIDATE, blocker=other.term)
                    break
        if reason is None:
            out.append(replace(cand, status=AUTO_RETAINED, filter_reason=None))
        else:
            out.append(replace(cand, status=AUTO_FILTERED, filter_reason=reason))
    return out


def apply_curation(
    candidates: Sequence[MappingCandidate],
    decisions: Sequence["CurationDecision"],
    strict: bool = True,
) -> list[MappingCandidate]:
    """Overlay mapping decisions (term, frame) on candidate statuses.

    Later decisions on the same key win. Decisions that reference no
    candidate raise in strict mode and are skipped otherwise.
    """
    verdicts: dict[tuple[str, str], str] = {}
    known = {c.key() for c in candidates}
    for decision in decisions:
        if decision.term is None:
            continue  # assignment decision, not ours
        key = (decision.term, decision.frame)
        if key not in known:
            if strict:
                raise AlignError(
                    f"decision references unknown candidate {key[0]} / {key[1]}"
                )
            continue
        verdicts[key] = ACCEPTED if decision.verdict == "accept" else DISCARDED
    return [
        # the override also clears the filter reason: that annotation
        # belongs to auto_filtered rows only
        replace(c, status=verdicts[c.key()], filter_reason=None)
        if c.key() in verdicts
        else c
        for c in candidates
    ]


def apply_assignment_curation(
    assignments: Sequence[FrameAssignment],
    decisions: Sequence["CurationDecision"],
    strict: bool = True,
) -> list[FrameAssignment]:
    """Overlay assignment decisions (verb, frame); same override rules."""
    verdicts: dict[tuple[str, str], str] = {}
    known = {a.key() for a in assignments}
    for decision in decisions:
        if decision.verb is None:
            continue
        key = (decision.verb, decision.frame)
        if key not in known:
            if strict:
                raise AlignError(
                    f"decision references unknown assignment {key[0]} / {key[1]}"
                )
            continue
        verdicts[key] = ACCEPTED if decision.verdict == "accept" else DISCARDED
    return [
        replace(a, status=verdicts[a.key()]) if a.key() in verdicts else a
        for a in assignments
    ]


@dataclass
class MappingReport:
    frame_cases: dict[str, str]
    final_mappings: dict[str, list[str]]
    multi_frame_terms: dict[str, list[str]]
    candidates: list[MappingCandidate] = field(default_factory=list)
    assignments: list[FrameAssignment] = field(default_factory=list)
    provenance: dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> dict[str, object]:
        return {
            "assignments": [
                {
                    "verb": a.verb,
                    "frame": a.frame,
                    "via": a.via,
                    "status": a.status,
                }
                for a in sorted(self.assignments, key=lambda a: a.key())
            ],
            "candidates": [
                {
                    "term": c.term,
                    "frame": c.frame,
                    "evidence": [e.as_dict() for e in c.evidence],
                    "status": c.status,
                    "filter_reason": c.filter_reason.as_dict() if c.filter_reason else None,
                }
                for c in sorted(self.candidates, key=lambda c: (c.frame, c.term))
            ],
            "final_mappings": self.final_mappings,
            "frame_cases": self.frame_cases,
            "multi_frame_terms": self.multi_frame_terms,
            "provenance": self.provenance,
        }


def final_mappings(candidates: Iterable[MappingCandidate]) -> list[MappingCandidate]:
    return [c for c in candidates if c.status in FINAL_STATUSES]


def classify_mappings(
    candidates: Sequence[MappingCandidate], frames: Iterable[str]
) -> MappingReport:
    """Label every frame's mapping situation and flag multi-frame terms.

    ``frames`` is the universe of frames in scope; frames without a single
    final mapping are reported as no_mapping rather than dropped.
    """
    finals = final_mappings(candidates)
    per_frame: dict[str, list[MappingCandidate]] = {name: [] for name in frames}
    for cand in finals:
        per_frame.setdefault(cand.frame, []).append(cand)

    frame_cases: dict[str, str] = {}
    mappings: dict[str, list[str]] = {}
    for frame in sorted(per_frame):
        frame_finals = sorted(per_frame[frame], key=lambda c: c.term)
        mappings[frame] = [c.term for c in frame_finals]
        if not frame_finals:
            frame_cases[frame] = NO_MAPPING
        elif len(frame_finals) == 1:
            frame_cases[frame] = SINGLE_MAPPING
        else:
            verbs: set[str] = set()
            for cand in frame_finals:
                verbs |= cand.verbs()
            frame_cases[frame] = MULTI_VERB if len(verbs) >= 2 else MULTI_SPECIFIC

    by_term: dict[str, set[str]] = {}
    for cand in finals:
        by_term.setdefault(cand.term, set()).add(cand.frame)
    multi = {
        term: sorted(frame_names)
        for term, frame_names in sorted(by_term.items())
        if len(frame_names) >= 2
    }
    return MappingReport(
        frame_cases=frame_cases,
        final_mappings=mappings,
        multi_frame_terms=multi,
        candidates=list(candidates),
    )


def report_tsv(report: MappingReport, graph: OntologyGraph) -> str:
    """Tab-separated candidate table, one row per (term, frame) pair."""
    lines = ["term_id\tterm_name\tframe\tstatus\tevidence"]
    for cand in sorted(report.candidates, key=lambda c: (c.frame, c.term)):
        name = graph.terms[cand.term].name if cand.term in graph.terms else ""
        evidence = ";".join(f"{e.head}->{e.verb}[{e.via}]" for e in cand.evidence)
        lines.append(f"{cand.term}\t{name}\t{cand.frame}\t{cand.status}\t{evidence}")
    return "\n".join(lines) + "\n"
