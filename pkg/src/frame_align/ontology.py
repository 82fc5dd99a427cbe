"""OBO 1.2 flat-file parsing and transitive is_a/part_of queries.

Only the tags needed downstream are modeled: ``id``, ``name``,
``namespace``, ``is_a``, ``relationship: part_of``, ``synonym`` and
``is_obsolete``. Everything else, including non-``[Term]`` stanzas, is
skipped. The resulting graph is immutable after construction and safe for
concurrent readers.
"""

from __future__ import annotations

import io
import logging
import re
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, TextIO

logger = logging.getLogger(__name__)

IS_A = "is_a"
PART_OF = "part_of"
ALL_RELATIONS = frozenset({IS_A, PART_OF})

_GO_ID = re.compile(r"^GO:\d{7}$")
_SYNONYM_TEXT = re.compile(r'"((?:[^"\\]|\\.)*)"')

STRICT = "strict"
LENIENT = "lenient"


class OntologyError(ValueError):
    """Base error for ontology loading and lookups."""


class OboParseError(OntologyError):
    """Malformed OBO input; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class CycleError(OntologyError):
    """The union of is_a and part_of edges contains a cycle."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("relationship cycle: " + " -> ".join(cycle))


class DanglingParentError(OntologyError):
    """A parent reference does not resolve to any term (strict mode)."""


class UnknownTermError(OntologyError):
    """A queried term id is not present in the graph."""


def validate_term_id(value: str, line_number: int | None = None) -> str:
    """Check the PREFIX:LOCALID shape (GO ids additionally need 7 digits)."""
    if value.count(":") != 1:
        raise OboParseError(f"bad term id {value!r}: expected PREFIX:LOCALID", line_number)
    prefix, local = value.split(":")
    if not prefix or not local:
        raise OboParseError(f"bad term id {value!r}: empty prefix or local id", line_number)
    if prefix == "GO" and not _GO_ID.match(value):
        raise OboParseError(f"bad GO id {value!r}: expected GO: plus 7 digits", line_number)
    return value


@dataclass(frozen=True)
class Term:
    id: str
    name: str
    namespace: str = ""
    is_a_parents: tuple[str, ...] = ()
    part_of_parents: tuple[str, ...] = ()
    synonyms: tuple[str, ...] = ()
    obsolete: bool = False

    def parents(self, relations: frozenset[str] = ALL_RELATIONS) -> Iterator[tuple[str, str]]:
        """Yield (relation, parent id) pairs for the selected relations."""
        if IS_A in relations:
            for pid in self.is_a_parents:
                yield IS_A, pid
        if PART_OF in relations:
            for pid in self.part_of_parents:
                yield PART_OF, pid


class OntologyGraph:
    """Terms plus typed directed edges, validated acyclic at load."""

    def __init__(self, terms: Iterable[Term], mode: str = STRICT):
        self.terms: dict[str, Term] = {}
        for term in terms:
            if term.id in self.terms:
                raise OboParseError(f"duplicate term id {term.id}")
            self.terms[term.id] = term
        self._validate(mode)

    def _validate(self, mode: str) -> None:
        for term in list(self.terms.values()):
            for _, pid in term.parents():
                if pid == term.id:
                    raise CycleError([term.id, term.id])
            if term.obsolete:
                continue
            if not term.name:
                raise OboParseError(f"term {term.id} has no name")
            dangling = [
                pid for _, pid in term.parents() if pid not in self.terms
            ]
            if dangling:
                if mode == STRICT:
                    raise DanglingParentError(
                        f"term {term.id} references unknown parent(s): {', '.join(dangling)}"
                    )
                logger.warning(
                    "dropping dangling parent(s) of %s: %s", term.id, ", ".join(dangling)
                )
                self.terms[term.id] = replace(
                    term,
                    is_a_parents=tuple(p for p in term.is_a_parents if p in self.terms),
                    part_of_parents=tuple(p for p in term.part_of_parents if p in self.terms),
                )
        cycle = self._find_cycle()
        if cycle:
            raise CycleError(cycle)

    def _find_cycle(self) -> list[str] | None:
        # Iterative three-color DFS over the union of both edge types.
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {tid: WHITE for tid in self.terms}
        for start in self.terms:
            if color[start] != WHITE:
                continue
            stack: list[tuple[str, Iterator[tuple[str, str]]]] = []
            color[start] = GRAY
            stack.append((start, self.terms[start].parents()))
            while stack:
                node, edges = stack[-1]
                advanced = False
                for _, nxt in edges:
                    if nxt not in self.terms:
                        continue  # lenient mode may have dropped the target
                    if color[nxt] == GRAY:
                        path = [entry[0] for entry in stack]
                        return path[path.index(nxt):] + [nxt]
                    if color[nxt] == WHITE:
                        color[nxt] = GRAY
                        stack.append((nxt, self.terms[nxt].parents()))
                        advanced = True
                        break
                if not advanced:
                    color[node] = BLACK
                    stack.pop()
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OntologyGraph):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term_id: str) -> bool:
        return term_id in self.terms

    def term(self, term_id: str) -> Term:
        try:
            return self.terms[term_id]
        except KeyError:
            raise UnknownTermError(f"unknown term id {term_id!r}") from None

    def edge_counts(self) -> tuple[int, int]:
        """(number of is_a edges, number of part_of edges)."""
        n_isa = sum(len(t.is_a_parents) for t in self.terms.values())
        n_part = sum(len(t.part_of_parents) for t in self.terms.values())
        return n_isa, n_part

    def ancestors(
        self, term_id: str, relations: frozenset[str] = ALL_RELATIONS
    ) -> set[str]:
        """Terms reachable via one or more edges of the selected types.

        The start term is excluded. Obsolete terms carry no current
        semantics and do not participate: they are neither returned nor
        traversed through.
        """
        start = self.term(term_id)
        seen: set[str] = set()
        queue = deque([start])
        while queue:
            term = queue.popleft()
            for _, pid in term.parents(relations):
                if pid in seen or pid == term_id:
                    continue
                parent = self.terms.get(pid)
                if parent is None or parent.obsolete:
                    continue
                seen.add(pid)
                queue.append(parent)
        return seen

    def is_subclass_of(self, a: str, b: str) -> bool:
        """True iff b is a proper is_a ancestor of a."""
        self.term(b)
        return b in self.ancestors(a, frozenset({IS_A}))

    def is_part_of(self, a: str, b: str, pure: bool = False) -> bool:
        """True iff some path from a reaches b through a part_of edge.

        Default semantics let part_of propagate over is_a: the witnessing
        path may mix both edge types as long as it contains at least one
        part_of edge. With ``pure=True`` only part_of chains count.
        """
        self.term(a)
        self.term(b)
        if pure:
            return b in self.ancestors(a, frozenset({PART_OF}))
        # BFS over (term, crossed-a-part_of-edge) states.
        seen: set[tuple[str, bool]] = {(a, False)}
        queue = deque([(a, False)])
        while queue:
            tid, crossed = queue.popleft()
            term = self.terms[tid]
            for relation, pid in term.parents():
                parent = self.terms.get(pid)
                if parent is None or parent.obsolete:
                    continue
                state = (pid, crossed or relation == PART_OF)
                if state in seen:
                    continue
                if pid == b and state[1]:
                    return True
                seen.add(state)
                queue.append((pid, state[1]))
        return False


@dataclass
class _Stanza:
    line: int
    id: str = ""
    name: str = ""
    namespace: str = ""
    is_a: list[str] = field(default_factory=list)
    part_of: list[str] = field(default_factory=list)
    synonyms: list[str] = field(default_factory=list)
    obsolete: bool = False


def _iter_stanza_lines(stream: TextIO) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        yield number, line


def parse_obo(source: TextIO | str, mode: str = STRICT) -> OntologyGraph:
    """Parse OBO 1.2 text into an :class:`OntologyGraph`.

    ``source`` may be a text stream or the document itself. ``mode`` is
    ``"strict"`` (dangling parents abort) or ``"lenient"`` (dropped with a
    warning). Cycles are an error in both modes.
    """
    if mode not in (STRICT, LENIENT):
        raise ValueError(f"mode must be {STRICT!r} or {LENIENT!r}, got {mode!r}")
    stream = io.StringIO(source) if isinstance(source, str) else source

    terms: list[Term] = []
    stanza: _Stanza | None = None

    def flush() -> None:
        if stanza is None:
            return
        if not stanza.id:
            raise OboParseError("[Term] stanza has no id tag", stanza.line)
        terms.append(
            Term(
                id=stanza.id,
                name=stanza.name,
                namespace=stanza.namespace,
                is_a_parents=tuple(stanza.is_a),
                part_of_parents=tuple(stanza.part_of),
                synonyms=tuple(stanza.synonyms),
                obsolete=stanza.obsolete,
            )
        )

    for number, line in _iter_stanza_lines(stream):
        stripped = line.strip()
        if stripped.startswith("["):
            flush()
            stanza = _Stanza(line=number) if stripped == "[Term]" else None
            continue
        if stanza is None or not stripped or stripped.startswith("!"):
            continue
        tag, sep, value = stripped.partition(":")
        if not sep:
            raise OboParseError(f"expected tag: value, got {stripped!r}", number)
        tag = tag.strip()
        value = value.strip()
        if tag == "id":
            stanza.id = validate_term_id(value, number)
        elif tag == "name":
            stanza.name = value
        elif tag == "namespace":
            stanza.namespace = value
        elif tag == "is_a":
            target = value.split("!")[0].strip()
            if not target:
                raise OboParseError("is_a tag with no target id", number)
            stanza.is_a.append(validate_term_id(target, number))
        elif tag == "relationship":
            parts = value.split("!")[0].split()
            if len(parts) < 2:
                raise OboParseError(f"bad relationship line {value!r}", number)
            if parts[0] == PART_OF:
                stanza.part_of.append(validate_term_id(parts[1], number))
            # other relationship types (regulates, ...) are out of scope
        elif tag == "synonym":
            match = _SYNONYM_TEXT.search(value)
            if not match:
                raise OboParseError(f"synonym without quoted text: {value!r}", number)
            stanza.synonyms.append(match.group(1))
        elif tag == "is_obsolete":
            stanza.obsolete = value.lower().startswith("true")
        # all other tags are intentionally ignored
    flush()
    return OntologyGraph(terms, mode=mode)


def parse_obo_file(path: str, mode: str = STRICT) -> OntologyGraph:
    with open(path, encoding="utf-8") as handle:
        return parse_obo(handle, mode=mode)


def dump_obo(graph: OntologyGraph) -> str:
    """Serialize the modeled tag subset back to OBO text (sorted by id)."""
    chunks: list[str] = []
    for term_id in sorted(graph.terms):
        term = graph.terms[term_id]
        lines = ["[Term]", f"id: {term.id}"]
        if term.name:
            lines.append(f"name: {term.name}")
        if term.namespace:
            lines.append(f"namespace: {term.namespace}")
        for synonym in term.synonyms:
            lines.append(f'synonym: "{synonym}"')
        for pid in term.is_a_parents:
            lines.append(f"is_a: {pid}")
        for pid in term.part_of_parents:
            lines.append(f"relationship: part_of {pid}")
        if term.obsolete:
            lines.append("is_obsolete: true")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")
