"""Frame lexicon and domain verb inventory.

The frame index is a neutral JSON format (see README) rather than any
lexicon's native distribution format, so small hand-built indexes can be
shipped and full ones converted in by the user. Lookups go through an
inverted (lemma, pos) -> frames map built at load time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

POS_TAGS = frozenset({"v", "n", "a"})


class FrameIndexError(ValueError):
    """Malformed frame-index file."""


class VerbListError(ValueError):
    """Malformed verb-list file."""


@dataclass(frozen=True)
class LexicalUnit:
    lemma: str
    pos: str


@dataclass(frozen=True)
class Frame:
    name: str
    definition: str = ""
    lexical_units: tuple[LexicalUnit, ...] = ()
    frame_elements: tuple[str, ...] = ()


class FrameIndex:
    """Frames plus an inverted lexical-unit lookup."""

    def __init__(self, frames: Iterable[Frame]):
        self.frames: dict[str, Frame] = {}
        self.lu_index: dict[tuple[str, str], set[str]] = {}
        for frame in frames:
            if frame.name in self.frames:
                raise FrameIndexError(f"duplicate frame name {frame.name!r}")
            self.frames[frame.name] = frame
            for lu in frame.lexical_units:
                self.lu_index.setdefault((lu.lemma, lu.pos), set()).add(frame.name)

    def __len__(self) -> int:
        return len(self.frames)

    def __contains__(self, name: str) -> bool:
        return name in self.frames

    def frames_for_lexeme(self, lemma: str, pos: str) -> set[str]:
        """Names of frames listing (lemma, pos) as a lexical unit.

        Total: unknown lemmas return the empty set.
        """
        return set(self.lu_index.get((lemma.lower(), pos), set()))


def frames_for_lexeme(index: FrameIndex, lemma: str, pos: str) -> set[str]:
    return index.frames_for_lexeme(lemma, pos)


def load_frame_index(path: str) -> FrameIndex:
    with open(path, encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FrameIndexError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict) or not isinstance(raw.get("frames"), list):
        raise FrameIndexError(f"{path}: expected a top-level object with a 'frames' list")
    frames = []
    for entry in raw["frames"]:
        if not isinstance(entry, dict) or "name" not in entry:
            raise FrameIndexError(f"{path}: frame entry without a name: {entry!r}")
        lus = []
        seen: set[tuple[str, str]] = set()
        for lu in entry.get("lexical_units", []):
            try:
                lemma = lu["lemma"].lower()
                pos = lu["pos"]
            except (TypeError, KeyError) as exc:
                raise FrameIndexError(f"{path}: bad lexical unit {lu!r}") from exc
            if pos not in POS_TAGS:
                raise FrameIndexError(
                    f"{path}: unknown pos tag {pos!r} on lemma {lemma!r}"
                    f" (expected one of {sorted(POS_TAGS)})"
                )
            if not lemma:
                raise FrameIndexError(f"{path}: empty lemma in frame {entry['name']!r}")
            if (lemma, pos) in seen:
                continue
            seen.add((lemma, pos))
            lus.append(LexicalUnit(lemma=lemma, pos=pos))
        frames.append(
            Frame(
                name=entry["name"],
                definition=entry.get("definition", ""),
                lexical_units=tuple(lus),
                frame_elements=tuple(entry.get("frame_elements", [])),
            )
        )
    return FrameIndex(frames)


@dataclass(frozen=True)
class VerbEntry:
    verb: str
    predicates: tuple[str, ...] = ()
    synonyms: tuple[str, ...] = ()


def load_verb_list(path: str) -> list[VerbEntry]:
    """Parse the line-oriented verb inventory.

    Grammar per line: ``verb [| synonyms: a, b] [| predicates: p, q]``,
    ``#`` starts a comment. Order is preserved; duplicate verbs are an
    error.
    """
    entries: list[VerbEntry] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            segments = [s.strip() for s in line.split("|")]
            verb = segments[0].lower()
            if not verb:
                raise VerbListError(f"{path}:{number}: line with no verb")
            if verb in seen:
                raise VerbListError(f"{path}:{number}: duplicate verb {verb!r}")
            seen.add(verb)
            synonyms: tuple[str, ...] = ()
            predicates: tuple[str, ...] = ()
            for segment in segments[1:]:
                key, sep, value = segment.partition(":")
                values = tuple(
                    v.strip().lower() for v in value.split(",") if v.strip()
                )
                if not sep or not values:
                    raise VerbListError(f"{path}:{number}: bad segment {segment!r}")
                if key.strip() == "synonyms":
                    synonyms = values
                elif key.strip() == "predicates":
                    predicates = values
                else:
                    raise VerbListError(f"{path}:{number}: unknown segment {key.strip()!r}")
            entries.append(VerbEntry(verb=verb, predicates=predicates, synonyms=synonyms))
    return entries
