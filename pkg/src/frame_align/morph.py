"""Head-noun extraction and noun/verb derivation.

Ontology process names are head-final noun phrases, so the head is the
rightmost token once prepositional complements are cut off ("prevention of
polyspermy" -> "prevention"). Coordinated names contribute one head per
conjunct only when the final conjunct is a single token ("antigen
processing and presentation" -> processing, presentation); otherwise the
coordination joins modifiers that share the final head ("peptide or
protein amino-terminal blocking" -> blocking). A per-concept override file
lets curators pin heads for names the heuristic cannot crack.

Derivation is rule generated and dictionary corrected: an exception
lexicon resolves irregular pairs (growth/grow) and zero-derivations
(decline/decline), and ordered suffix rules generate candidate lemmas for
everything else. The rules overgenerate on purpose; downstream lookups
against the frame lexicon discard non-words.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping

COORDINATORS = frozenset({"and", "or"})

# Small closed class; enough for ontology-style noun phrases.
PREPOSITIONS = frozenset({
    "of", "to", "in", "on", "at", "by", "via", "for", "from", "with",
    "into", "onto", "upon", "within", "during", "through", "between",
    "across", "involving",
})


class LexiconError(ValueError):
    """Malformed derivation-lexicon file."""


@dataclass(frozen=True)
class DerivationLexicon:
    noun_to_verbs: Mapping[str, tuple[str, ...]]
    verb_to_nouns: Mapping[str, tuple[str, ...]]
    suffix_rules: tuple[tuple[str, str], ...]


def _invert(noun_to_verbs: Mapping[str, tuple[str, ...]]) -> dict[str, tuple[str, ...]]:
    inverse: dict[str, list[str]] = {}
    for noun, verbs in noun_to_verbs.items():
        for verb in verbs:
            entries = inverse.setdefault(verb, [])
            if noun not in entries:
                entries.append(noun)
    return {verb: tuple(nouns) for verb, nouns in inverse.items()}


def build_lexicon(
    exceptions: Iterable[tuple[str, Iterable[str]]],
    suffix_rules: Iterable[tuple[str, str]],
) -> DerivationLexicon:
    noun_to_verbs: dict[str, tuple[str, ...]] = {}
    for noun, verbs in exceptions:
        noun = noun.lower()
        if noun in noun_to_verbs:
            raise LexiconError(f"duplicate exception entry for noun {noun!r}")
        entry = tuple(dict.fromkeys(v.lower() for v in verbs))
        if not noun or not all(entry):
            raise LexiconError(f"empty lemma in exception entry {noun!r}")
        noun_to_verbs[noun] = entry
    rules = []
    for suffix, replace in suffix_rules:
        if not suffix:
            raise LexiconError("suffix rule with empty suffix")
        rules.append((suffix.lower(), replace.lower()))
    return DerivationLexicon(
        noun_to_verbs=noun_to_verbs,
        verb_to_nouns=_invert(noun_to_verbs),
        suffix_rules=tuple(rules),
    )


def load_lexicon(path: str) -> DerivationLexicon:
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    return _lexicon_from_dict(raw)


def default_lexicon() -> DerivationLexicon:
    """The lexicon shipped with the package."""
    raw = json.loads(
        resources.files("frame_align.data")
        .joinpath("derivation_lexicon.json")
        .read_text(encoding="utf-8")
    )
    return _lexicon_from_dict(raw)


def _lexicon_from_dict(raw: object) -> DerivationLexicon:
    if not isinstance(raw, dict):
        raise LexiconError("lexicon file must hold a JSON object")
    try:
        exceptions = [(e["noun"], e["verbs"]) for e in raw.get("exceptions", [])]
        rules = [(r["suffix"], r["replace"]) for r in raw.get("suffix_rules", [])]
    except (TypeError, KeyError) as exc:
        raise LexiconError(f"bad lexicon entry: {exc}") from exc
    return build_lexicon(exceptions, rules)


def extract_heads(name: str) -> list[str]:
    """Head token(s) of a concept name, lowercased.

    Raises ValueError when the name has no tokens.
    """
    tokens = [t.lower() for t in name.split()]
    if not tokens:
        raise ValueError(f"concept name {name!r} has no tokens")

    # Cut prepositional complements: the head lives in the leading NP.
    for i, token in enumerate(tokens):
        if i > 0 and token in PREPOSITIONS:
            tokens = tokens[:i]
            break

    # Split into conjuncts on coordinators and comma boundaries.
    conjuncts: list[list[str]] = [[]]
    for token in tokens:
        bare = token.rstrip(",")
        if bare in COORDINATORS:
            if conjuncts[-1]:
                conjuncts.append([])
            continue
        if bare:
            conjuncts[-1].append(bare)
        if token.endswith(",") and conjuncts[-1]:
            conjuncts.append([])
    conjuncts = [c for c in conjuncts if c]
    if not conjuncts:
        raise ValueError(f"concept name {name!r} has no head tokens")

    if len(conjuncts) > 1 and len(conjuncts[-1]) == 1:
        # Head coordination: "X ... H1 and H2" names one head per conjunct.
        heads = [conjunct[-1] for conjunct in conjuncts]
    else:
        # Modifier coordination (or no coordination): one shared head.
        heads = [conjuncts[-1][-1]]
    return list(dict.fromkeys(heads))


def denominalize(noun: str, lexicon: DerivationLexicon) -> list[str]:
    """Candidate verb lemmas for a noun; may legitimately be empty."""
    hit = lexicon.noun_to_verbs.get(noun)
    if hit is not None:
        return list(hit)
    candidates: list[str] = []
    for suffix, replace in lexicon.suffix_rules:
        if noun.endswith(suffix) and len(noun) > len(suffix):
            candidate = noun[: -len(suffix)] + replace
            if candidate and candidate not in candidates:
                candidates.append(candidate)
    return candidates


def nominalize(verb: str, lexicon: DerivationLexicon) -> list[str]:
    """Candidate noun forms for a verb; the inverse of :func:`denominalize`."""
    hit = lexicon.verb_to_nouns.get(verb)
    if hit is not None:
        return list(hit)
    candidates: list[str] = []
    for suffix, replace in lexicon.suffix_rules:
        if replace:
            if not (verb.endswith(replace) and len(verb) > len(replace)):
                continue
            candidate = verb[: -len(replace)] + suffix
        else:
            candidate = verb + suffix
        if candidate and candidate not in candidates:
            candidates.append(candidate)
    return candidates


def load_head_overrides(path: str) -> dict[str, list[str]]:
    """Per-concept pinned heads: JSON object mapping term id -> heads."""
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise LexiconError("head-override file must hold a JSON object")
    overrides: dict[str, list[str]] = {}
    for term_id, heads in raw.items():
        if not isinstance(heads, list) or not all(isinstance(h, str) for h in heads):
            raise LexiconError(f"override for {term_id!r} must be a list of strings")
        overrides[term_id] = [h.lower() for h in heads]
    return overrides
