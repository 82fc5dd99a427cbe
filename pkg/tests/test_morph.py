"""Head extraction and derivation rules, including the shipped lexicon."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frame_align.morph import (
    COORDINATORS,
    LexiconError,
    build_lexicon,
    default_lexicon,
    denominalize,
    extract_heads,
    load_head_overrides,
    load_lexicon,
    nominalize,
)


class TestExtractHeads:
    @pytest.mark.parametrize(
        "name,heads",
        [
            ("cell proliferation", ["proliferation"]),
            ("antigen processing and presentation", ["processing", "presentation"]),
            ("growth", ["growth"]),
            ("peptide or protein amino-terminal blocking", ["blocking"]),
            ("prevention of polyspermy", ["prevention"]),
            ("age-dependent general metabolic decline", ["decline"]),
            ("translation", ["translation"]),
        ],
    )
    def test_expected_heads(self, name, heads):
        assert extract_heads(name) == heads

    def test_lowercases(self):
        assert extract_heads("DNA Replication") == ["replication"]

    def test_comma_coordination(self):
        assert extract_heads("DNA replication, recombination and repair") == [
            "replication",
            "recombination",
            "repair",
        ]

    def test_preposition_cut_before_coordination(self):
        name = "antigen processing and presentation of peptide antigen"
        assert extract_heads(name) == ["processing", "presentation"]

    def test_hyphenated_token_kept_whole(self):
        assert extract_heads("amino-terminal blocking") == ["blocking"]

    def test_empty_name_raises(self):
        with pytest.raises(ValueError):
            extract_heads("   ")

    def test_coordinators_only_raises(self):
        with pytest.raises(ValueError):
            extract_heads("and or")

    @given(
        tokens=st.lists(
            st.text(alphabet="abcdefghij-", min_size=1, max_size=8).filter(
                lambda t: t.strip("-")
            ),
            min_size=1,
            max_size=6,
        )
    )
    def test_heads_are_tokens_of_the_name(self, tokens):
        name = " ".join(tokens)
        try:
            heads = extract_heads(name)
        except ValueError:
            return
        lowered = [t.lower().rstrip(",") for t in tokens]
        assert heads
        for head in heads:
            assert head in lowered

    @given(
        tokens=st.lists(
            st.text(alphabet="abcdefghij", min_size=1, max_size=8),
            min_size=1,
            max_size=6,
        )
    )
    def test_multiple_heads_need_a_coordinator(self, tokens):
        name = " ".join(tokens)
        try:
            heads = extract_heads(name)
        except ValueError:
            return
        has_coordinator = any(
            t.lower().rstrip(",") in COORDINATORS or t.endswith(",") for t in tokens
        )
        if len(heads) >= 2:
            assert has_coordinator


@pytest.fixture(scope="module")
def lexicon():
    return default_lexicon()


class TestDenominalize:
    def test_rule_derivation(self, lexicon):
        assert denominalize("translation", lexicon) == ["translate"]

    def test_exception_entry(self, lexicon):
        assert denominalize("growth", lexicon) == ["grow"]

    def test_zero_derivation_via_exceptions(self, lexicon):
        assert denominalize("decline", lexicon) == ["decline"]
        assert denominalize("process", lexicon) == ["process"]

    def test_no_candidates_for_opaque_domain_noun(self, lexicon):
        assert denominalize("apoptosis", lexicon) == []

    @pytest.mark.parametrize(
        "noun,verb",
        [
            ("proliferation", "proliferate"),
            ("initiation", "initiate"),
            ("blocking", "block"),
            ("processing", "process"),
            ("prevention", "prevent"),
            ("presentation", "present"),
            ("fertilization", "fertilize"),
            ("modification", "modify"),
            ("splicing", "splice"),
            ("development", "develop"),
            ("removal", "remove"),
        ],
    )
    def test_contains_expected_verb(self, lexicon, noun, verb):
        assert verb in denominalize(noun, lexicon)

    def test_exceptions_shadow_rules(self, lexicon):
        # "presentation" would rule-derive junk "presentate"; the
        # exception entry short-circuits the rules entirely.
        assert denominalize("presentation", lexicon) == ["present"]

    def test_never_produces_empty_string(self, lexicon):
        for noun in ("ing", "al", "ment", "tion"):
            assert "" not in denominalize(noun, lexicon)

    def test_deterministic(self, lexicon):
        assert denominalize("blocking", lexicon) == denominalize("blocking", lexicon)


class TestNominalize:
    def test_rule_inverse(self, lexicon):
        assert "translation" in nominalize("translate", lexicon)

    def test_exception_inverse(self, lexicon):
        assert "growth" in nominalize("grow", lexicon)

    def test_roundtrip_over_shipped_exceptions(self, lexicon):
        # every exception pair must survive the round trip both ways
        for noun, verbs in lexicon.noun_to_verbs.items():
            for verb in verbs:
                assert noun in nominalize(verb, lexicon)
                assert verb in denominalize(noun, lexicon)


class TestLexiconLoading:
    def test_file_and_default_agree(self, lexicon):
        from pathlib import Path

        path = (
            Path(__file__).resolve().parent.parent
            / "src/frame_align/data/derivation_lexicon.json"
        )
        assert load_lexicon(str(path)) == lexicon

    def test_inverse_map_is_consistent(self, lexicon):
        for verb, nouns in lexicon.verb_to_nouns.items():
            for noun in nouns:
                assert verb in lexicon.noun_to_verbs[noun]

    def test_empty_suffix_rejected(self):
        with pytest.raises(LexiconError):
            build_lexicon([], [("", "x")])

    def test_duplicate_exception_rejected(self):
        with pytest.raises(LexiconError):
            build_lexicon([("growth", ["grow"]), ("growth", ["grow"])], [])

    def test_overrides_loader(self, tmp_path):
        path = tmp_path / "overrides.json"
        path.write_text('{"GO:0019882": ["Processing"]}', encoding="utf-8")
        assert load_head_overrides(str(path)) == {"GO:0019882": ["processing"]}
        path.write_text('{"GO:0019882": "processing"}', encoding="utf-8")
        with pytest.raises(LexiconError):
            load_head_overrides(str(path))
