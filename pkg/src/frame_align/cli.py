"""Command-line entry point: frame-align parse|assign|map|report|serve.

Exit codes: 0 success, 1 input error (unreadable or malformed files,
unknown references), 2 invariant violation (relationship cycles, duplicate
ids/frames/verbs). Reports are written atomically and carry provenance
(input digests plus the effective configuration) so identical inputs yield
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__, aligner, curation, lexframes, morph, ontology

DEFAULT_NAMESPACE = "biological_process"


class InputError(ValueError):
    """Unusable input: missing file, syntax error, unknown reference."""


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(path: str | None, label: str) -> str:
    if not path:
        raise InputError(f"missing required --{label}")
    if not os.path.exists(path):
        raise InputError(f"--{label} file not found: {path}")
    return path


def _load_graph(args: argparse.Namespace) -> ontology.OntologyGraph:
    path = _require(args.obo, "obo")
    mode = ontology.LENIENT if args.lenient else ontology.STRICT
    try:
        return ontology.parse_obo_file(path, mode=mode)
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not UTF-8 text: {exc}") from exc


def _load_lexicon(args: argparse.Namespace) -> morph.DerivationLexicon:
    if args.lexicon:
        return morph.load_lexicon(_require(args.lexicon, "lexicon"))
    return morph.default_lexicon()


def _load_decisions(args: argparse.Namespace) -> list[curation.CurationDecision]:
    if not args.decisions:
        return []
    return curation.read_decision_log(_require(args.decisions, "decisions"))


def _provenance(args: argparse.Namespace, paths: dict[str, str | None]) -> dict[str, object]:
    inputs = {
        label: {"path": path, "sha256": _sha256(path)}
        for label, path in sorted(paths.items())
        if path
    }
    return {
        "tool": "frame-align",
        "version": __version__,
        "inputs": inputs,
        "config": {
            "namespace": args.namespace,
            "match_noun_lus": bool(getattr(args, "match_noun_lus", False)),
            "scope": getattr(args, "scope", "within-frame"),
            "partof_pure": bool(getattr(args, "partof_pure", False)),
            "mode": ontology.LENIENT if args.lenient else ontology.STRICT,
        },
    }


def _run_stage1(
    args: argparse.Namespace,
    index: lexframes.FrameIndex,
    decisions: list[curation.CurationDecision],
) -> tuple[list[aligner.FrameAssignment], set[str]]:
    """Assignments plus the surviving frame set.

    Without a verb list there is no stage-1 evidence to restrict by, so
    every frame of the index stays in scope.
    """
    if not args.verbs:
        return [], set(index.frames)
    verbs = lexframes.load_verb_list(_require(args.verbs, "verbs"))
    assignments = aligner.assign_frames_to_verbs(verbs, index)
    assignments = aligner.apply_assignment_curation(
        assignments, decisions, strict=not args.lenient
    )
    return assignments, aligner.accepted_frame_names(assignments, index)


def _build_state(args: argparse.Namespace) -> curation.PipelineState:
    graph = _load_graph(args)
    index = lexframes.load_frame_index(_require(args.frames, "frames"))
    lexicon = _load_lexicon(args)
    overrides = (
        morph.load_head_overrides(_require(args.overrides, "overrides"))
        if args.overrides
        else None
    )
    decisions = _load_decisions(args)
    assignments, accepted = _run_stage1(args, index, decisions)
    candidates = aligner.generate_candidates(
        graph,
        index,
        accepted,
        lexicon,
        overrides=overrides,
        match_noun_lus=args.match_noun_lus,
        namespace=args.namespace or None,
    )
    candidates = aligner.filter_candidates(
        graph,
        candidates,
        scope=args.scope.replace("-", "_"),
        partof_pure=args.partof_pure,
    )
    candidates = aligner.apply_curation(candidates, decisions, strict=not args.lenient)
    provenance = _provenance(
        args,
        {
            "obo": args.obo,
            "frames": args.frames,
            "verbs": args.verbs,
            "lexicon": args.lexicon,
            "overrides": args.overrides,
            "decisions": args.decisions,
        },
    )
    return curation.PipelineState(
        graph=graph,
        index=index,
        base_assignments=assignments,
        base_candidates=candidates,
        decisions=[],
        provenance=provenance,
        accepted_frames=accepted,
    )


def cmd_parse(args: argparse.Namespace) -> int:
    graph = _load_graph(args)
    n_isa, n_part = graph.edge_counts()
    obsolete = sum(1 for t in graph.terms.values() if t.obsolete)
    print(f"terms: {len(graph)}")
    print(f"is_a edges: {n_isa}")
    print(f"part_of edges: {n_part}")
    print(f"obsolete terms: {obsolete}")
    print("cycles: none")
    return 0


def cmd_assign(args: argparse.Namespace) -> int:
    index = lexframes.load_frame_index(_require(args.frames, "frames"))
    decisions = _load_decisions(args)
    args.verbs = _require(args.verbs, "verbs")
    assignments, accepted = _run_stage1(args, index, decisions)
    payload = {
        "assignments": [
            {"verb": a.verb, "frame": a.frame, "via": a.via, "status": a.status}
            for a in sorted(assignments, key=lambda a: a.key())
        ],
        "accepted_frames": sorted(accepted),
        "provenance": _provenance(
            args,
            {"frames": args.frames, "verbs": args.verbs, "decisions": args.decisions},
        ),
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(args.out, text)
        print(f"wrote {args.out} ({len(payload['assignments'])} assignments)")
    else:
        print(text, end="")
    return 0


def cmd_map(args: argparse.Namespace) -> int:
    state = _build_state(args)
    report = state.report()
    json_text = json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"
    tsv_text = aligner.report_tsv(report, state.graph)
    if args.out:
        out_json = args.out
        out_tsv = str(Path(args.out).with_suffix(".tsv"))
        _atomic_write(out_json, json_text)
        _atomic_write(out_tsv, tsv_text)
        finals = sum(len(v) for v in report.final_mappings.values())
        print(f"wrote {out_json} and {out_tsv} ({finals} final mappings)")
    else:
        print(json_text, end="")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    path = _require(getattr(args, "in"), "in")
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc.msg})") from exc
    cases = payload.get("frame_cases", {})
    mappings = payload.get("final_mappings", {})
    print(f"frames: {len(cases)}")
    for frame in sorted(cases):
        terms = mappings.get(frame, [])
        listing = ", ".join(terms) if terms else "-"
        print(f"  {frame}: {cases[frame]} [{listing}]")
    multi = payload.get("multi_frame_terms", {})
    if multi:
        print("multi-frame terms:")
        for term in sorted(multi):
            print(f"  {term}: {', '.join(multi[term])}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    state = _build_state(args)
    log = args.log or "decisions.jsonl"
    log_dir = os.path.dirname(os.path.abspath(log))
    if not os.path.isdir(log_dir):
        raise InputError(f"log directory does not exist: {log_dir}")
    curation.serve(state, log, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frame-align",
        description="Align ontology process concepts to semantic frames.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, pipeline: bool) -> None:
        p.add_argument("--lenient", action="store_true",
                       help="tolerate dangling parents and unknown decision targets")
        if pipeline:
            p.add_argument("--obo", help="OBO 1.2 ontology file")
            p.add_argument("--frames", help="frame index JSON")
            p.add_argument("--verbs", help="verb inventory (optional for map/serve)")
            p.add_argument("--lexicon", help="derivation lexicon JSON (default: bundled)")
            p.add_argument("--overrides", help="per-term head override JSON")
            p.add_argument("--decisions", help="decision log / exported decision file")
            p.add_argument("--namespace", default=DEFAULT_NAMESPACE,
                           help="restrict candidate generation to this namespace"
                                " (empty string disables)")
            p.add_argument("--match-noun-lus", action="store_true",
                           help="also match heads against noun lexical units")
            p.add_argument("--scope", choices=["within-frame", "global"],
                           default="within-frame",
                           help="competitor scope for the generality filter")
            p.add_argument("--partof-pure", action="store_true",
                           help="partonomy filter only follows pure part_of chains")

    p_parse = sub.add_parser("parse", help="parse an OBO file and print statistics")
    p_parse.add_argument("--obo", required=True)
    p_parse.add_argument("--lenient", action="store_true")
    p_parse.set_defaults(func=cmd_parse)

    p_assign = sub.add_parser("assign", help="stage 1: assign frames to domain verbs")
    p_assign.add_argument("--frames", required=True)
    p_assign.add_argument("--verbs", required=True)
    p_assign.add_argument("--decisions")
    p_assign.add_argument("--namespace", default=DEFAULT_NAMESPACE, help=argparse.SUPPRESS)
    p_assign.add_argument("--lenient", action="store_true")
    p_assign.add_argument("--out", help="write assignments JSON here")
    p_assign.set_defaults(func=cmd_assign)

    p_map = sub.add_parser("map", help="stage 2: candidates, filtering, report")
    add_common(p_map, pipeline=True)
    p_map.add_argument("--out", help="report JSON path (TSV written alongside)")
    p_map.set_defaults(func=cmd_map)

    p_report = sub.add_parser("report", help="summarize an existing mapping report")
    p_report.add_argument("--in", dest="in", required=True, help="report JSON path")
    p_report.set_defaults(func=cmd_report)

    p_serve = sub.add_parser("serve", help="run the curation review service")
    add_common(p_serve, pipeline=True)
    p_serve.add_argument("--port", type=int, default=8311)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--log", help="append-only decision log (default decisions.jsonl)")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ontology.CycleError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ontology.OboParseError as exc:
        # duplicate ids are invariant violations, other parse issues input errors
        code = 2 if "duplicate" in str(exc) else 1
        print(f"error: {exc}", file=sys.stderr)
        return code
    except (lexframes.FrameIndexError, lexframes.VerbListError) as exc:
        code = 2 if "duplicate" in str(exc) else 1
        print(f"error: {exc}", file=sys.stderr)
        return code
    except (
        InputError,
        ontology.OntologyError,
        morph.LexiconError,
        curation.DecisionLogError,
        aligner.AlignError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
