"""Command line interface: ``dehnlink {check,present,reduce-word,certify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagram import (
    checkerboard,
    is_alternating,
    is_connected,
    is_prime,
    is_reduced,
    load_diagram,
    reduce,
    trace_faces,
)
from .errors import DehnLinkError, InternalInconsistency, ParseError, ValidationError
from .pipeline import NOT_APPLICABLE, certify
from .presentation import build_presentation
from .solver import format_word, geodesic_reduce, parse_word

EXIT_USAGE = 2
EXIT_NOT_APPLICABLE = 3
EXIT_INTERNAL = 4


def _read(path: str):
    p = Path(path)
    if not p.exists():
        raise ParseError(f"{path}: no such file")
    return load_diagram(p), p.read_bytes()


def _presentation_for(d):
    r = reduce(d)
    if not r.crossings or not is_connected(r):
        raise ValidationError("need a connected diagram with crossings after reduction")
    f = trace_faces(r)
    return r, build_presentation(r, f, checkerboard(f))


def cmd_check(args) -> int:
    d, _ = _read(args.file)
    conn = is_connected(d) and bool(d.crossings)
    red = is_reduced(d)
    prime = conn and red and is_prime(d)
    print(f"connected={int(conn)} reduced={int(red)} prime={int(prime)} "
          f"alternating={int(is_alternating(d))}")
    return 0


def cmd_present(args) -> int:
    d, _ = _read(args.file)
    r, p = _presentation_for(d)
    if len(r.crossings) != len(d.crossings):
        print(f"# reduced from {len(d.crossings)} to {len(r.crossings)} crossings")
    sys.stdout.write(p.dump())
    return 0


def cmd_reduce_word(args) -> int:
    d, _ = _read(args.file)
    try:
        w = parse_word(" ".join(args.word))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    _, p = _presentation_for(d)
    bad = [x for x in w if abs(x) not in p.parity]
    if bad:
        raise ParseError(f"letters {bad} are not generators of this presentation")
    if not p.verified:
        raise InternalInconsistency("presentation fails C(4)-T(4)")
    print(format_word(geodesic_reduce(w, p)))
    return 0


def cmd_certify(args) -> int:
    d, raw = _read(args.file)
    cert = certify(d, normal_forms=args.normal_form, source=raw)
    if args.json:
        print(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"verdict: {cert.verdict}")
        print(f"crossings: {cert.input_crossings} (reduced: {cert.reduced_crossings})")
        for fr in cert.factors:
            print(f"factor {fr.index}: {fr.crossings} crossings, {fr.components} component(s), {fr.verdict}")
            if fr.small_cancellation:
                sc = fr.small_cancellation
                print(f"  pieces_max_len={sc['pieces_max_len']} C4={int(sc['C4'])} T4={int(sc['T4'])}")
            for c in fr.longitudes:
                print(f"  component {c.component}: slk={c.slk} |double|={c.double_length} "
                      f"geodesic[{c.geodesic_length}]={c.geodesic_word or '1'}")
                if c.normal_form is not None:
                    print(f"    normal form: {c.normal_form} (parity changes {c.normal_form_parity_changes})")
        if cert.evidence:
            ev = cert.evidence
            print(f"evidence: factor {ev['factor']} component {ev['component']}")
    return EXIT_NOT_APPLICABLE if cert.verdict == NOT_APPLICABLE else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dehnlink", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("check", help="print diagram predicates")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("present", help="print the augmented Dehn presentation")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_present)
    sp = sub.add_parser("reduce-word", help="geodesic form of a word in the presentation")
    sp.add_argument("file")
    sp.add_argument("word", nargs="+", help='signed face ids, e.g. "3 -1 5 -2"')
    sp.set_defaults(func=cmd_reduce_word)
    sp = sub.add_parser("certify", help="certify non-triviality of an alternating diagram")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--normal-form", action="store_true")
    sp.set_defaults(func=cmd_certify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DehnLinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
