"""Command line interface.

Exit codes: 0 success or a positive answer, 1 a negative answer, 2 bad
input, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import geometry, hda, ipomset, precubical
from .bisim import dump_pairs, find_hd_bisimulation
from .dot import export_dot
from .errors import BudgetExceeded, HdaLangError, NotEventConsistent
from .ipomset import LinearPomset
from .language import enumerate_language, hda_from_language, member
from .track import track_label, validate_track

OK, NO, BAD_INPUT, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    if first_keyword(text) is None:
        raise InputError(f"{path}: empty input")
    return text


def first_keyword(text: str):
    for _, toks in precubical.tokenized_lines(text):
        return toks[0]
    return None


def load_ipomset(path):
    return ipomset.parse_text(read(path))


def load_hda(path):
    return hda.parse_text(read(path))


def load_track(X, path):
    return validate_track(X, read(path).split("#", 1)[0].split())


def emit_hda(X, args):
    if args.format == "dot":
        return export_dot(X)
    return hda.to_text(X)


def cmd_validate(args):
    text = read(args.file)
    kw = first_keyword(text)
    if kw == "elem":
        P = ipomset.parse_text(text)
        kind = "interval" if ipomset.is_interval(P) else "not interval"
        return f"ipomset: {len(P)} events, {kind}\n", OK
    if kw in ("cell", "face", "label", "initial", "accepting"):
        cells, faces, labels, extra = precubical.parse_cells(precubical.tokenized_lines(text))
        if labels or extra:
            X = hda.parse_text(text)
            return f"hda: cells per dimension {X.complex.counts()}\n", OK
        X = precubical.parse_text(text)
        ok = precubical.is_event_consistent(X)
        note = "event consistent" if ok else "not event consistent"
        return f"precubical set: cells per dimension {X.counts()}, {note}\n", OK
    if args.hda is None:
        raise InputError("tracks and d-paths are validated against an HDA given with --hda")
    X = load_hda(args.hda)
    if kw == "seg":
        a = geometry.parse_text(X, text)
        return f"d-path: {len(a)} segments\n", OK
    t = validate_track(X, text.split("#", 1)[0].split())
    return f"track: {t.describe()}\n", OK


def cmd_events(args):
    X = precubical.parse_text_lenient(read(args.file))
    try:
        ev = precubical.universal_events(X)
    except NotEventConsistent as exc:
        return f"not event consistent: {exc}\n", NO
    lines = [f"{e}: {' '.join(ev.edges_of(e))}" for e in ev.events()]
    lines += [f"cell {x}: ({', '.join(ev[x])})" for x in X if X.dim(x) >= 2]
    return "\n".join(lines) + "\n", OK


def cmd_cube(args):
    H = hda.standard_cube_hda(LinearPomset.from_labels(args.labels))
    return emit_hda(H, args), OK


def cmd_track_object(args):
    return emit_hda(hda.track_object(load_ipomset(args.ipomset)), args), OK


def cmd_label_track(args):
    X = load_hda(args.hda)
    P = track_label(X, load_track(X, args.track))
    return ipomset.to_text(P), OK


def cmd_label_path(args):
    X = load_hda(args.hda)
    a = geometry.parse_text(X, read(args.path))
    arr = geometry.interval_arrangement(X, a)
    names = {e: f"{e} ({X.event_label(e)})" for e in arr}
    out = "".join("# " + l + "\n" for l in geometry.format_arrangement(arr, names).splitlines())
    out += ipomset.to_text(geometry.dpath_label(X, a))
    if args.figure:
        from .plotting import plot_arrangement

        plot_arrangement(arr, args.figure, names)
    return out, OK


def cmd_member(args):
    P, X = load_ipomset(args.ipomset), load_hda(args.hda)
    ans = member(P, X, budget=args.budget)
    return ("true\n" if ans else "false\n"), (OK if ans else NO)


def cmd_lang(args):
    X = load_hda(args.hda)
    L = enumerate_language(X, args.bound_size, args.bound_steps)
    if L.truncated:
        print(
            f"warning: language truncated at {args.bound_steps} steps / {args.bound_size} events",
            file=sys.stderr,
        )
    return L.dump(), OK


def cmd_glue(args):
    return ipomset.to_text(ipomset.glue(load_ipomset(args.p), load_ipomset(args.q))), OK


def cmd_par(args):
    return ipomset.to_text(ipomset.parallel(load_ipomset(args.p), load_ipomset(args.q))), OK


def cmd_decompose(args):
    P = load_ipomset(args.ipomset)
    pieces = (
        ipomset.elementary_decomposition(P) if args.elementary else ipomset.decompose_interval(P)
    )
    return "---\n".join(ipomset.to_text(D) for D in pieces), OK


def cmd_subsume(args):
    P, Q = load_ipomset(args.p), load_ipomset(args.q)
    f = ipomset.subsumes(P, Q)
    if f is None:
        return "no subsumption\n", NO
    return "".join(f"{x} -> {f[x]}\n" for x in ipomset.canonical_order(P)), OK


def cmd_union(args):
    return emit_hda(hda.coproduct(load_hda(args.x), load_hda(args.y)), args), OK


def cmd_tensor(args):
    return emit_hda(hda.tensor(load_hda(args.x), load_hda(args.y)), args), OK


def cmd_bisim(args):
    X, Y = load_hda(args.x), load_hda(args.y)
    R = find_hd_bisimulation(X, Y, budget=args.budget)
    if R is None:
        return "no hd-bisimulation\n", NO
    return dump_pairs(X, R), OK


def cmd_from_lang(args):
    return emit_hda(hda_from_language([load_ipomset(p) for p in args.ipomsets]), args), OK


def cmd_export_dot(args):
    X = load_hda(args.hda)
    if args.figure:
        from .plotting import plot_skeleton

        plot_skeleton(X, args.figure)
    return export_dot(X), OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hdalang", description=__doc__.splitlines()[0])
    p.add_argument("-o", "--output", help="write the result to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        return sp

    def hda_out(sp):
        sp.add_argument("--format", choices=("text", "dot"), default="text")

    sp = add("validate", cmd_validate, "check an input file")
    sp.add_argument("file")
    sp.add_argument("--hda", help="HDA for track and d-path files")
    add("events", cmd_events, "universal events of a precubical set").add_argument("file")
    sp = add("cube", cmd_cube, "standard cube on a list of labels")
    sp.add_argument("labels", nargs="*")
    hda_out(sp)
    sp = add("track-object", cmd_track_object, "track object of an ipomset")
    sp.add_argument("ipomset")
    hda_out(sp)
    sp = add("label-track", cmd_label_track, "label of a track")
    sp.add_argument("hda")
    sp.add_argument("track")
    sp = add("label-path", cmd_label_path, "interval arrangement and label of a d-path")
    sp.add_argument("hda")
    sp.add_argument("path")
    sp.add_argument("--figure", help="also render the interval arrangement to this image")
    sp = add("member", cmd_member, "is the ipomset in the language of the HDA")
    sp.add_argument("ipomset")
    sp.add_argument("hda")
    sp.add_argument("--budget", type=int, default=hda.DEFAULT_BUDGET)
    sp = add("lang", cmd_lang, "bounded language of an HDA")
    sp.add_argument("hda")
    sp.add_argument("--bound-steps", type=int, default=16)
    sp.add_argument("--bound-size", type=int, default=8)
    for name, func, help in (("glue", cmd_glue, "gluing composition"),
                             ("par", cmd_par, "parallel composition")):
        sp = add(name, func, help)
        sp.add_argument("p")
        sp.add_argument("q")
    sp = add("decompose", cmd_decompose, "split an interval ipomset into discrete pieces")
    sp.add_argument("ipomset")
    sp.add_argument("--elementary", action="store_true",
                    help="split further into elementary starters and terminators")
    sp = add("subsume", cmd_subsume, "subsumption witness P -> Q")
    sp.add_argument("p")
    sp.add_argument("q")
    for name, func, help in (("union", cmd_union, "disjoint union of HDAs"),
                             ("tensor", cmd_tensor, "tensor product of HDAs")):
        sp = add(name, func, help)
        sp.add_argument("x")
        sp.add_argument("y")
        hda_out(sp)
    sp = add("bisim", cmd_bisim, "search for an hd-bisimulation")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--budget", type=int, default=hda.DEFAULT_BUDGET)
    sp = add("from-lang", cmd_from_lang, "HDA whose language is generated by the ipomsets")
    sp.add_argument("ipomsets", nargs="+")
    hda_out(sp)
    sp = add("export-dot", cmd_export_dot, "DOT rendering of an HDA")
    sp.add_argument("hda")
    sp.add_argument("--figure", help="also draw the HDA to this image")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (HdaLangError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
