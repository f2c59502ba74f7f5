"""Command-line interface: ``twistcode <command> ...``.

Exit codes: 0 success, 1 failed check (assertion, diff, decoding failure),
2 bad input.  File arguments may be written ``builtin:<name>`` to refer to
the shipped data files, e.g. ``builtin:asl32.tuple``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .channel import ChannelSpec, SimulationFailure, SimulationStats, simulate
from .decoder import DecoderState, decode
from .fixtures import data_path
from .gkp import (
    TupleSearchError,
    build_gkp,
    closed_form_ubb_size,
    gkp_saxl_connected,
    gkp_twisted_code,
    gkp_ubb,
)
from .group import EnumerationBudgetError, NotABaseError
from .perm import parse_permutation
from .ubb import (
    CoverNotBasesError,
    StrengthBudgetError,
    matching_ubb,
    relabel_search,
    saxl_graph,
    ubb_from_cover,
    verify_strength,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _path(text: str) -> Path:
    if text.startswith("builtin:"):
        return data_path(text[len("builtin:"):])
    return Path(text)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _row(args, *cells):
    if args.tsv:
        print("\t".join(str(c) for c in cells))


# -- commands ------------------------------------------------------------


def cmd_mindist(args) -> int:
    g = formats.read_group(_path(args.group))
    d = g.min_distance()
    if args.tsv:
        print("group\tn\torder\tmin_distance\tr")
        _row(args, g.name, g.degree, g.order(), d, (d - 1) // 2)
    else:
        print(f"{g.name}: degree {g.degree}, order {g.order()}, minimum distance {d}, "
              f"correction capability {(d - 1) // 2}")
    return EXIT_OK


def cmd_delta(args) -> int:
    code = formats.read_tuple(_path(args.tuple), check_permutational=args.check_permutational)
    dr, dt = code.delta_rep(), code.delta_tw()
    r_tw, rp = code.correction_params()
    if args.tsv:
        print("code\torder\tn\tlambda\tdelta_rep\tdelta_tw\tr_tw\tr_prime")
        _row(args, code.name, code.g1.order(), code.n, code.lam, dr, dt, r_tw, rp)
    else:
        print(f"{code.name}: |G| = {code.g1.order()}, n = {code.n}, lambda = {code.lam}")
        print(f"  delta_rep = {dr}, delta_tw = {dt}{'  (improved)' if dt > dr else ''}")
        print(f"  r_tw = {r_tw}, r' = {rp}")
    return EXIT_OK


def cmd_encode(args) -> int:
    code = formats.read_tuple(_path(args.tuple))
    g = parse_permutation(args.element, code.n)
    cw = code.encode(g)
    print(formats.format_word(cw.word.symbols, code.n))
    return EXIT_OK


def cmd_decode(args) -> int:
    code = formats.read_tuple(_path(args.tuple))
    ubb = formats.read_ubb(_path(args.ubb), code.g1)
    state = DecoderState(code, ubb, require_guarantee=not args.no_check)
    word = formats.parse_word(args.word, code.n)
    res = decode(state, word)
    log = res.log()
    if args.log:
        Path(args.log).write_text(log)
    else:
        sys.stdout.write(log)
    if res.success:
        print(f"decoded {res.permutation.cycle_string()} -> {formats.format_word(res.codeword, code.n)}")
        return EXIT_OK
    print(f"decoding failed after {len(res.attempts)} attempts (more than r_tw = {state.r_tw} errors?)")
    return EXIT_FAIL


def cmd_ubb_verify(args) -> int:
    group = formats.read_group(_path(args.group)) if args.group else None
    ubb = formats.read_ubb(_path(args.ubb), group)
    n = group.degree if group else (args.degree or ubb.degree)
    strength = ubb.strength if args.strength is None else args.strength
    ok = True
    if group is not None:
        bad = ubb.non_bases()
        for b in bad:
            print(f"row {' '.join(map(str, b))} is not a base")
        ok = not bad
    check = verify_strength(ubb, n=n, strength=strength, sample=args.sample, seed=args.seed)
    label = "" if check.certified else " (sampled, not certified)"
    if check:
        print(f"strength {strength} holds over {check.checked} subsets{label}")
    else:
        print(f"strength {strength} fails: {{{', '.join(map(str, check.witness))}}} meets every base")
    return EXIT_OK if ok and check.ok else EXIT_FAIL


def cmd_ubb_from_cover(args) -> int:
    group = formats.read_group(_path(args.group))
    cover = formats.read_cover(_path(args.cover))
    try:
        ubb = ubb_from_cover(cover, group, name=group.name)
    except CoverNotBasesError as exc:
        print(f"{exc}; try 'ubb relabel'", file=sys.stderr)
        return EXIT_FAIL
    _emit(formats.dump_ubb(ubb), args.output)
    return EXIT_OK


def cmd_ubb_relabel(args) -> int:
    group = formats.read_group(_path(args.group))
    cover = formats.read_cover(_path(args.cover))
    found = relabel_search(cover, group, attempts=args.attempts, seed=args.seed)
    if found is None:
        print(f"no relabelling found in {args.attempts} attempts", file=sys.stderr)
        return EXIT_FAIL
    ubb = ubb_from_cover(cover.relabel(found.sigma), group, name=group.name)
    comments = [f"relabelling {found.sigma.list_string()} (attempt {found.attempt})"]
    _emit(formats.dump_ubb(ubb, comments), args.output)
    return EXIT_OK


def cmd_saxl(args) -> int:
    group = formats.read_group(_path(args.group))
    graph = saxl_graph(group)
    comps = graph.components()
    size = args.size if args.size is not None else graph.n // 2
    ubb = matching_ubb(graph, size, group, group.name)
    if args.tsv:
        print("group\tn\tedges\tcomponents\tconnected\tmatching")
        _row(args, group.name, graph.n, len(graph.edges), len(comps), int(graph.is_connected()), len(ubb))
    else:
        print(f"{group.name}: Saxl graph on {graph.n} vertices, {len(graph.edges)} edges, "
              f"{'connected' if graph.is_connected() else f'{len(comps)} components'}")
        print(f"  matching of size {len(ubb)}: " + " ".join(f"{a}-{b}" for a, b in ubb.bases))
    return EXIT_OK


def _p2_note(p: int, k: int, size: int) -> str | None:
    closed = closed_form_ubb_size(p, k)
    if p == 2 and closed != size:
        return f"p = 2: definitional size r'+1 = {size} differs from floor((p^k-1)/2) = {closed}"
    return None


def cmd_gkp(args) -> int:
    g = build_gkp(args.p, args.k)
    if g.order_anomaly:
        print(f"note: B_{args.k} has order {g.b_order} over F_{args.p}, so |G| = {g.as_perm_group.order()} "
              f"rather than p^(k+1) = {g.expected_order}", file=sys.stderr)
    G = g.as_perm_group
    if args.gkp_command == "build":
        _emit(formats.dump_group(G, [f"G_{args.k}({args.p}) acting on {g.degree} affine points"]), args.output)
    elif args.gkp_command == "ubb":
        w = gkp_saxl_connected(g)
        ubb = gkp_ubb(g)
        comments = [f"matching in a connected Saxl graph with {len(w.graph.edges)} edges"]
        note = _p2_note(args.p, args.k, len(ubb))
        if note:
            comments.append(note)
            print(f"note: {note}", file=sys.stderr)
        _emit(formats.dump_ubb(ubb, comments), args.output)
    else:
        code = gkp_twisted_code(g, seed=args.seed)
        out = Path(args.output or ".")
        out.mkdir(parents=True, exist_ok=True)
        stem = f"g{args.k}_{args.p}"
        (out / f"{stem}.group").write_text(formats.dump_group(G))
        maps = [a.generator_images for a in code.alphas[1:]]
        formats.write_tuple(out / f"{stem}.tuple", code.name, [f"{stem}.group"] * code.lam, maps,
                            comments=[f"delta_tw = {code.delta_tw()}, delta_rep = {code.delta_rep()}"])
        print(f"wrote {out / (stem + '.tuple')}: lambda = {code.lam}, delta_tw = {code.delta_tw()}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    code = formats.read_tuple(_path(args.tuple))
    ubb = formats.read_ubb(_path(args.ubb), code.g1)
    state = DecoderState(code, ubb)
    e = state.r_tw if args.errors is None else args.errors
    spec = ChannelSpec(e, args.seed, args.trials)
    try:
        stats = simulate(state, spec, stress=args.stress)
    except SimulationFailure as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.tsv:
        print(SimulationStats.TSV_HEADER)
        print(stats.tsv())
    else:
        print(stats.summary())
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import report_tables

    tables = (args.table,) if args.table else (1, 2)
    rep = report_tables(tables)
    print(rep.tsv() if args.tsv else rep.format())
    return EXIT_FAIL if rep.diff() else EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistcode", description="Twisted permutation codes and UBB decoding.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--tsv", action="store_true", help="tab-separated output")
        return p

    p = add("mindist", cmd_mindist, "order and minimum distance of a group file")
    p.add_argument("group")

    p = add("delta", cmd_delta, "distances and correction parameters of a tuple file")
    p.add_argument("tuple")
    p.add_argument("--check-permutational", action="store_true")

    p = add("encode", cmd_encode, "codeword of a group element")
    p.add_argument("tuple")
    p.add_argument("element", help="cycle notation or [image list]")

    p = add("decode", cmd_decode, "decode a received word")
    p.add_argument("tuple")
    p.add_argument("ubb")
    p.add_argument("word", help="e.g. '4,7,1,6,7,8,2,5 | 4,4,6,1,8,3,5,2'")
    p.add_argument("--log", help="write the attempt log here instead of stdout")
    p.add_argument("--no-check", action="store_true", help="skip the UBB strength gate")

    ubb = sub.add_parser("ubb", help="uncovering-by-bases tools")
    usub = ubb.add_subparsers(dest="ubb_command", required=True)
    p = usub.add_parser("verify", help="check rows are bases and the strength holds")
    p.set_defaults(func=cmd_ubb_verify)
    p.add_argument("ubb")
    p.add_argument("--group")
    p.add_argument("--degree", type=int)
    p.add_argument("--strength", type=int)
    p.add_argument("--sample", action="store_true", help="sample subsets when the exhaustive check is too big")
    p.add_argument("--seed", type=int, default=0)
    p = usub.add_parser("from-cover", help="UBB from block complements of a covering design")
    p.set_defaults(func=cmd_ubb_from_cover)
    p.add_argument("cover")
    p.add_argument("--group", required=True)
    p.add_argument("-o", "--output")
    p = usub.add_parser("relabel", help="search a relabelling making all complements bases")
    p.set_defaults(func=cmd_ubb_relabel)
    p.add_argument("cover")
    p.add_argument("--group", required=True)
    p.add_argument("--attempts", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    p = add("saxl", cmd_saxl, "Saxl graph and a matching UBB of a base-size-2 group")
    p.add_argument("group")
    p.add_argument("--size", type=int, help="matching size (default floor(n/2))")

    gkp = sub.add_parser("gkp", help="the affine groups G_k(p)")
    gsub = gkp.add_subparsers(dest="gkp_command", required=True)
    for name, help_ in (("build", "emit the group file"), ("ubb", "emit a matching UBB file"),
                        ("code", "search a twisted code and write group and tuple files")):
        p = gsub.add_parser(name, help=help_)
        p.set_defaults(func=cmd_gkp)
        p.add_argument("-p", type=int, required=True)
        p.add_argument("-k", type=int, required=True)
        p.add_argument("-o", "--output", help="output file (directory for 'code')")
        p.add_argument("--seed", type=int, default=0)

    p = add("simulate", cmd_simulate, "Monte-Carlo transmit/corrupt/decode")
    p.add_argument("tuple")
    p.add_argument("ubb")
    p.add_argument("-e", "--errors", type=int, help="errors per word (default r_tw)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stress", action="store_true", help="allow e > r_tw and report instead of asserting")

    rep = sub.add_parser("report", help="reports")
    rsub = rep.add_subparsers(dest="report_command", required=True)
    p = rsub.add_parser("tables", help="recompute the parameter tables and diff them")
    p.set_defaults(func=cmd_report)
    p.add_argument("--table", type=int, choices=(1, 2))
    p.add_argument("--tsv", action="store_true")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "tsv"):
        args.tsv = False
    try:
        return args.func(args)
    except (NotABaseError, TupleSearchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, ValueError, EnumerationBudgetError, StrengthBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
