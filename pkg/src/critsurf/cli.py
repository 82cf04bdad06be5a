"""Command-line entry point: ``critsurf <verb> ...``."""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import networkx as nx

from .surface_map import EmbeddedGraph, EmbeddingError, build_from_neighbors, euler_genus, parse_emg, write_emg


class InputError(Exception):
    pass


def _read_text(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_emg(path) -> EmbeddedGraph:
    try:
        return parse_emg(_read_text(path))
    except (EmbeddingError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_any(path):
    """An EmbeddedGraph for EMG input, otherwise a networkx graph read as graph6."""
    text = _read_text(path)
    if text.lstrip().startswith("EMG"):
        try:
            return parse_emg(text)
        except (EmbeddingError, ValueError) as exc:
            raise InputError(f"{path}: {exc}") from exc
    line = text.strip().splitlines()[0] if text.strip() else ""
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    try:
        return nx.from_graph6_bytes(line.encode())
    except (nx.NetworkXError, ValueError, IndexError) as exc:
        raise InputError(f"{path}: neither EMG nor graph6") from exc


def embed_abstract(graph: nx.Graph) -> EmbeddedGraph:
    """A plane embedding when the graph is planar, otherwise the sorted rotation system."""
    from .samples import planar_embedding

    g = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    if nx.check_planarity(g)[0]:
        return planar_embedding(g)
    return build_from_neighbors([sorted(g.neighbors(v)) for v in range(g.number_of_nodes())])


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc


def _multiset(text):
    text = text.strip().strip("{}")
    try:
        return tuple(sorted(int(x) for x in text.split(",") if x.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a multiset of integers: {text}") from exc


def _fmt_ms(ms):
    return "{" + ",".join(map(str, ms)) + "}" if ms else "∅"


def _emit(args, name, G):
    if args.emit_witness:
        os.makedirs(args.emit_witness, exist_ok=True)
        with open(os.path.join(args.emit_witness, name), "w") as fh:
            fh.write(write_emg(G))


# ---------------------------------------------------------------------------
# verbs

def cmd_analyze(args):
    from .weights import WeightReport, fmt, four_cycles, ring_params, surf, total_weight, triangles

    G = load_emg(args.graph)
    lengths = sorted(G.face_length(f) for f in G.internal_faces())
    census = {}
    for l in lengths:
        census[l] = census.get(l, 0) + 1
    nr, t0, t1, ell = ring_params(G)
    vals = {"n": G.n, "m": G.m, "genus": euler_genus(G), "orientable": G.is_orientable(),
            "faces": " ".join(f"{l}:{c}" for l, c in sorted(census.items())),
            "rings": nr, "t0": t0, "t1": t1, "ell": ell,
            "triangles": triangles(G), "four_cycles": len(four_cycles(G)), "w": total_weight(G)}
    try:
        sv = surf(G.genus, nr, t0, t1)
        vals["surf"] = sv
        vals["eta"] = args.eta
        vals["bound"] = args.eta * sv + ell
    except ValueError:
        pass
    print(WeightReport(vals, True).text(), end="")
    return 0


def _parse_precoloring(text):
    phi = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            v, c = part.split("=")
            phi[int(v)] = int(c)
        except ValueError as exc:
            raise InputError(f"bad precoloring entry {part!r}; use v=c") from exc
    return phi


def cmd_color(args):
    from .coloring import ImproperPrecoloring, extend, three_color

    G = load_emg(args.graph)
    if G.rings:
        if args.precoloring is None:
            raise InputError("the graph has rings; give --precoloring v=c,...")
        try:
            col = extend(G, _parse_precoloring(args.precoloring))
        except ImproperPrecoloring as exc:
            raise InputError(str(exc)) from exc
    else:
        col = three_color(G.n, [(u, v) for u, v, _ in G.edges])
    if col is None:
        print("coloring = none")
        print("verdict = fail")
        return 1
    print("coloring = " + " ".join(map(str, col)))
    print("verdict = pass")
    return 0


def cmd_critical(args):
    from .coloring import is_4_critical, is_R_critical

    G = load_any(args.graph)
    if isinstance(G, EmbeddedGraph) and G.rings:
        cert = is_R_critical(G)
        print("kind = ring-critical")
        for (kind, x), phi in sorted(cert.witnesses.items()):
            print(f"witness {kind} {x} = {' '.join(map(str, phi))}")
        if not cert.verdict:
            print(f"reason = {cert.reason}")
        ok = cert.verdict
    else:
        ok = is_4_critical(G)
        print("kind = 4-critical")
    print(f"verdict = {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def cmd_reduce(args):
    from .reduce import PreconditionFailed, internal_quads, reduce_4face

    G = load_emg(args.graph)
    faces = [args.face] if args.face is not None else internal_quads(G)
    if not faces:
        raise InputError("the graph has no internal 4-face")
    last = None
    for f in faces:
        try:
            res = reduce_4face(G, f)
        except PreconditionFailed as exc:
            last = exc
            if args.face is not None:
                break
            continue
        print(f"face = {f}")
        print("quad = " + " ".join(map(str, res.quad)))
        print("psi = " + " ".join(map(str, res.psi)))
        print(res.cover.text(), end="")
        for k, v in res.checks.items():
            print(f"{k} = {v}")
        _emit(args, "reduced.emg", res.graph)
        print("verdict = pass")
        return 0
    print(f"precondition = {last}")
    print("verdict = fail")
    return 1


def cmd_flip(args):
    from .reduce import find_flippable, flip

    G = load_emg(args.graph)
    wit = find_flippable(G)
    if wit is None:
        print("flippable = none")
        print("verdict = fail")
        return 1
    res = flip(G, wit)
    print("cycle = " + " ".join(map(str, wit.cycle)))
    print(f"quad_face = {res.quad_face}")
    sys.stdout.write(write_emg(res.graph))
    _emit(args, "flipped.emg", res.graph)
    print("verdict = pass")
    return 0


def cmd_census(args):
    from .census import disk_catalog

    cat = disk_catalog(args.girth, args.ring, args.max_n)
    body = ", ".join(_fmt_ms(ms) for ms in cat.multisets())
    print(f"S_{{{args.girth},{args.ring}}} = {{{body}}}")
    print(f"exhaustive_up_to = {cat.exhaustive_up_to}")
    for k, v in cat.stats.items():
        print(f"{k} = {v}")
    if args.out:
        cat.write(args.out, args.emit_witness)
    elif args.emit_witness:
        cat.write(os.path.join(args.emit_witness, f"catalog_r{args.girth}_k{args.ring}.txt"), args.emit_witness)
    return 0


def cmd_refine(args):
    from .census import CatalogIncomplete, disk_catalog, is_refinement

    top = max(args.s1 + args.s2 + (4,)) + 2
    cats = {k: disk_catalog(4, k, args.max_n) for k in range(4, min(top, args.max_ring + 2) + 1)}
    try:
        res = is_refinement(args.s2, args.s1, cats)
    except CatalogIncomplete as exc:
        print(f"error = {exc}")
        print("verdict = fail")
        return 1
    for p, a, z in res.chain:
        print(f"step {_fmt_ms(p)} replace {a} by {_fmt_ms(z)}")
    print(f"caveat = catalogs exhaustive up to n={args.max_n}")
    print(f"verdict = {'pass' if res.verdict else 'fail'}")
    return 0 if res.verdict else 1


def cmd_verify(args):
    from .census import SUITES, prefetch_catalogs, run_verification

    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    kw = {}
    if args.suite in ("disk-bounds", "refinement", "reduce"):
        kw = {"max_n": args.max_n or 10, "max_ring": args.max_ring or 8}
        top = kw["max_ring"] + (2 if args.suite == "refinement" else 0)
        specs = [(4, k, kw["max_n"]) for k in range(4, top + 1)]
        if args.suite == "refinement":
            specs += [(5, k, kw["max_n"]) for k in range(5, kw["max_ring"] + 1)]
        prefetch_catalogs(specs, args.jobs)
    elif args.suite == "girth5":
        kw = {"max_n": args.max_n or 12}
        prefetch_catalogs([(5, k, kw["max_n"]) for k in (5, 6, 7, 8, 9)], args.jobs)
    elif args.suite == "gimbel-thomassen":
        kw = {"max_n": args.max_n or 10}
    rep = run_verification(args.suite, **kw)
    print(rep.text(), end="")
    return 0 if rep.verdict else 1


def cmd_decompose(args):
    from .decompose import HasTriangle, deletion_set

    G = load_any(args.graph)
    if not isinstance(G, EmbeddedGraph):
        G = embed_abstract(G)
    try:
        res = deletion_set(G, args.kappa)
    except HasTriangle as exc:
        raise InputError(str(exc)) from exc
    print(res.text(), end="")
    return 0


VERBS = {
    "analyze": cmd_analyze,
    "color": cmd_color,
    "critical": cmd_critical,
    "reduce": cmd_reduce,
    "flip": cmd_flip,
    "census": cmd_census,
    "refine": cmd_refine,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eta", type=_fraction, default=Fraction(1), help="weight constant eta (default 1)")
    common.add_argument("--kappa", type=_fraction, default=None, help="weight constant kappa (default 1600/s(5))")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (1 = serial)")
    common.add_argument("--emit-witness", metavar="DIR", default=None, help="write EMG witnesses to DIR")

    p = argparse.ArgumentParser(prog="critsurf", description="Triangle-free 3-coloring on surfaces.")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in ("analyze", "color", "critical", "reduce", "flip", "decompose"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("graph", help="EMG file (graph6 accepted for critical and decompose); '-' for stdin")
        if verb == "color":
            sp.add_argument("--precoloring", help="ring colors as v=c,v=c,...")
        if verb == "reduce":
            sp.add_argument("--face", type=int, default=None, help="internal 4-face to reduce")
    sp = sub.add_parser("census", parents=[common])
    sp.add_argument("--girth", type=int, choices=(4, 5), default=4)
    sp.add_argument("--ring", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--out", help="write the catalog file here")
    sp = sub.add_parser("refine", parents=[common])
    sp.add_argument("--s1", type=_multiset, required=True)
    sp.add_argument("--s2", type=_multiset, required=True)
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--max-ring", type=int, default=8)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("suite")
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--max-ring", type=int, default=None)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb == "census" and (args.ring < 4 or args.max_n < args.ring):
            parser.error("census needs --ring >= 4 and --max-n >= --ring")
        if args.jobs < 1:
            parser.error("--jobs must be positive")
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return VERBS[args.verb](args)
    except InputError as exc:
        print(f"critsurf: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
