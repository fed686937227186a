"""Command-line entry point: ``grasslab build|check|recognize|gallery|export``.

Exit codes: 0 success, 1 usage or parse error, 2 a semantic failure
(a suite failed, a map was not recognized, a gallery claim failed).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import chow, gallery, suites
from .fileio import FormatError, dumps, geometry_to_dict, load_geometry, load_map, write_json
from .grassmann import grassmannian
from .linspace import GeometryError
from .projspace import ProjectiveSpace, build_pg

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for semantic failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    return p


def _frames(text):
    if text == "all":
        return "all"
    if text.startswith("sample:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            n = 0
        if n > 0:
            return n
    raise argparse.ArgumentTypeError("expected 'all' or 'sample:N' with N > 0")


def build_parser():
    common = _common()
    p = _Parser(prog="grasslab", description="Linear spaces, projective spaces and their Grassmann spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", parents=[common], help="build a geometry and write it as JSON")
    b.add_argument("kind", choices=["pg", "punctured", "kreuzer"])
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--q", default="2", help="field order, e.g. 2, 3, 4 or 2^4")
    b.add_argument("--point", type=int, default=0, help="removed point for 'punctured'")
    b.add_argument("--out", help="output path (default: print nothing but counts)")

    c = sub.add_parser("check", parents=[common], help="run check suites on a geometry")
    c.add_argument("suite", help="suite id, module group, 'baseset-lemmas' or 'all'")
    c.add_argument("geometry", help="geometry JSON file")
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--frames", type=_frames, default=50, help="'all' or 'sample:N' (default sample:50)")
    c.add_argument("--roundtrips", type=int, default=20, help="random maps per recognition suite")
    c.add_argument("--no-timing", action="store_true", help="omit timings so reports are byte-stable")

    r = sub.add_parser("recognize", parents=[common], help="classify a map of Grassmann spaces")
    r.add_argument("--map", required=True, dest="map_path")
    r.add_argument("--mode", choices=["chow", "baseset", "base-subset"], default="chow")
    r.add_argument("--frames", type=_frames, default=None, help="frames for the base-subset check")

    g = sub.add_parser("gallery", parents=[common], help="build and verify the counterexample gallery")
    g.add_argument("action", choices=["run", "list"])
    g.add_argument("--item", choices=sorted(gallery.ITEMS))
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--out", help="directory for one JSON bundle per item")

    e = sub.add_parser("export", parents=[common], help="export a Grassmann graph")
    e.add_argument("format", choices=["dot", "json"])
    e.add_argument("geometry")
    e.add_argument("--k", type=int, default=1)
    e.add_argument("--out")
    return p


def _emit(args, human, data):
    sys.stdout.write(dumps(data) if args.json else human + "\n")


# -- commands


def cmd_build(args):
    if args.n < 2:
        raise UsageError("n must be at least 2")
    pg = build_pg(args.n, args.q)
    if args.kind == "pg":
        space = pg
    elif args.kind == "punctured":
        if not 0 <= args.point < pg.n_points:
            raise UsageError(f"point must lie in 0..{pg.n_points - 1}")
        space = pg.restrict([x for x in range(pg.n_points) if x != args.point],
                            label=f"{pg.label}-minus-{args.point}")
    else:
        if args.n != 3:
            raise UsageError("kreuzer is built from PG(3, q); use --n 3")
        space = gallery.kreuzer_plane_space(pg.q)
    counts = {"points": space.n_points, "lines": len(space.lines)}
    if isinstance(space, ProjectiveSpace) and space.n >= 3:
        counts["planes"] = len(grassmannian(space, 2))
    if args.out:
        write_json(args.out, geometry_to_dict(space))
    human = f"{space.label}: " + " ".join(f"{k}={v}" for k, v in counts.items())
    _emit(args, human, {"label": space.label, "counts": counts, "out": args.out})
    return EXIT_OK


def cmd_check(args):
    space = load_geometry(args.geometry)
    try:
        ids = suites.select(args.suite)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}")
    ctx = suites.Context(space=space, k=args.k, seed=args.seed, frames=args.frames, roundtrips=args.roundtrips)
    results = [suites.run(sid, ctx) for sid in ids]
    failed = [r for r in results if not r.passed]
    summary = f"{len(results) - len(failed)} passed, {len(failed)} failed, {sum(r.skipped for r in results)} skipped"
    if args.json:
        rows = [r.to_dict() for r in results]
        if args.no_timing:
            for row in rows:
                del row["seconds"]
        data = {"geometry": space.label, "k": args.k, "seed": args.seed, "ok": not failed, "results": rows}
        sys.stdout.write(dumps(data))
    else:
        out = [r.line(timing=not args.no_timing) for r in results]
        sys.stdout.write("\n".join(out + [summary]) + "\n")
    return EXIT_SEMANTIC if failed else EXIT_OK


def cmd_recognize(args):
    f = load_map(args.map_path)
    frames = "sample" if args.frames is None else args.frames
    if isinstance(frames, int):
        frames = chow.frames_for(f.source.ambient, "sample", samples=frames, seed=args.seed)[0]
    res = chow.recognize(f, mode=args.mode, frames=frames, seed=args.seed)
    checks = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(res.checks.items()) if isinstance(v, bool))
    human = f"verdict: {res.verdict}\nchecks: {checks}"
    if res.diagnostic:
        human += f"\ndiagnostic: {res.diagnostic}"
    if res.witness is not None:
        human += f"\nwitness: {list(res.witness.map)}"
    _emit(args, human, res.to_dict())
    return EXIT_OK if res.recognized else EXIT_SEMANTIC


def cmd_gallery(args):
    ids = [args.item] if args.item else list(gallery.ITEMS)
    if args.action == "list":
        _emit(args, "\n".join(ids), ids)
        return EXIT_OK
    items = [gallery.run_item(i, args.q) for i in ids]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for it in items:
            with open(os.path.join(args.out, f"{it.id}.json"), "w") as fh:
                fh.write(it.to_json())
    lines = []
    for it in items:
        lines.append(f"{'PASS' if it.ok else 'FAIL'} {it.id} ({len(it.claims)} claims)")
        lines += [f"  FAIL {c.name}" for c in it.claims if not c.passed]
    _emit(args, "\n".join(lines), [it.to_dict() for it in items])
    return EXIT_OK if all(it.ok for it in items) else EXIT_SEMANTIC


def cmd_export(args):
    G = grassmannian(load_geometry(args.geometry), args.k)
    text = G.to_dot() if args.format == "dot" else dumps(G.to_dict())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _emit(args, f"wrote {args.out}: {len(G)} nodes, {G.edge_count()} edges",
              {"out": args.out, "nodes": len(G), "edges": G.edge_count()})
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "check": cmd_check,
    "recognize": cmd_recognize,
    "gallery": cmd_gallery,
    "export": cmd_export,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FormatError, GeometryError, OSError, ValueError) as e:
        print(f"grasslab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
