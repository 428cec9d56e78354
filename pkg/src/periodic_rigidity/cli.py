"""Command-line entry point: ``orbit analyze|tgain|svg|gen-gains``.

Exit codes: 0 rigid or success, 1 flexible or failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .counts import DecompositionError, synthesize_constructive_gains
from .errors import PeriodicRigidityError
from .graph import periodic_equivalent
from .orbitfile import read_path, write
from .report import analyze
from .rigidity import DEFAULT_TRIALS, flex_basis
from .svg import render_svg
from .tgain import shifted_positions, t_gains, t_potentials

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _gates(text):
    try:
        v, e = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected V,E such as 12,24") from None
    return v, e


def _window_axis(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(text)
    return int(lo), int(hi)


def _window(text):
    try:
        return [_window_axis(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi per axis, got {text!r}") from None


def _edge_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated edge indices") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbit", description="Infinitesimal rigidity of periodic orbit frameworks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="rank, flex and stress dimensions, counting checks")
    a.add_argument("path")
    a.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--float", dest="float_mode", action="store_true")
    a.add_argument("--allow-degenerate", action="store_true")
    a.add_argument("--gates", type=_gates, default=None, metavar="V,E")
    a.add_argument("--machine", action="store_true", help="flat key=value output")
    a.add_argument("--no-timing", action="store_true", help="omit timings (byte-reproducible output)")

    t = sub.add_parser("tgain", help="relabel gains so a spanning tree carries zero gains")
    t.add_argument("path")
    t.add_argument("--root", type=int, default=0)
    t.add_argument("--tree", type=_edge_list, default=None, metavar="K,K,...",
                   help="edge indices of the spanning tree (default: breadth-first from vertex 0)")
    t.add_argument("--float", dest="float_mode", action="store_true")
    t.add_argument("-o", "--output")

    s = sub.add_parser("svg", help="draw the framework as SVG")
    s.add_argument("path")
    s.add_argument("--window", type=_window, default=None, metavar="LO..HI[,LO..HI...]")
    s.add_argument("--flex-overlay", action="store_true")
    s.add_argument("--project", action="store_true", help="allow drawing d > 3 by its first two coordinates")
    s.add_argument("--float", dest="float_mode", action="store_true")
    s.add_argument("--allow-degenerate", action="store_true")
    s.add_argument("-o", "--output")

    g = sub.add_parser("gen-gains", help="synthesize constructive gains from a spanning-tree decomposition")
    g.add_argument("path")
    g.add_argument("--d", type=int, default=None)
    g.add_argument("-o", "--output")
    return p


def _emit(text, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    doc = read_path(args.path, args.float_mode)
    kwargs = {}
    if args.gates is not None:
        kwargs["gates"] = args.gates
    report = analyze(doc, trials=args.trials, seed=args.seed, float_mode=args.float_mode,
                     allow_degenerate=args.allow_degenerate, **kwargs)
    timing = not args.no_timing
    sys.stdout.write(report.machine(timing) if args.machine else report.text(timing))
    return EXIT_OK if report.rigid else EXIT_FAIL


def cmd_tgain(args) -> int:
    doc = read_path(args.path, args.float_mode)
    g = doc.graph
    pots = t_potentials(g, args.tree, args.root)
    relabelled = t_gains(g, potentials=pots)
    check = periodic_equivalent(g, relabelled)
    if not check:
        raise PeriodicRigidityError(f"internal error: relabelled graph is not equivalent ({check.cycle})")
    positions = None
    if doc.has_positions:
        positions = tuple(map(tuple, shifted_positions(doc.positions, pots, doc.lattice)))
    out = doc.replace(edges=relabelled.edges, positions=positions)
    header = [f"# root {pots.root}", f"# tree edges {' '.join(map(str, pots.tree))}", "# potentials"]
    header += [f"#   {v}: {' '.join(map(str, z))}" for v, z in enumerate(pots.potential)]
    _emit("\n".join(header) + "\n" + write(out), args.output)
    return EXIT_OK


def cmd_svg(args) -> int:
    doc = read_path(args.path, args.float_mode)
    F = doc.framework(args.allow_degenerate)
    window = None
    if args.window is not None:
        axes = args.window
        if len(axes) == 1:
            axes = axes * F.d
        if len(axes) != F.d:
            raise PeriodicRigidityError(f"--window needs 1 or {F.d} ranges, got {len(axes)}")
        window = (tuple(a for a, _ in axes), tuple(b for _, b in axes))
    flex = None
    if args.flex_overlay:
        basis = flex_basis(F, args.float_mode)
        if len(basis):
            flex = basis.velocities(0)
        else:
            print("orbit svg: framework is infinitesimally rigid; no flex to draw", file=sys.stderr)
    _emit(render_svg(F, window=window, flex=flex, project=args.project), args.output)
    return EXIT_OK


def cmd_gen_gains(args) -> int:
    doc = read_path(args.path)
    d = doc.d if args.d is None else args.d
    try:
        g = synthesize_constructive_gains(doc.graph, d)
    except DecompositionError as exc:
        f = exc.failure
        print(f"orbit gen-gains: no {d} edge-disjoint spanning trees: {f.reason}; "
              f"edges {list(f.edges)} on vertices {list(f.vertices)}",
              file=sys.stderr)
        return EXIT_FAIL
    if d == doc.d:
        out = doc.replace(edges=g.edges)
    else:
        out = doc.replace(d=d, edges=g.edges, lattice=None, positions=None)
    _emit(write(out), args.output)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "tgain": cmd_tgain,
    "svg": cmd_svg,
    "gen-gains": cmd_gen_gains,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (PeriodicRigidityError, OSError, IndexError) as exc:
        print(f"orbit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
