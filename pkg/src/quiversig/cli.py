"""Command-line front end.

Every subcommand prints canonical JSON on stdout; identical inputs and seed
give byte-identical output. Errors are machine-readable JSON on stderr.
Exit codes: 0 success, 1 negative verdict (e.g. no isomorphism found),
2 usage or validation error.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .decomposition import (
    barcode_interval,
    composition_factors,
    fourier_decompose,
    generic_decompose,
)
from .errors import QuiverSigError
from .morphisms import is_isomorphic
from .tda import persistence_barcode

__all__ = ["main", "build_parser"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse hook
        raise _UsageError(message)


def _emit(payload) -> None:
    sys.stdout.write(io.canonical_json(payload) + "\n")


def _diagnostic(kind: str, message: str) -> None:
    sys.stderr.write(io.canonical_json({"error": {"type": kind, "message": message}}) + "\n")


def _require_seed(args) -> int:
    if args.seed is None:
        raise _UsageError("this operation is randomized; pass an explicit --seed")
    return args.seed


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quiversig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, quiver=False, rep=False, signal=False, filt=False, complex_=False):
        if quiver:
            p.add_argument("-q", "--quiver", required=True, help="quiver JSON file")
        if rep:
            p.add_argument("-r", "--rep", required=True, help="representation JSON file")
        if signal:
            p.add_argument("-x", "--signal", help="signal JSON file")
        if filt:
            p.add_argument("-f", "--filter", dest="filter_path", help="filter JSON file")
        if complex_:
            p.add_argument("-c", "--complex", dest="complex_path", required=True,
                           help="filtered complex JSON file")
        p.add_argument("--tol", type=float, default=None,
                       help="absolute singular-value cutoff overriding the default rank tolerance")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized operations")

    p = sub.add_parser("validate", help="load and cross-validate artifact files")
    p.add_argument("-q", "--quiver", help="quiver JSON file")
    p.add_argument("-r", "--rep", help="representation JSON file")
    p.add_argument("-x", "--signal", help="signal JSON file")
    p.add_argument("-f", "--filter", dest="filter_path", help="filter JSON file")
    p.add_argument("-c", "--complex", dest="complex_path", help="filtered complex JSON file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("paths", help="enumerate paths up to a length bound")
    common(p, quiver=True)
    p.add_argument("--max-len", type=int, required=True, help="largest path length to list")
    p.set_defaults(handler=_cmd_paths)

    p = sub.add_parser("filter", help="apply a path-algebra filter to a signal")
    common(p, quiver=True, rep=True, signal=True, filt=True)
    p.set_defaults(handler=_cmd_filter)

    p = sub.add_parser("shift", help="materialize the dense shift operator of one path")
    common(p, quiver=True, rep=True)
    p.add_argument("--arrows", nargs="*", default=[], metavar="ARROW_ID",
                   help="arrow ids in application order (first applied first)")
    p.add_argument("--base", help="node id for a trivial path (when --arrows is empty)")
    p.set_defaults(handler=_cmd_shift)

    p = sub.add_parser("iso", help="randomized isomorphism test with witness")
    common(p, quiver=True)
    p.add_argument("rep_a", help="first representation JSON file")
    p.add_argument("rep_b", help="second representation JSON file")
    p.add_argument("--trials", type=int, default=8)
    p.set_defaults(handler=_cmd_iso)

    p = sub.add_parser("decompose", help="decompose a representation")
    common(p, quiver=True, rep=True, signal=True)
    p.add_argument("--mode", required=True, choices=["barcode", "generic", "fourier", "factors"])
    p.add_argument("--max-rounds", type=int, default=8,
                   help="sampling rounds per piece for --mode generic")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("tda", help="barcode of a filtered simplicial complex")
    common(p, complex_=True)
    p.add_argument("--degree", type=int, required=True, help="homology degree k")
    p.set_defaults(handler=_cmd_tda)

    p = sub.add_parser("report", help="write a barcode CSV and figure to a directory")
    p.add_argument("-q", "--quiver", help="quiver JSON file (with --rep)")
    p.add_argument("-r", "--rep", help="representation JSON file")
    p.add_argument("-c", "--complex", dest="complex_path", help="filtered complex JSON file")
    p.add_argument("--degree", type=int, default=None, help="homology degree (with --complex)")
    p.add_argument("--outdir", required=True, help="output directory for barcode.csv / barcode.png")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=_cmd_report)

    return parser


def _cmd_validate(args) -> int:
    ws = io.Workspace.load(
        quiver_path=args.quiver,
        rep_path=args.rep,
        signal_path=args.signal,
        filter_path=args.filter_path,
        complex_path=args.complex_path,
        seed=args.seed,
    )
    summary: dict = {"ok": True}
    if ws.quiver is not None:
        summary["quiver"] = {"nodes": len(ws.quiver.nodes), "arrows": len(ws.quiver.arrows)}
    if ws.rep is not None:
        summary["rep"] = {"total_dim": ws.rep.total_dim, "dims": ws.rep.dims}
    if ws.signal is not None:
        summary["signal"] = {"total_dim": int(ws.signal.flatten().shape[0])}
    if ws.filter is not None:
        summary["filter"] = {"terms": len(ws.filter)}
    if ws.complex is not None:
        summary["complex"] = {"simplices": len(ws.complex), "n": ws.complex.n}
    _emit(summary)
    return 0


def _cmd_paths(args) -> int:
    ws = io.Workspace.load(quiver_path=args.quiver)
    if args.max_len < 0:
        raise _UsageError("--max-len must be nonnegative")
    paths = ws.quiver.enumerate_paths(args.max_len)
    entries = []
    for p in paths:
        entry = {"path": list(p.arrow_ids)}
        if p.is_trivial:
            entry["base"] = p.base
        entries.append(entry)
    _emit({"count": len(entries), "paths": entries})
    return 0


def _cmd_filter(args) -> int:
    if args.signal is None or args.filter_path is None:
        raise _UsageError("filter needs -x/--signal and -f/--filter")
    ws = io.Workspace.load(quiver_path=args.quiver, rep_path=args.rep,
                           signal_path=args.signal, filter_path=args.filter_path)
    result = ws.rep.apply_filter(ws.filter, ws.signal)
    _emit(io.signal_to_dict(result))
    return 0


def _cmd_shift(args) -> int:
    ws = io.Workspace.load(quiver_path=args.quiver, rep_path=args.rep)
    path = ws.quiver.path(args.arrows, base=args.base)
    shift = ws.rep.shift_operator(path)
    _emit({
        "dim": shift.dim,
        "head": shift.head,
        "tail": shift.tail,
        "matrix": io.matrix_to_dict(shift.matrix),
    })
    return 0


def _cmd_iso(args) -> int:
    seed = _require_seed(args)
    ws = io.Workspace.load(quiver_path=args.quiver)
    rep_a = io.representation_from_dict(io.load_json(args.rep_a), ws.quiver)
    rep_b = io.representation_from_dict(io.load_json(args.rep_b), ws.quiver)
    verdict = is_isomorphic(rep_a, rep_b, trials=args.trials, seed=seed, tol=args.tol)
    payload = {
        "isomorphic": verdict.isomorphic,
        "witness": io.intertwiner_to_dict(verdict.witness) if verdict.witness else None,
    }
    if not verdict.isomorphic:
        # a negative verdict is a failed search, not a proof
        payload["note"] = "no isomorphism found"
    _emit(payload)
    return 0 if verdict.isomorphic else 1


def _cmd_decompose(args) -> int:
    ws = io.Workspace.load(quiver_path=args.quiver, rep_path=args.rep,
                           signal_path=args.signal if args.mode == "fourier" else None)
    if args.mode == "barcode":
        _emit(io.barcode_to_dict(barcode_interval(ws.rep, tol=args.tol)))
        return 0
    if args.mode == "factors":
        _emit({"factors": composition_factors(ws.rep)})
        return 0
    if args.mode == "generic":
        seed = _require_seed(args)
        result = generic_decompose(ws.rep, seed=seed, max_rounds=args.max_rounds, tol=args.tol)
        _emit({
            "count": len(result),
            "summands": [
                {
                    "dims": s.rep.dims,
                    "flag": s.flag,
                    "basis": {n: io.matrix_to_dict(b) for n, b in s.basis.items()},
                }
                for s in result
            ],
        })
        return 0
    # fourier
    if ws.signal is None:
        raise _UsageError("decompose --mode fourier needs -x/--signal")
    fourier = fourier_decompose(ws.rep, ws.signal)
    _emit({
        "multiplicities": fourier.multiplicities,
        "components": {n: [float(x) for x in v] for n, v in fourier.components.items()},
    })
    return 0


def _cmd_tda(args) -> int:
    if args.degree < 0:
        raise _UsageError("--degree must be nonnegative")
    ws = io.Workspace.load(complex_path=args.complex_path)
    barcode = persistence_barcode(ws.complex, args.degree)
    payload = io.barcode_to_dict(barcode)
    payload["degree"] = args.degree
    _emit(payload)
    return 0


def _cmd_report(args) -> int:
    from .report import write_barcode_report  # matplotlib import deferred

    if args.complex_path is not None:
        if args.degree is None:
            raise _UsageError("report over a complex needs --degree")
        ws = io.Workspace.load(complex_path=args.complex_path)
        barcode = persistence_barcode(ws.complex, args.degree)
        title = f"degree-{args.degree} persistence barcode"
    elif args.rep is not None:
        if args.quiver is None:
            raise _UsageError("report over a representation needs -q/--quiver")
        ws = io.Workspace.load(quiver_path=args.quiver, rep_path=args.rep)
        barcode = barcode_interval(ws.rep, tol=args.tol)
        title = None
    else:
        raise _UsageError("report needs either -c/--complex or -q/--quiver with -r/--rep")
    locations = write_barcode_report(barcode, args.outdir, title=title)
    payload = io.barcode_to_dict(barcode)
    payload.update(locations)
    _emit(payload)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _diagnostic("usage", str(exc))
        return 2
    try:
        return args.handler(args)
    except _UsageError as exc:
        _diagnostic("usage", str(exc))
        return 2
    except QuiverSigError as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    except OSError as exc:
        _diagnostic("io", str(exc))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
