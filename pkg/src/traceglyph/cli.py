"""Command line entry point: generate, detect, render, serve.

Every subcommand is a thin composition of library operations. Data goes to
standard output (or the -o file); diagnostics go to standard error. Exit
codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detect import classification_to_json
from .patterns import (
    PatternError,
    StencilSpec,
    exchange_descriptor,
    gen_trace,
    offset_descriptor,
    ring_descriptor,
)
from .scene import LayoutError
from .session import build_viewport, load_session, scene_for
from .svg import RenderConfig, emit_svg
from .timeline import CycleError
from .trace import MatchError, TraceFormatError, serialize_trace

_VALIDATION_ERRORS = (
    PatternError,
    TraceFormatError,
    MatchError,
    CycleError,
    LayoutError,
    ValueError,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 with a one-line diagnostic, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="traceglyph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic pattern trace")
    gen.add_argument("--family", required=True,
                     choices=["offset", "ring", "exchange", "stencil"])
    gen.add_argument("--pes", type=int, help="number of PEs (offset/ring/exchange)")
    gen.add_argument("--stride", type=int, help="send distance within the pattern")
    gen.add_argument("--group-size", type=int, default=None,
                     help="partition the id space into blocks of this size")
    gen.add_argument("--dims", help="stencil grid, e.g. 4x4x4")
    gen.add_argument("--hops", type=int, default=1, help="stencil neighbor distance")
    gen.add_argument("--diagonals", action="store_true",
                     help="stencil: include diagonal neighbors")
    gen.add_argument("--timesteps", type=int, default=1)
    gen.add_argument("-o", "--output", required=True)

    det = sub.add_parser("detect", help="classify each communication round")
    det.add_argument("trace")

    ren = sub.add_parser("render", help="render a trace to SVG")
    ren.add_argument("trace")
    ren.add_argument("--mode", required=True, choices=["full", "partial", "glyph"])
    ren.add_argument("--rows", help="row window A:B (half open); partial defaults to 0:8")
    ren.add_argument("--width", type=float, default=960.0)
    ren.add_argument("--height", type=float, default=600.0)
    ren.add_argument("-o", "--output", required=True)

    srv = sub.add_parser("serve", help="serve metadata and scenes over HTTP")
    srv.add_argument("trace")
    srv.add_argument("--port", type=int, default=8080)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--viewer-dir", default=None,
                     help="directory of built viewer assets to serve at /")
    return parser


def _parse_span(raw: str) -> tuple[int, int]:
    parts = raw.split(":")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise ValueError(f"window must look like A:B, got {raw!r}") from None
    if len(parts) != 2 or hi <= lo:
        raise ValueError(f"window {raw!r} is empty or malformed")
    return lo, hi


def _cmd_generate(args) -> int:
    if args.family == "stencil":
        if not args.dims:
            raise ValueError("stencil requires --dims")
        dims = tuple(int(part) for part in args.dims.lower().split("x"))
        pattern = StencilSpec(dims, args.hops, args.diagonals)
    else:
        if args.pes is None or args.stride is None:
            raise ValueError(f"{args.family} requires --pes and --stride")
        if args.family == "offset":
            pattern = offset_descriptor(args.pes, args.stride, args.group_size)
        elif args.family == "ring":
            pattern = ring_descriptor(args.pes, args.stride, args.group_size)
        else:
            if args.group_size is not None and args.group_size != 2 * args.stride:
                raise ValueError("exchange group size is fixed at twice the stride")
            pattern = exchange_descriptor(args.pes, args.stride)
    trace = gen_trace(pattern, args.timesteps)
    Path(args.output).write_text(serialize_trace(trace), encoding="utf-8")
    return 0


def _cmd_detect(args) -> int:
    session = load_session(args.trace)
    for round_, cls in zip(session.rounds, session.classifications):
        print(json.dumps(classification_to_json(cls, round_.send_level),
                         separators=(",", ":")))
    return 0


def _cmd_render(args) -> int:
    session = load_session(args.trace)
    rows = _parse_span(args.rows) if args.rows else None
    if args.mode == "full" and rows is not None:
        raise ValueError("full mode shows all rows; omit --rows")
    if args.mode == "partial" and rows is None:
        rows = (0, min(8, session.num_pes))
    viewport = build_viewport(session, args.width, args.height, rows)
    scene = scene_for(session, viewport, args.mode)
    Path(args.output).write_bytes(emit_svg(scene, RenderConfig()))
    return 0


def _cmd_serve(args) -> int:
    from .service import run_server

    session = load_session(args.trace)
    run_server(session, host=args.host, port=args.port, viewer_dir=args.viewer_dir)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "detect": _cmd_detect,
    "render": _cmd_render,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"traceglyph: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"traceglyph: {exc}", file=sys.stderr)
        return 2
    except _VALIDATION_ERRORS as exc:
        print(f"traceglyph: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
