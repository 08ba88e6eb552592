"""Command line interface.

Exit codes: 0 success, 1 parse error, 2 runtime fault, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import docengine, interp, service
from .mdrender import render_html
from .parser import ParseError, parse_program
from .printer import pretty_print
from .tokens import LexError
from .transform import desugar

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_RUNTIME_FAULT = 2
EXIT_USAGE = 3


class _UsageExit(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageExit(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="joliet",
                             description="Toolchain for .jol programs: "
                                         "parse, desugar, run, hover docs, "
                                         "and an HTTP service.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="parse a file and print it back")
    p_parse.add_argument("file")

    p_desugar = sub.add_parser("desugar",
                               help="rewrite arrow-foreach loops into "
                                    "indexed for loops")
    p_desugar.add_argument("file")

    p_run = sub.add_parser("run", help="execute a program")
    p_run.add_argument("file")
    p_run.add_argument("--budget", type=int, default=interp.DEFAULT_BUDGET,
                       help="maximum number of statement executions")

    p_doc = sub.add_parser("doc", help="show documentation for the word "
                                       "under a cursor position")
    p_doc.add_argument("file")
    p_doc.add_argument("--line", type=int, required=True)
    p_doc.add_argument("--col", type=int, required=True)
    p_doc.add_argument("--docs", action="append", default=[],
                       help="extra categorization file (repeatable; later "
                            "files override earlier ones)")
    p_doc.add_argument("--html", action="store_true",
                       help="print rendered HTML instead of markdown")

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--docs", action="append", default=[])
    p_serve.add_argument("--static", default=None,
                         help="directory of playground files to serve at /")

    return parser


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _report_parse_error(err: ParseError | LexError) -> int:
    print(f"parse error at {err.line}:{err.col}: {err.message}",
          file=sys.stderr)
    return EXIT_PARSE_ERROR


def _cmd_parse(args: argparse.Namespace) -> int:
    try:
        program = parse_program(_read_file(args.file))
    except (ParseError, LexError) as err:
        return _report_parse_error(err)
    sys.stdout.write(pretty_print(program))
    return EXIT_OK


def _cmd_desugar(args: argparse.Namespace) -> int:
    status, payload = service.handle_desugar({"source": _read_file(args.file)})
    if status != 200:
        print(f"parse error at {payload['line']}:{payload['col']}: "
              f"{payload['message']}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    sys.stdout.write(payload["source"])
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    if args.budget <= 0:
        raise _UsageExit("--budget must be positive")
    try:
        program = parse_program(_read_file(args.file))
    except (ParseError, LexError) as err:
        return _report_parse_error(err)
    outcome = interp.execute(program, args.budget)
    for line in outcome.output:
        sys.stdout.write(line + "\n")
    if outcome.fault is not None:
        print(f"runtime fault: {outcome.fault.kind} at "
              f"{outcome.fault.line}:{outcome.fault.col}", file=sys.stderr)
        return EXIT_RUNTIME_FAULT
    return EXIT_OK


def _cmd_doc(args: argparse.Namespace) -> int:
    if args.line < 1 or args.col < 1:
        raise _UsageExit("--line and --col must be >= 1")
    source = _read_file(args.file)
    status, payload = service.handle_hover(
        {"source": source, "line": args.line, "col": args.col,
         "docPaths": list(args.docs)})
    if status != 200:
        raise _UsageExit(payload["message"])
    if not payload["found"]:
        return EXIT_OK
    sys.stdout.write(payload["html" if args.html else "fullMarkdown"])
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    if not (0 <= args.port <= 65535):
        raise _UsageExit("--port must be in 0..65535 (0 picks a free port)")
    config = service.ServiceConfig(doc_paths=tuple(args.docs),
                                   static_dir=args.static)
    try:
        docengine.load_doc_db(config.all_doc_paths())
    except docengine.DocDbError as err:
        raise _UsageExit(str(err))
    server = service.make_server(args.host, args.port, config)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


_COMMANDS = {
    "parse": _cmd_parse,
    "desugar": _cmd_desugar,
    "run": _cmd_run,
    "doc": _cmd_doc,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageExit as err:
        print(f"usage error: {err.message}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
