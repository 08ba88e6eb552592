"""HTTP+JSON endpoints over the language toolchain.

Endpoints: POST /hover, /desugar, /run, /tokenize and GET /health.
The handlers are plain functions from a request body to a (status,
payload) pair; the CLI reuses them so both surfaces share one code path
per feature. Responses are serialized deterministically, so identical
requests produce byte-identical bodies.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path as FilePath

from . import docengine, interp
from .mdrender import first_paragraph, render_html
from .parser import ParseError, parse_program
from .printer import pretty_print
from .tokens import LexError, tokenize
from .transform import desugar

BUDGET_CAP = 100_000

_EMPTY_HOVER = {
    "found": False,
    "word": "",
    "category": "",
    "snippet": "",
    "fullMarkdown": "",
    "html": "",
}


@dataclass(frozen=True)
class ServiceConfig:
    doc_paths: tuple[str, ...] = ()
    static_dir: str | None = None

    def all_doc_paths(self, extra: list[str] | None = None) -> list[str]:
        paths = [docengine.default_doc_path(), *self.doc_paths]
        if extra:
            paths.extend(extra)
        return paths


def _bad_request(message: str) -> tuple[int, dict]:
    return 400, {"message": message}


def _parse_error_payload(err: ParseError | LexError) -> tuple[int, dict]:
    message = err.message if isinstance(err, ParseError) else err.message
    return 422, {"line": err.line, "col": err.col, "message": message}


def handle_hover(body: object, config: ServiceConfig = ServiceConfig()) -> tuple[int, dict]:
    if not isinstance(body, dict):
        return _bad_request("request body must be a JSON object")
    source = body.get("source")
    line = body.get("line")
    col = body.get("col")
    doc_paths = body.get("docPaths", [])
    if not isinstance(source, str):
        return _bad_request("'source' must be a string")
    for name, value in (("line", line), ("col", col)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            return _bad_request(f"'{name}' must be an int >= 1")
    if not (isinstance(doc_paths, list)
            and all(isinstance(p, str) for p in doc_paths)):
        return _bad_request("'docPaths' must be a list of strings")

    program = None
    try:
        program = parse_program(source)
    except (ParseError, LexError):
        program = None
    try:
        db = docengine.load_doc_db(config.all_doc_paths(doc_paths), program)
    except docengine.DocDbError as err:
        return _bad_request(str(err))
    result = docengine.hover(program, source, line, col, db)
    if result is None:
        return 200, dict(_EMPTY_HOVER)
    return 200, {
        "found": True,
        "word": result.word,
        "category": result.category.value,
        "snippet": first_paragraph(result.markdown),
        "fullMarkdown": result.markdown,
        "html": render_html(result.markdown),
    }


def handle_desugar(body: object, config: ServiceConfig = ServiceConfig()) -> tuple[int, dict]:
    if not isinstance(body, dict) or not isinstance(body.get("source"), str):
        return _bad_request("'source' must be a string")
    try:
        program = parse_program(body["source"])
    except (ParseError, LexError) as err:
        return _parse_error_payload(err)
    return 200, {"source": pretty_print(desugar(program))}


def handle_run(body: object, config: ServiceConfig = ServiceConfig()) -> tuple[int, dict]:
    if not isinstance(body, dict) or not isinstance(body.get("source"), str):
        return _bad_request("'source' must be a string")
    budget = body.get("budget", interp.DEFAULT_BUDGET)
    if not isinstance(budget, int) or isinstance(budget, bool):
        return _bad_request("'budget' must be an int")
    if not (0 < budget <= BUDGET_CAP):
        return _bad_request(f"'budget' must be in 1..{BUDGET_CAP}")
    try:
        program = parse_program(body["source"])
    except (ParseError, LexError) as err:
        return _parse_error_payload(err)
    outcome = interp.execute(program, budget)
    if outcome.fault is not None:
        return 200, {
            "output": outcome.output,
            "fault": {
                "kind": outcome.fault.kind,
                "line": outcome.fault.line,
                "col": outcome.fault.col,
            },
        }
    return 200, {"output": outcome.output, "dump": outcome.dump}


def handle_tokenize(body: object, config: ServiceConfig = ServiceConfig()) -> tuple[int, dict]:
    if not isinstance(body, dict) or not isinstance(body.get("source"), str):
        return _bad_request("'source' must be a string")
    try:
        tokens = tokenize(body["source"])
    except LexError as err:
        return 422, {"line": err.line, "col": err.col, "message": err.message}
    return 200, {"tokens": [
        {"kind": t.kind.value, "text": t.text, "line": t.line,
         "col": t.col, "len": t.len}
        for t in tokens
    ]}


_POST_ROUTES = {
    "/hover": handle_hover,
    "/desugar": handle_desugar,
    "/run": handle_run,
    "/tokenize": handle_tokenize,
}


def encode_payload(payload: dict) -> bytes:
    return json.dumps(payload, separators=(",", ":")).encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    server_version = "joliet"
    config: ServiceConfig = ServiceConfig()

    def log_message(self, format: str, *args: object) -> None:
        pass  # keep test output quiet

    def _send_json(self, status: int, payload: dict) -> None:
        body = encode_payload(payload)
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self) -> None:
        handler = _POST_ROUTES.get(self.path)
        if handler is None:
            self._send_json(404, {"message": f"no such endpoint: {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            body = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            self._send_json(400, {"message": "request body is not valid JSON"})
            return
        status, payload = handler(body, self.config)
        self._send_json(status, payload)

    def do_GET(self) -> None:
        if self.path == "/health":
            self._send_json(200, {"status": "ok"})
            return
        if self._serve_static():
            return
        self._send_json(404, {"message": f"not found: {self.path}"})

    def _serve_static(self) -> bool:
        if self.config.static_dir is None:
            return False
        root = FilePath(self.config.static_dir).resolve()
        rel = self.path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if not (target.is_file() and target.is_relative_to(root)):
            return False
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)
        return True


def make_server(host: str = "127.0.0.1", port: int = 0,
                config: ServiceConfig = ServiceConfig()) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"config": config})
    return ThreadingHTTPServer((host, port), handler)


def serve_in_thread(config: ServiceConfig = ServiceConfig()) -> tuple[ThreadingHTTPServer, threading.Thread]:
    """Start a server on an ephemeral loopback port (used by tests)."""
    server = make_server(config=config)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread
