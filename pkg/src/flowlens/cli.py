"""Command-line entry points: corpus generation and the HTTP service."""

from __future__ import annotations

import argparse
import sys
import threading
from pathlib import Path

from .generator import ConfigError, generate_corpus, load_config
from .ingest import LoadError
from .service import create_app


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
        trips, events, concept = generate_corpus(config, args.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {trips}")
    print(f"wrote {events}")
    print(f"wrote {concept}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    try:
        app = create_app(args.data_dir, args.concept_db, eager=True)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.reload_interval is not None:
        stop = threading.Event()

        def reload_periodically() -> None:
            while not stop.wait(args.reload_interval):
                try:
                    app.state.store.reload()
                except LoadError as exc:
                    print(f"reload failed, keeping old snapshot: {exc}", file=sys.stderr)

        app.state.reload_stop = stop
        threading.Thread(target=reload_periodically, daemon=True).start()

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowlens",
        description="Task-scoped user-flow analytics over in-vehicle touchscreen telemetry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a seeded synthetic corpus")
    gen.add_argument("--config", type=Path, required=True, help="generator config JSON")
    gen.add_argument("--out", type=Path, required=True, help="output directory")
    gen.set_defaults(func=_cmd_generate)

    serve = sub.add_parser("serve", help="serve the analysis API over HTTP")
    serve.add_argument("--data-dir", type=Path, required=True, help="directory of *.ndjson logs")
    serve.add_argument("--concept-db", type=Path, required=True, help="concept database JSON")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--reload-interval",
        type=float,
        default=None,
        help="reload the snapshot every N seconds",
    )
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
