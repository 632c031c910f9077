"""Command-line front end.

Exit codes are part of the scripting contract: 2 feed/ingest failures,
3 training failures, 4 empty analyses, 5 serve bind failures, 64 usage
errors.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
from pathlib import Path
from typing import NoReturn

from . import __version__
from .errors import (
    CorpusTooSmall,
    DanglingLink,
    EmptyInput,
    MalformedFeed,
    MalformedTopology,
    PosturalError,
)
from .graph.model import Layer
from .graph.serialize import GRAPH_SCHEMA, canonical_json, graph_to_payload, load_graph
from .ingest.feeds import read_feed_file
from .ingest.inventory import load_topology
from .ingest.recordstore import load_records, save_records
from .pipeline import parse_layer, run_analysis
from .risk.analytics import ANALYTICS_SCHEMA, analytics_to_payload, analyze
from .risk.scores import Constants
from .semantics.corpus import build_corpus
from .semantics.embeddings import TrainingConfig, train_embeddings
from .semantics.modelio import load_model, save_model
from .store.container import unwrap, wrap

EXIT_INGEST = 2
EXIT_TRAINING = 3
EXIT_ANALYSIS = 4
EXIT_SERVE = 5
EXIT_USAGE = 64

_LAYER_FILENAMES = {
    Layer.Network: "network",
    Layer.SystemHardware: "system_hardware",
    Layer.MachineLearning: "machine_learning",
    Layer.Crypto: "crypto",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(exit_code: int, message: str) -> NoReturn:
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(exit_code)


# --- commands ---------------------------------------------------------------

def _cmd_ingest(args) -> int:
    records = []
    entries = dropped = 0
    for feed in args.feed:
        stats: dict = {}
        try:
            records.extend(read_feed_file(feed, stats=stats))
        except FileNotFoundError:
            _fail(EXIT_INGEST, f"{feed}: no such file")
        except OSError as exc:
            _fail(EXIT_INGEST, f"{feed}: {exc}")
        except MalformedFeed as exc:
            where = f" at byte {exc.offset}" if exc.offset is not None else ""
            _fail(EXIT_INGEST, f"{feed}: {exc}{where}")
        except PosturalError as exc:
            _fail(EXIT_INGEST, f"{feed}: {exc}")
        entries += stats.get("entries", 0)
        dropped += stats.get("dropped", 0)
    save_records(records, args.out)
    noun = "record" if len(records) == 1 else "records"
    print(f"parsed {len(records)} {noun} from {entries} entries ({dropped} dropped)")
    print(f"wrote {args.out}")
    return 0


def _cmd_train(args) -> int:
    if args.dim < 1 or args.window < 1 or args.epochs < 1:
        _fail(EXIT_USAGE, "--dim, --window and --epochs must be >= 1")
    try:
        records = load_records(args.records)
    except FileNotFoundError:
        _fail(EXIT_TRAINING, f"{args.records}: no such file")

    extra_docs = []
    if args.corpus:
        corpus_dir = Path(args.corpus)
        if not corpus_dir.is_dir():
            _fail(EXIT_TRAINING, f"{args.corpus}: not a directory")
        for path in sorted(corpus_dir.glob("*.txt")):
            # one document per non-empty line
            extra_docs.extend(
                line for line in path.read_text("utf-8").splitlines() if line.strip()
            )

    corpus = build_corpus(records, extra_docs)
    config = TrainingConfig(
        architecture=args.arch,
        dim=args.dim,
        window=args.window,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        negative_samples=args.negative,
        min_count=args.min_count,
        seed=args.seed,
        workers=args.workers,
    )
    try:
        model = train_embeddings(corpus, config)
    except CorpusTooSmall as exc:
        _fail(EXIT_TRAINING, str(exc))
    for epoch, loss in enumerate(model.epoch_losses, start=1):
        print(f"epoch {epoch}/{config.epochs} loss {loss:.6f}")
    save_model(model, args.out)
    print(f"wrote {args.out} ({len(model.vocabulary)} tokens, dim {model.dim})")
    return 0


def _format_report(payload: dict, timings: tuple[float, float] | None = None) -> str:
    lines = [
        f"graph {payload['graph_id']} v{payload['graph_version']}",
        f"nodes {payload['total_nodes']}  edges {payload['total_edges']}",
        "scores: exploit {exploit_score:.2f}  impact {impact_score:.2f}  "
        "risk {risk_score:.2f}".format(**payload),
        f"attack paths (cutoff {payload['constants']['path_cutoff']}): "
        f"{payload['path_count']} total, {payload['shortest_path_count']} shortest",
        f"vertex cover ({payload['vertex_cover_size']}): "
        + (", ".join(payload["vertex_cover"]) or "(empty)"),
        "key vulnerabilities:",
    ]
    for rank, (node_id, degree) in enumerate(payload["key_vulnerabilities"], start=1):
        lines.append(f"  {rank}. {node_id} (degree {degree})")
    lines.append("top paths:")
    for rank, path in enumerate(payload["top_paths"], start=1):
        route = " -> ".join(path["nodes"])
        lines.append(f"  {rank}. {route} (risk {path['risk_sum']:.4f})")
    if timings is not None:
        lines.append(
            f"timings: scores {timings[0]:.4f}s, analysis {timings[1]:.4f}s"
        )
    return "\n".join(lines) + "\n"


def _cmd_analyze(args) -> int:
    if not 0.0 <= args.threshold <= 1.0:
        _fail(EXIT_USAGE, f"--threshold {args.threshold} outside [0, 1]")
    if args.cutoff < 1:
        _fail(EXIT_USAGE, "--cutoff must be >= 1")
    for path in (args.topology, args.records, args.model):
        if not Path(path).exists():
            _fail(EXIT_ANALYSIS, f"{path}: no such file")

    layers = None
    if args.layer:
        try:
            layers = [parse_layer(l) for l in args.layer]
        except ValueError as exc:
            _fail(EXIT_USAGE, str(exc))

    topology = load_topology(Path(args.topology).read_bytes())
    records = load_records(args.records)
    model = load_model(args.model)
    consts = Constants(path_cutoff=args.cutoff)

    try:
        result = run_analysis(records, topology, model, args.threshold, consts,
                              layers=layers, graph_id=args.graph_id)
    except EmptyInput as exc:
        _fail(EXIT_ANALYSIS, str(exc))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cumulative_payload = analytics_to_payload(result.analytics)
    (out / "cumulative.graph").write_bytes(
        wrap(GRAPH_SCHEMA, canonical_json(graph_to_payload(result.graph)))
    )
    (out / "cumulative.analytics").write_bytes(
        wrap(ANALYTICS_SCHEMA, canonical_json(cumulative_payload))
    )

    report_lines = [_format_report(
        cumulative_payload,
        (result.analytics.score_computation_seconds,
         result.analytics.risk_analysis_seconds),
    )]
    for layer, layer_result in result.layers.items():
        stem = _LAYER_FILENAMES[layer]
        (out / f"{stem}.graph").write_bytes(
            wrap(GRAPH_SCHEMA, canonical_json(graph_to_payload(layer_result.graph)))
        )
        if layer_result.analytics is None:
            report_lines.append(
                f"\nlayer {layer.value}: skipped ({layer_result.skipped_reason})\n"
            )
            continue
        layer_payload = analytics_to_payload(layer_result.analytics)
        (out / f"{stem}.analytics").write_bytes(
            wrap(ANALYTICS_SCHEMA, canonical_json(layer_payload))
        )
        report_lines.append(f"\nlayer {layer.value}\n")
        report_lines.append(_format_report(layer_payload))
    (out / "report.txt").write_text("".join(report_lines), encoding="utf-8")

    print(f"graph {result.graph.graph_id}: {len(result.graph.nodes)} nodes, "
          f"{len(result.graph.edges)} edges")
    print(f"exploit {result.analytics.exploit_score:.2f}  "
          f"impact {result.analytics.impact_score:.2f}  "
          f"risk {result.analytics.risk_score:.2f}")
    print(f"wrote {out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api.app import create_app

    store_root = args.store or os.environ.get("POSTURAL_STORE")
    if not store_root:
        _fail(EXIT_USAGE, "--store or POSTURAL_STORE is required")
    Path(store_root).mkdir(parents=True, exist_ok=True)

    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        _fail(EXIT_USAGE, f"--listen must be host:port, got {args.listen!r}")

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        sock.bind((host, int(port_text)))
        sock.listen(128)
    except OSError as exc:
        sock.close()
        _fail(EXIT_SERVE, f"cannot bind {args.listen}: {exc}")

    app = create_app(store_root)
    print(f"serving on {args.listen} (store: {store_root})")
    uvicorn.run(app, fd=sock.fileno(), log_level="warning")
    return 0


def _cmd_report(args) -> int:
    path = Path(args.graph)
    if not path.exists():
        _fail(EXIT_ANALYSIS, f"{path}: no such file")
    graph = load_graph(unwrap(path.read_bytes(), GRAPH_SCHEMA)[1])

    payload = None
    timings = None
    analytics_path = Path(args.analytics) if args.analytics else path.with_suffix(".analytics")
    if analytics_path.exists():
        import json

        payload = json.loads(unwrap(analytics_path.read_bytes(), ANALYTICS_SCHEMA)[1])
    else:
        analytics = analyze(graph)
        payload = analytics_to_payload(analytics)
        timings = (analytics.score_computation_seconds, analytics.risk_analysis_seconds)

    if args.format == "doc":
        sys.stdout.write(canonical_json(payload).decode("utf-8"))
    else:
        sys.stdout.write(_format_report(payload, timings))
    return 0


# --- wiring -----------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="postural", description=__doc__)
    parser.add_argument("--version", action="version", version=f"postural {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse feed files into a record store")
    p.add_argument("--feed", action="append", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="DB")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("train-embeddings", help="train word vectors on the corpus")
    p.add_argument("--records", required=True, metavar="DB")
    p.add_argument("--corpus", metavar="DIR",
                   help="directory of *.txt files, one document per line")
    p.add_argument("--arch", choices=("cbow", "skipgram"), default="cbow")
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--negative", type=int, default=5)
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--learning-rate", type=float, default=0.025)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, metavar="MODEL")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("analyze", help="run the full posture analysis")
    p.add_argument("--topology", required=True)
    p.add_argument("--records", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=float, default=0.8)
    p.add_argument("--cutoff", type=int, default=8)
    p.add_argument("--layer", action="append", metavar="LAYER")
    p.add_argument("--graph-id")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store", default=None, help="store root (default: $POSTURAL_STORE)")
    p.add_argument("--listen", default="127.0.0.1:8460", metavar="HOST:PORT")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("report", help="render analytics for a graph document")
    p.add_argument("--graph", required=True)
    p.add_argument("--analytics")
    p.add_argument("--format", choices=("text", "doc"), default="text")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedTopology, DanglingLink) as exc:
        _fail(EXIT_ANALYSIS, str(exc))
    except PosturalError as exc:
        _fail(1, f"{exc.code}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
