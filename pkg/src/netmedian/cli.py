"""Command-line interface: a thin client of the HTTP service.

Without --url (or NETMEDIAN_URL) the service runs in-process, so every
subcommand works standalone; with a URL the same requests go to a shared
server that keeps parsed graphs cached between calls.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .client import ServiceClient, ServiceError
from .errors import NetmedianError

URL_ENV = "NETMEDIAN_URL"
DATA_ENV = "NETMEDIAN_DATA"


def _client(args: argparse.Namespace) -> ServiceClient:
    url = args.url or os.environ.get(URL_ENV)
    return ServiceClient(url=url, data_root=args.data_root or os.environ.get(DATA_ENV))


def _print(args: argparse.Namespace, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _parse_vertices(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.replace(",", " ").split()]
    except ValueError:
        raise SystemExit(f"could not parse vertex list {raw!r}")


def cmd_rank(args) -> int:
    with _client(args) as client:
        dataset = client.load_dataset(args.dataset)
        result = client.rank(
            dataset["dataset_id"],
            args.method,
            args.k,
            seed=args.seed,
            suppression=args.suppression,
        )
    lines = [f"# {dataset['name']}: top {args.k} by {args.method}"]
    lines.append("position\tvertex\tcompact_id" + ("\tscore" if result["scores"] else ""))
    for i, vertex in enumerate(result["vertices"]):
        row = f"{i + 1}\t{vertex}\t{result['compact_vertices'][i]}"
        if result["scores"]:
            row += f"\t{result['scores'][i]:.6g}"
        lines.append(row)
    _print(args, result, "\n".join(lines))
    return 0


def cmd_eval(args) -> int:
    with _client(args) as client:
        dataset = client.load_dataset(args.dataset)
        result = client.evaluate(
            dataset["dataset_id"], _parse_vertices(args.vertices), compact_ids=args.compact
        )
    _print(
        args,
        result,
        f"k={result['k']} farness={result['farness']} "
        f"avg_distance={result['avg_distance']:.6g}",
    )
    return 0


def cmd_exact(args) -> int:
    with _client(args) as client:
        dataset = client.load_dataset(args.dataset)
        result = client.exact(
            dataset["dataset_id"], args.k, budget=args.budget, max_sets=args.max_sets
        )
    lines = [
        f"# {dataset['name']}: exhaustive k-median, k={args.k}",
        f"optimal_value={result['optimal_value']:.6g} "
        f"(farness={result['optimal_farness']}, "
        f"{result['subsets_examined']} subsets examined)",
        f"optimal sets ({result['optimal_set_count']} total, "
        f"{len(result['optimal_sets'])} listed):",
    ]
    for subset in result["optimal_sets"]:
        lines.append("  {" + ", ".join(str(v) for v in subset) + "}")
    if result.get("expected"):
        expected = result["expected"]
        lines.append(
            f"expected_value={expected['exact']:.6g} stddev={expected['sample_stddev']:.6g}"
        )
    _print(args, result, "\n".join(lines))
    return 0


def cmd_sample(args) -> int:
    with _client(args) as client:
        dataset = client.load_dataset(args.dataset)
        result = client.sample(dataset["dataset_id"], args.k, n=args.n, seed=args.seed)
    _print(
        args,
        result,
        f"E(k={args.k}) = {result['sampled']:.6g} over {result['sample_count']} samples "
        f"(stddev={result['sample_stddev']:.6g}, stderr={result['stderr']:.6g})",
    )
    return 0


def cmd_hist(args) -> int:
    with _client(args) as client:
        dataset = client.load_dataset(args.dataset)
        result = client.histogram(dataset["dataset_id"], args.k, bin_width=args.bin_width)
    plot_text = "".join(f"{b['value']:.10g} {b['count']}\n" for b in result["bins"])
    if args.out:
        Path(args.out).write_text(plot_text, encoding="utf-8")
        print(f"wrote {len(result['bins'])} bins ({result['total']} subsets) to {args.out}")
    else:
        _print(args, result, plot_text)
    return 0


def cmd_export(args) -> int:
    with _client(args) as client:
        dataset = client.load_dataset(args.dataset)
        text = client.normalized_edges(dataset["dataset_id"])
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote normalized edge list to {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_bench(args) -> int:
    spec_text = Path(args.spec).read_text(encoding="utf-8")
    with _client(args) as client:
        result = client.bench(spec_text, data_root=args.data_root or os.environ.get(DATA_ENV))
    lines = [
        f"benchmarked {len(result['networks'])} network(s), "
        f"{result['record_count']} records -> {result['outdir']}"
    ]
    lines.extend(f"  {f}" for f in result["files"])
    for dataset, reason in result["failures"]:
        lines.append(f"FAILED {dataset}: {reason}")
    _print(args, result, "\n".join(lines))
    return 0 if result["record_count"] > 0 or not result["failures"] else 1


def cmd_registry(args) -> int:
    with _client(args) as client:
        entries = client.registry()
    lines = ["name\tvertices\tedges\turl"]
    for e in entries:
        lines.append(
            f"{e['name']}\t{e['vertex_count'] or '-'}\t{e['edge_count'] or '-'}\t{e['url'] or '-'}"
        )
    _print(args, entries, "\n".join(lines))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    app = create_app(data_root=args.data_root or os.environ.get(DATA_ENV))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netmedian",
        description="k-median approximation heuristics and benchmarks on networks",
    )
    parser.add_argument("--url", help=f"service URL (default: in-process; env {URL_ENV})")
    parser.add_argument("--data-root", help=f"dataset root directory (env {DATA_ENV})")
    parser.add_argument("--json", action="store_true", help="emit raw JSON responses")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="top-k vertices for one method")
    p.add_argument("dataset")
    p.add_argument("--method", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suppression", type=float, default=None, help="VoteRank f override")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("eval", help="farness / average distance of a vertex set")
    p.add_argument("dataset")
    p.add_argument("--vertices", required=True, help="comma-separated original ids")
    p.add_argument("--compact", action="store_true", help="ids are compact (0..n-1)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("exact", help="exhaustive optimum for small graphs")
    p.add_argument("dataset")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="subset enumeration budget")
    p.add_argument("--max-sets", type=int, default=1000)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sample", help="sampled expected value of a random k-set")
    p.add_argument("dataset")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("hist", help="distribution of A(S) over all k-subsets")
    p.add_argument("dataset")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bin-width", type=float, default=None)
    p.add_argument("-o", "--out", default=None, help="write two-column plot data here")
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("export", help="normalized edge list in compact ids")
    p.add_argument("dataset")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench", help="run an experiment spec and emit tables")
    p.add_argument("--spec", required=True, help="key = value spec file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("registry", help="list known benchmark networks")
    p.set_defaults(func=cmd_registry)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ServiceError, NetmedianError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
