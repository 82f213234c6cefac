"""Experiment engine: run methods over a k-grid per network and emit tables.

For every deterministic method, one length-k_max ranking is computed and each
prefix 1..k is evaluated with a multi-source BFS; the ``random`` baseline
reports the sampled expected value E(k) from N seeded draws per k.  Results
flow into comparison tables (relative error to the optimum or to the best
heuristic, per-network rankings, within-x% shares, a pointwise best-of super
selection) and out as CSV / plot data.

Per-record ``wall_time_s`` is the per-method total for the whole sweep
(scoring plus all prefix evaluations, I/O excluded); the scoring/evaluation
split lands in the timing table.  All emitted files are byte-deterministic
for a fixed spec and seed, except for the wall-clock timing fields.
"""

from __future__ import annotations

import csv
import logging
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .centrality import METHOD_ORDER, MethodId, rank_by_method
from .errors import NetmedianError
from .evaluation import Evaluator
from .exact import sampled_expected_value
from .graph import Graph, load_graph
from .registry import RegistryEntry, check_against_registry, load_registry
from .rng import derive_seed

logger = logging.getLogger(__name__)

DATA_ROOT_ENV = "NETMEDIAN_DATA"
RECORDS_HEADER = ("network", "method", "k", "avg_distance", "farness", "wall_time_s")
DEFAULT_SHARE_THRESHOLDS = (0, 1, 10, 100)


@dataclass(frozen=True)
class ExperimentSpec:
    """What to run: datasets x methods x k-grid, with sampling and output knobs."""

    datasets: tuple[str, ...]
    methods: tuple[MethodId, ...] = METHOD_ORDER
    k_max: int = 100
    sample_count: int = 100
    seed: int = 0
    outdir: str = "results"
    data_root: str | None = None

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be at least 1")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        if self.sample_count < 1:
            raise ValueError("sample count must be at least 1")


@dataclass(frozen=True)
class ExperimentRecord:
    """One (network, method, k) measurement."""

    network: str
    method: MethodId
    k: int
    avg_distance: float
    farness: float  # integer-valued for deterministic methods, mean for random
    wall_time_s: float


@dataclass(frozen=True)
class MethodTiming:
    """Per-method cost on one network, split into scoring and evaluation."""

    network: str
    method: MethodId
    scoring_s: float
    eval_s: float
    total_s: float


@dataclass(frozen=True)
class SuperChoice:
    """Pointwise winner over the deterministic methods at one k."""

    network: str
    k: int
    method: MethodId
    avg_distance: float
    random_expected: float | None = None


@dataclass(frozen=True)
class ComparisonTable:
    """Per-network, per-method aggregates against a reference.

    ``reference`` is "optimal" or "best"; ``errors`` holds mean relative
    errors in percent, ``ranks`` per-network standings (1 = best), ``shares``
    the within-x% percentages keyed by (network, method, threshold), and
    ``overall`` the across-network mean of the per-network means.
    """

    reference: str
    methods: tuple[MethodId, ...]
    networks: tuple[str, ...]
    errors: dict[tuple[str, MethodId], float] = field(default_factory=dict)
    ranks: dict[tuple[str, MethodId], int] = field(default_factory=dict)
    shares: dict[tuple[str, MethodId, int], float] = field(default_factory=dict)
    thresholds: tuple[int, ...] = ()
    overall: dict[MethodId, float] = field(default_factory=dict)


@dataclass
class ExperimentRun:
    records: list[ExperimentRecord]
    timings: list[MethodTiming]
    failures: list[tuple[str, str]]  # (dataset, reason); the run continues


def resolve_dataset_path(dataset: str, data_root: str | None) -> Path:
    """Absolute paths pass through; relative ones resolve under the data root
    (argument, then NETMEDIAN_DATA, then the working directory)."""
    path = Path(dataset)
    if path.is_absolute() or path.exists():
        return path
    root = data_root or os.environ.get(DATA_ROOT_ENV)
    if root:
        candidate = Path(root) / dataset
        if candidate.exists():
            return candidate
    return path


def run_network(
    graph: Graph,
    name: str,
    methods: Sequence[MethodId] = METHOD_ORDER,
    k_max: int = 100,
    sample_count: int = 100,
    seed: int = 0,
) -> tuple[list[ExperimentRecord], list[MethodTiming]]:
    """All measurements for one loaded network.

    The k-grid is 1..min(k_max, |V|-1): average distance is undefined once a
    set swallows the whole graph.
    """
    n = graph.vertex_count
    k_top = min(k_max, n - 1)
    evaluator = Evaluator(graph)
    records: list[ExperimentRecord] = []
    timings: list[MethodTiming] = []
    ordered = [m for m in METHOD_ORDER if m in set(methods)]
    for method in ordered:
        if method is MethodId.RANDOM:
            t0 = time.perf_counter()
            method_records = []
            for k in range(1, k_top + 1):
                estimate = sampled_expected_value(
                    graph,
                    k,
                    sample_count=sample_count,
                    seed=derive_seed(seed, name, k),
                )
                method_records.append(
                    (k, estimate.sampled, estimate.sampled * (n - k))
                )
            elapsed = time.perf_counter() - t0
            scoring = 0.0
            evaluating = elapsed
        else:
            t0 = time.perf_counter()
            ranking = rank_by_method(graph, method, k_top, seed=seed)
            scoring = time.perf_counter() - t0
            t0 = time.perf_counter()
            method_records = []
            for k in range(1, k_top + 1):
                result = evaluator.evaluate(ranking.prefix(k))
                method_records.append((k, result.avg_distance, result.farness))
            evaluating = time.perf_counter() - t0
            elapsed = scoring + evaluating
        for k, avg, far in method_records:
            records.append(
                ExperimentRecord(
                    network=name,
                    method=method,
                    k=k,
                    avg_distance=avg,
                    farness=far,
                    wall_time_s=elapsed,
                )
            )
        timings.append(
            MethodTiming(
                network=name,
                method=method,
                scoring_s=scoring,
                eval_s=evaluating,
                total_s=elapsed,
            )
        )
    return records, timings


def run_experiment_detailed(
    spec: ExperimentSpec,
    registry: Mapping[str, RegistryEntry] | None = None,
) -> ExperimentRun:
    """Load each dataset, run the method sweep, keep going on per-dataset errors."""
    if registry is None:
        registry = load_registry()
    run = ExperimentRun(records=[], timings=[], failures=[])
    for dataset in spec.datasets:
        path = resolve_dataset_path(dataset, spec.data_root)
        name = Path(dataset).stem
        try:
            graph, _ = load_graph(path)
        except (OSError, NetmedianError) as exc:
            logger.warning("skipping %s: %s", dataset, exc)
            run.failures.append((dataset, str(exc)))
            continue
        check_against_registry(name, graph, dict(registry))
        records, timings = run_network(
            graph,
            name,
            methods=spec.methods,
            k_max=spec.k_max,
            sample_count=spec.sample_count,
            seed=spec.seed,
        )
        run.records.extend(records)
        run.timings.extend(timings)
    return run


def run_experiment(spec: ExperimentSpec) -> list[ExperimentRecord]:
    return run_experiment_detailed(spec).records


def _method_index(method: MethodId) -> int:
    return METHOD_ORDER.index(method)


def _grouped(
    records: Iterable[ExperimentRecord],
) -> dict[str, dict[MethodId, dict[int, float]]]:
    """records -> network -> method -> k -> avg_distance."""
    out: dict[str, dict[MethodId, dict[int, float]]] = {}
    for record in records:
        out.setdefault(record.network, {}).setdefault(record.method, {})[
            record.k
        ] = record.avg_distance
    return out


def error_to_optimal(
    records: Sequence[ExperimentRecord],
    optima: Mapping[str, Mapping[int, object]],
) -> ComparisonTable:
    """Mean over k of 100 * (M_method(k) - M*(k)) / M*(k), per network/method.

    ``optima`` maps network -> k -> either the optimal value or an
    ExactResult carrying it; every (network, k) in the records must have one.
    """
    by_network = _grouped(records)
    networks = tuple(sorted(by_network))
    methods = tuple(
        m for m in METHOD_ORDER if any(m in by_network[n] for n in networks)
    )
    errors: dict[tuple[str, MethodId], float] = {}
    for network in networks:
        for method, values in by_network[network].items():
            per_k = []
            for k, value in sorted(values.items()):
                if network not in optima or k not in optima[network]:
                    raise ValueError(f"no exact optimum for {network} at k={k}")
                best = optima[network][k]
                best = getattr(best, "optimal_value", best)
                per_k.append(100.0 * (value - best) / best)
            errors[(network, method)] = sum(per_k) / len(per_k)
    overall = {
        m: sum(errors[(n, m)] for n in networks if (n, m) in errors)
        / sum(1 for n in networks if (n, m) in errors)
        for m in methods
    }
    return ComparisonTable(
        reference="optimal",
        methods=methods,
        networks=networks,
        errors=errors,
        ranks=_ranks_from_errors(errors, networks, methods),
        overall=overall,
    )


def _best_per_k(
    by_network: dict[str, dict[MethodId, dict[int, float]]], network: str
) -> dict[int, float]:
    best: dict[int, float] = {}
    for values in by_network[network].values():
        for k, value in values.items():
            if k not in best or value < best[k]:
                best[k] = value
    return best


def _ranks_from_errors(
    errors: dict[tuple[str, MethodId], float],
    networks: tuple[str, ...],
    methods: tuple[MethodId, ...],
) -> dict[tuple[str, MethodId], int]:
    ranks: dict[tuple[str, MethodId], int] = {}
    for network in networks:
        present = [m for m in methods if (network, m) in errors]
        standing = sorted(present, key=lambda m: (errors[(network, m)], _method_index(m)))
        for position, method in enumerate(standing, start=1):
            ranks[(network, method)] = position
    return ranks


def error_to_best(records: Sequence[ExperimentRecord]) -> ComparisonTable:
    """Mean relative error (%) to the best method value per (network, k).

    The reference at each k is the minimum over every present method,
    ``random``'s expected value included.  Rank ties break by method
    declaration order; ``overall`` averages the per-network means.
    """
    by_network = _grouped(records)
    networks = tuple(sorted(by_network))
    methods = tuple(
        m for m in METHOD_ORDER if any(m in by_network[n] for n in networks)
    )
    if len(methods) < 2:
        raise ValueError("error_to_best needs at least two methods")
    errors: dict[tuple[str, MethodId], float] = {}
    for network in networks:
        best = _best_per_k(by_network, network)
        for method, values in by_network[network].items():
            per_k = [
                100.0 * (value - best[k]) / best[k]
                for k, value in sorted(values.items())
            ]
            errors[(network, method)] = sum(per_k) / len(per_k)
    overall = {
        m: sum(errors[(n, m)] for n in networks if (n, m) in errors)
        / sum(1 for n in networks if (n, m) in errors)
        for m in methods
    }
    return ComparisonTable(
        reference="best",
        methods=methods,
        networks=networks,
        errors=errors,
        ranks=_ranks_from_errors(errors, networks, methods),
        overall=overall,
    )


def within_percent_shares(
    records: Sequence[ExperimentRecord],
    thresholds: Sequence[int] = DEFAULT_SHARE_THRESHOLDS,
) -> ComparisonTable:
    """Share (%) of k values where a method lands within x% of the best."""
    by_network = _grouped(records)
    networks = tuple(sorted(by_network))
    methods = tuple(
        m for m in METHOD_ORDER if any(m in by_network[n] for n in networks)
    )
    shares: dict[tuple[str, MethodId, int], float] = {}
    for network in networks:
        best = _best_per_k(by_network, network)
        for method, values in by_network[network].items():
            for x in thresholds:
                hits = sum(
                    1 for k, value in values.items() if value <= best[k] * (1 + x / 100)
                )
                shares[(network, method, x)] = 100.0 * hits / len(values)
    return ComparisonTable(
        reference="best",
        methods=methods,
        networks=networks,
        shares=shares,
        thresholds=tuple(thresholds),
    )


def super_algorithm(records: Sequence[ExperimentRecord]) -> list[SuperChoice]:
    """Pointwise best deterministic method per (network, k), annotated with
    the random baseline when present."""
    by_network = _grouped(records)
    choices: list[SuperChoice] = []
    for network in sorted(by_network):
        methods = by_network[network]
        deterministic = [m for m in METHOD_ORDER if m in methods and m is not MethodId.RANDOM]
        if not deterministic:
            continue
        ks = sorted({k for m in deterministic for k in methods[m]})
        for k in ks:
            candidates = [
                (methods[m][k], _method_index(m), m) for m in deterministic if k in methods[m]
            ]
            value, _, winner = min(candidates)
            random_value = methods.get(MethodId.RANDOM, {}).get(k)
            choices.append(
                SuperChoice(
                    network=network,
                    k=k,
                    method=winner,
                    avg_distance=value,
                    random_expected=random_value,
                )
            )
    return choices


def _fmt(value) -> str:
    """CSV cell: integers verbatim, floats with 6 significant digits."""
    if isinstance(value, MethodId):
        return value.value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value == int(value) and abs(value) < 1e15:
            return str(int(value))
        return format(value, ".6g")
    return str(value)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(cell) for cell in row) + "\n")
    return path


def _sorted_records(records: Sequence[ExperimentRecord]) -> list[ExperimentRecord]:
    return sorted(records, key=lambda r: (r.network, _method_index(r.method), r.k))


def write_records_csv(path: Path, records: Sequence[ExperimentRecord]) -> Path:
    rows = (
        (r.network, r.method, r.k, r.avg_distance, r.farness, r.wall_time_s)
        for r in _sorted_records(records)
    )
    return _write_csv(path, RECORDS_HEADER, rows)


def read_records_csv(path: str | Path) -> list[ExperimentRecord]:
    """Parse a records CSV back into records (round-trips write_records_csv)."""
    records = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != RECORDS_HEADER:
            raise ValueError(f"unexpected records header: {header!r}")
        for row in reader:
            records.append(
                ExperimentRecord(
                    network=row[0],
                    method=MethodId(row[1]),
                    k=int(row[2]),
                    avg_distance=float(row[3]),
                    farness=float(row[4]),
                    wall_time_s=float(row[5]),
                )
            )
    return records


def emit_tables(
    outdir: str | Path,
    records: Sequence[ExperimentRecord],
    tables: Sequence[ComparisonTable] = (),
    timings: Sequence[MethodTiming] = (),
    super_rows: Sequence[SuperChoice] = (),
) -> list[Path]:
    """Write records, per-network plot data, and every derived table as CSV.

    Output is LF-terminated and byte-reproducible for identical inputs.
    """
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    ordered_records = _sorted_records(records)
    written.append(write_records_csv(out / "records.csv", ordered_records))

    for network in sorted({r.network for r in ordered_records}):
        rows = (
            (r.k, r.method, r.avg_distance)
            for r in ordered_records
            if r.network == network
        )
        written.append(
            _write_csv(out / f"plot_{network}.csv", ("k", "method", "avg_distance"), rows)
        )

    for table in tables:
        stem = "error_to_optimal" if table.reference == "optimal" else "error_to_best"
        if table.errors:
            header = ["network"] + [m.value for m in table.methods]
            rows = [
                [network]
                + [table.errors.get((network, m), math.nan) for m in table.methods]
                for network in table.networks
            ]
            written.append(_write_csv(out / f"{stem}.csv", header, rows))
        if table.ranks:
            header = ["network"] + [m.value for m in table.methods]
            rows = [
                [network] + [table.ranks.get((network, m), 0) for m in table.methods]
                for network in table.networks
            ]
            written.append(_write_csv(out / f"rankings_{table.reference}.csv", header, rows))
        if table.overall:
            rows = [(m, table.overall[m]) for m in table.methods if m in table.overall]
            written.append(
                _write_csv(out / f"overall_{table.reference}.csv", ("method", "mean_error_pct"), rows)
            )
        if table.shares:
            header = ["network", "method"] + [f"within_{x}" for x in table.thresholds]
            rows = [
                [network, m] + [table.shares[(network, m, x)] for x in table.thresholds]
                for network in table.networks
                for m in table.methods
                if (network, m, table.thresholds[0]) in table.shares
            ]
            written.append(_write_csv(out / "shares.csv", header, rows))

    if timings:
        rows = (
            (t.network, t.method, t.scoring_s, t.eval_s, t.total_s)
            for t in sorted(timings, key=lambda t: (t.network, _method_index(t.method)))
        )
        written.append(
            _write_csv(
                out / "timing.csv",
                ("network", "method", "scoring_s", "eval_s", "total_s"),
                rows,
            )
        )
    if super_rows:
        rows = (
            (
                c.network,
                c.k,
                c.method,
                c.avg_distance,
                "" if c.random_expected is None else c.random_expected,
            )
            for c in sorted(super_rows, key=lambda c: (c.network, c.k))
        )
        written.append(
            _write_csv(
                out / "super.csv",
                ("network", "k", "method", "avg_distance", "random_expected"),
                rows,
            )
        )
    return written


@dataclass
class BenchSummary:
    outdir: str
    files: list[str]
    record_count: int
    networks: list[str]
    failures: list[tuple[str, str]]


def run_bench(spec: ExperimentSpec) -> BenchSummary:
    """Full sweep plus standard tables, written under the spec's outdir."""
    run = run_experiment_detailed(spec)
    tables: list[ComparisonTable] = []
    methods_present = {r.method for r in run.records}
    if len(methods_present) >= 2:
        tables.append(error_to_best(run.records))
        tables.append(within_percent_shares(run.records))
    super_rows = super_algorithm(run.records)
    files = emit_tables(
        spec.outdir, run.records, tables=tables, timings=run.timings, super_rows=super_rows
    )
    return BenchSummary(
        outdir=str(spec.outdir),
        files=[str(f) for f in files],
        record_count=len(run.records),
        networks=sorted({r.network for r in run.records}),
        failures=run.failures,
    )


_SPEC_KEYS = {"dataset", "datasets", "methods", "k_max", "n", "seed", "outdir", "data_root"}


def parse_spec_text(text: str) -> ExperimentSpec:
    """Line-oriented ``key = value`` run description.

    Keys: ``dataset`` (repeatable) or ``datasets`` (comma-separated),
    ``methods`` (comma-separated names or ``all``), ``k_max``, ``n`` (sample
    count), ``seed``, ``outdir``, ``data_root``.  ``#`` comments and blank
    lines are ignored.
    """
    datasets: list[str] = []
    values: dict[str, str] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"spec line {line_number}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SPEC_KEYS:
            raise ValueError(f"spec line {line_number}: unknown key {key!r}")
        if key == "dataset":
            datasets.append(value)
        elif key == "datasets":
            datasets.extend(part.strip() for part in value.split(",") if part.strip())
        else:
            values[key] = value
    methods: tuple[MethodId, ...] = METHOD_ORDER
    if "methods" in values and values["methods"].lower() != "all":
        names = [part.strip() for part in values["methods"].split(",") if part.strip()]
        try:
            picked = [MethodId(name) for name in names]
        except ValueError:
            known = ", ".join(m.value for m in METHOD_ORDER)
            raise ValueError(
                f"unknown method in {values['methods']!r}; known: {known}"
            ) from None
        methods = tuple(m for m in METHOD_ORDER if m in set(picked))
    return ExperimentSpec(
        datasets=tuple(datasets),
        methods=methods,
        k_max=int(values.get("k_max", 100)),
        sample_count=int(values.get("n", 100)),
        seed=int(values.get("seed", 0)),
        outdir=values.get("outdir", "results"),
        data_root=values.get("data_root"),
    )


def parse_spec_file(path: str | Path) -> ExperimentSpec:
    return parse_spec_text(Path(path).read_text(encoding="utf-8"))
