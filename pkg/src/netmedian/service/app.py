"""HTTP service wrapping the library.

Datasets are parsed once and cached in memory; the immutable graphs are safe
for concurrent readers, so any number of clients can query rankings,
evaluations, exact solves, and samples against one loaded copy.  The CLI is
a thin client of this app (in-process by default, remote with --url).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..centrality import MethodId, rank_by_method, scores_for
from ..errors import NetmedianError
from ..evaluation import Evaluator
from ..exact import (
    DEFAULT_SUBSET_BUDGET,
    brute_force_kmedian,
    distribution_histogram,
    exact_expected_value,
    sampled_expected_value,
)
from ..graph import Graph, VertexMapping, degree_stats, export_edge_list, load_graph
from ..harness import (
    ExperimentSpec,
    parse_spec_text,
    resolve_dataset_path,
    run_bench,
)
from ..registry import load_registry
from . import schemas


@dataclass
class LoadedDataset:
    dataset_id: str
    name: str
    path: str
    graph: Graph
    mapping: VertexMapping
    forward: dict[int, int]  # original id -> compact id

    def summary(self) -> schemas.GraphSummary:
        stats = degree_stats(self.graph)
        return schemas.GraphSummary(
            dataset_id=self.dataset_id,
            name=self.name,
            path=self.path,
            vertex_count=self.graph.vertex_count,
            edge_count=self.graph.edge_count,
            avg_degree=stats.avg_degree,
            max_degree=stats.max_degree,
            degree_ratio=stats.degree_ratio,
        )


class DatasetStore:
    """In-memory cache of loaded graphs, keyed by resolved path."""

    def __init__(self, data_root: str | None = None):
        self.data_root = data_root
        self._lock = threading.Lock()
        self._by_id: dict[str, LoadedDataset] = {}
        self._id_by_path: dict[str, str] = {}
        self._counter = 0

    def load(self, path: str, name: str | None = None) -> LoadedDataset:
        resolved = resolve_dataset_path(path, self.data_root)
        key = str(resolved.resolve()) if resolved.exists() else str(resolved)
        with self._lock:
            existing = self._id_by_path.get(key)
            if existing is not None:
                return self._by_id[existing]
        graph, mapping = load_graph(resolved)
        dataset_name = name or Path(path).stem
        with self._lock:
            existing = self._id_by_path.get(key)
            if existing is not None:
                return self._by_id[existing]
            self._counter += 1
            dataset = LoadedDataset(
                dataset_id=f"d{self._counter}",
                name=dataset_name,
                path=str(resolved),
                graph=graph,
                mapping=mapping,
                forward=mapping.forward_map(),
            )
            self._by_id[dataset.dataset_id] = dataset
            self._id_by_path[key] = dataset.dataset_id
            return dataset

    def get(self, dataset_id: str) -> LoadedDataset:
        with self._lock:
            dataset = self._by_id.get(dataset_id)
        if dataset is None:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
        return dataset

    def list(self) -> list[LoadedDataset]:
        with self._lock:
            return sorted(self._by_id.values(), key=lambda d: d.dataset_id)

    def drop(self, dataset_id: str) -> None:
        with self._lock:
            dataset = self._by_id.pop(dataset_id, None)
            if dataset is not None:
                self._id_by_path = {
                    k: v for k, v in self._id_by_path.items() if v != dataset_id
                }
        if dataset is None:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")


def create_app(data_root: str | None = None) -> FastAPI:
    app = FastAPI(
        title="netmedian",
        version=__version__,
        description="k-median heuristics, exact solvers, and benchmarks for networks",
    )
    store = DatasetStore(data_root=data_root)
    app.state.store = store

    @app.exception_handler(NetmedianError)
    async def domain_error(_, exc: NetmedianError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error(_, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/registry", response_model=list[schemas.RegistryEntryModel])
    def registry():
        entries = load_registry()
        return [
            schemas.RegistryEntryModel(
                name=e.name,
                path=e.path,
                vertex_count=e.vertex_count,
                edge_count=e.edge_count,
                url=e.url,
            )
            for e in sorted(entries.values(), key=lambda e: e.name)
        ]

    @app.post("/datasets", response_model=schemas.GraphSummary)
    def load_dataset(request: schemas.LoadRequest):
        try:
            return store.load(request.path, request.name).summary()
        except OSError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/datasets", response_model=list[schemas.GraphSummary])
    def list_datasets():
        return [d.summary() for d in store.list()]

    @app.get("/datasets/{dataset_id}", response_model=schemas.GraphSummary)
    def get_dataset(dataset_id: str):
        return store.get(dataset_id).summary()

    @app.delete("/datasets/{dataset_id}")
    def drop_dataset(dataset_id: str):
        store.drop(dataset_id)
        return {"dropped": dataset_id}

    @app.get("/datasets/{dataset_id}/edges", response_class=PlainTextResponse)
    def normalized_edges(dataset_id: str):
        return export_edge_list(store.get(dataset_id).graph)

    @app.post("/datasets/{dataset_id}/rank", response_model=schemas.RankResponse)
    def rank(dataset_id: str, request: schemas.RankRequest):
        dataset = store.get(dataset_id)
        ranked = rank_by_method(
            dataset.graph,
            request.method,
            request.k,
            seed=request.seed,
            suppression=request.suppression,
        )
        scores = None
        if request.method not in (MethodId.VOTERANK, MethodId.RANDOM):
            vector = scores_for(dataset.graph, request.method).scores
            scores = [float(vector[v]) for v in ranked.vertices]
        return schemas.RankResponse(
            method=request.method,
            k=request.k,
            vertices=[dataset.mapping.to_original(v) for v in ranked.vertices],
            compact_vertices=list(ranked.vertices),
            scores=scores,
        )

    def _compact_vertices(dataset: LoadedDataset, request: schemas.EvaluateRequest):
        if request.compact_ids:
            return request.vertices
        missing = [v for v in request.vertices if v not in dataset.forward]
        if missing:
            raise HTTPException(
                status_code=400,
                detail=f"vertices not in the largest component: {missing}",
            )
        return [dataset.forward[v] for v in request.vertices]

    @app.post("/datasets/{dataset_id}/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate_set(dataset_id: str, request: schemas.EvaluateRequest):
        dataset = store.get(dataset_id)
        result = Evaluator(dataset.graph).evaluate(_compact_vertices(dataset, request))
        return schemas.EvaluateResponse(
            k=result.k, farness=result.farness, avg_distance=result.avg_distance
        )

    @app.post("/datasets/{dataset_id}/exact", response_model=schemas.ExactResponse)
    def exact_solve(dataset_id: str, request: schemas.ExactRequest):
        dataset = store.get(dataset_id)
        budget = request.budget or DEFAULT_SUBSET_BUDGET
        result = brute_force_kmedian(
            dataset.graph, request.k, budget=budget, max_sets=request.max_sets
        )
        expected = None
        if request.include_expected:
            value = exact_expected_value(dataset.graph, request.k, budget=budget)
            expected = schemas.ExpectedValueModel(
                k=value.k,
                exact=value.exact,
                sampled=value.sampled,
                sample_count=value.sample_count,
                sample_stddev=value.sample_stddev,
                stderr=value.stderr,
            )
        return schemas.ExactResponse(
            k=result.k,
            optimal_value=result.optimal_value,
            optimal_farness=result.optimal_farness,
            optimal_sets=[
                [dataset.mapping.to_original(v) for v in subset]
                for subset in result.optimal_sets
            ],
            optimal_set_count=result.optimal_set_count,
            subsets_examined=result.subsets_examined,
            expected=expected,
        )

    @app.post("/datasets/{dataset_id}/sample", response_model=schemas.ExpectedValueModel)
    def sample(dataset_id: str, request: schemas.SampleRequest):
        dataset = store.get(dataset_id)
        value = sampled_expected_value(
            dataset.graph, request.k, sample_count=request.n, seed=request.seed
        )
        return schemas.ExpectedValueModel(
            k=value.k,
            exact=value.exact,
            sampled=value.sampled,
            sample_count=value.sample_count,
            sample_stddev=value.sample_stddev,
            stderr=value.stderr,
        )

    @app.post("/datasets/{dataset_id}/histogram", response_model=schemas.HistogramResponse)
    def histogram(dataset_id: str, request: schemas.HistogramRequest):
        dataset = store.get(dataset_id)
        result = distribution_histogram(
            dataset.graph,
            request.k,
            bin_width=request.bin_width,
            budget=request.budget or DEFAULT_SUBSET_BUDGET,
        )
        return schemas.HistogramResponse(
            k=result.k,
            bin_width=result.bin_width,
            total=result.total,
            bins=[
                schemas.HistogramBin(value=value, count=count)
                for value, count in result.bins.items()
            ],
        )

    @app.post("/bench", response_model=schemas.BenchResponse)
    def bench(request: schemas.BenchRequest):
        if request.spec_text is not None:
            spec = parse_spec_text(request.spec_text)
            if spec.data_root is None and (request.data_root or store.data_root):
                spec = replace(spec, data_root=request.data_root or store.data_root)
        else:
            spec = ExperimentSpec(
                datasets=tuple(request.datasets),
                methods=tuple(request.methods) if request.methods else tuple(MethodId),
                k_max=request.k_max,
                sample_count=request.n,
                seed=request.seed,
                outdir=request.outdir,
                data_root=request.data_root or store.data_root,
            )
        summary = run_bench(spec)
        return schemas.BenchResponse(
            outdir=summary.outdir,
            files=summary.files,
            record_count=summary.record_count,
            networks=summary.networks,
            failures=summary.failures,
        )

    return app
