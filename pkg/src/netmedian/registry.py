"""Dataset manifest: names, expected post-normalization sizes, and sources.

The registry is a plain-text manifest (columns: name, relative path, expected
|V|, expected |E| after largest-component extraction, source URL; "-" marks
unknown).  Fetching is intentionally out of scope — the URLs document where
each network comes from, and files are expected under a local data root.
A size mismatch at load time is reported as a warning, not an error, since
upstream datasets evolve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    path: str
    vertex_count: int | None
    edge_count: int | None
    url: str | None


def _maybe_int(token: str) -> int | None:
    return None if token == "-" else int(token.replace(",", ""))


def parse_registry(text: str) -> dict[str, RegistryEntry]:
    entries: dict[str, RegistryEntry] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) < 4:
            raise ValueError(
                f"registry line {line_number}: expected "
                f"'name path vertices edges [url]', got {stripped!r}"
            )
        url = parts[4] if len(parts) > 4 and parts[4] != "-" else None
        entries[parts[0]] = RegistryEntry(
            name=parts[0],
            path=parts[1],
            vertex_count=_maybe_int(parts[2]),
            edge_count=_maybe_int(parts[3]),
            url=url,
        )
    return entries


def load_registry(path: str | Path | None = None) -> dict[str, RegistryEntry]:
    """Read a manifest file, defaulting to the packaged one."""
    if path is not None:
        return parse_registry(Path(path).read_text(encoding="utf-8"))
    text = resources.files("netmedian").joinpath("data/registry.txt").read_text("utf-8")
    return parse_registry(text)


def check_against_registry(
    name: str, graph: Graph, registry: dict[str, RegistryEntry]
) -> bool:
    """Compare a loaded graph with its registry row; warn (not fail) on drift."""
    entry = registry.get(name)
    if entry is None:
        return True
    ok = True
    if entry.vertex_count is not None and graph.vertex_count != entry.vertex_count:
        logger.warning(
            "%s: expected |V|=%d, loaded %d (dataset version drift?)",
            name,
            entry.vertex_count,
            graph.vertex_count,
        )
        ok = False
    if entry.edge_count is not None and graph.edge_count != entry.edge_count:
        logger.warning(
            "%s: expected |E|=%d, loaded %d (dataset version drift?)",
            name,
            entry.edge_count,
            graph.edge_count,
        )
        ok = False
    return ok
