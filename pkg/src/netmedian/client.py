"""Client for the HTTP service.

With a base URL it talks to a running server over httpx; without one it
hosts the app in-process behind the same HTTP interface, so CLI invocations
work standalone while staying thin clients of the service API.
"""

from __future__ import annotations

from typing import Any

import httpx

from .errors import NetmedianError


class ServiceError(NetmedianError):
    """Error response from the service."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service error {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class ServiceClient:
    def __init__(self, url: str | None = None, data_root: str | None = None):
        if url:
            self._client = httpx.Client(base_url=url, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                # starlette warns about its httpx-based TestClient on import
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app(data_root=data_root))

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _json(self, response: httpx.Response) -> Any:
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, str(detail))
        return response.json()

    def health(self) -> dict:
        return self._json(self._client.get("/health"))

    def registry(self) -> list[dict]:
        return self._json(self._client.get("/registry"))

    def load_dataset(self, path: str, name: str | None = None) -> dict:
        return self._json(
            self._client.post("/datasets", json={"path": path, "name": name})
        )

    def rank(
        self,
        dataset_id: str,
        method: str,
        k: int,
        seed: int = 0,
        suppression: float | None = None,
    ) -> dict:
        payload = {"method": method, "k": k, "seed": seed, "suppression": suppression}
        return self._json(self._client.post(f"/datasets/{dataset_id}/rank", json=payload))

    def evaluate(self, dataset_id: str, vertices: list[int], compact_ids: bool = False) -> dict:
        payload = {"vertices": vertices, "compact_ids": compact_ids}
        return self._json(
            self._client.post(f"/datasets/{dataset_id}/evaluate", json=payload)
        )

    def exact(
        self,
        dataset_id: str,
        k: int,
        budget: int | None = None,
        max_sets: int = 1000,
        include_expected: bool = True,
    ) -> dict:
        payload = {
            "k": k,
            "budget": budget,
            "max_sets": max_sets,
            "include_expected": include_expected,
        }
        return self._json(self._client.post(f"/datasets/{dataset_id}/exact", json=payload))

    def sample(self, dataset_id: str, k: int, n: int = 100, seed: int = 0) -> dict:
        payload = {"k": k, "n": n, "seed": seed}
        return self._json(self._client.post(f"/datasets/{dataset_id}/sample", json=payload))

    def histogram(
        self, dataset_id: str, k: int, bin_width: float | None = None, budget: int | None = None
    ) -> dict:
        payload = {"k": k, "bin_width": bin_width, "budget": budget}
        return self._json(
            self._client.post(f"/datasets/{dataset_id}/histogram", json=payload)
        )

    def normalized_edges(self, dataset_id: str) -> str:
        response = self._client.get(f"/datasets/{dataset_id}/edges")
        if response.status_code >= 400:
            self._json(response)  # raises
        return response.text

    def bench(self, spec_text: str, data_root: str | None = None) -> dict:
        payload = {"spec_text": spec_text, "data_root": data_root}
        return self._json(self._client.post("/bench", json=payload))
