#!/usr/bin/env python3
"""Record the API responses the frontend test suite runs against.

Writes frontend/fixtures/{check_response,check_response_degraded,
document_response}.json from an in-process service over the bundled
artifacts.
"""

import json
import sys
import urllib.parse
from pathlib import Path

from fastapi.testclient import TestClient

from fakta import fixtures as fx
from fakta import pipeline as pl
from fakta import sources as src
from fakta import stance as st
from fakta.errors import ProviderError
from fakta.retrieval import build_index
from fakta.service import create_app
from fakta.textanalysis import data_path

OUT = Path(__file__).resolve().parent.parent / "frontend" / "fixtures"


class _FailingProvider:
    def search(self, terms, domains, k):
        raise ProviderError("stubbed outage")


def write(name: str, payload: dict) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(
        json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {OUT / name}")


def main() -> int:
    index = build_index(fx.mini_corpus_records())
    registry = src.load_registry(data_path("registry.csv"))
    model = st.StanceModel.load(data_path("stance_toy_model.bin"))

    healthy = TestClient(
        create_app(
            pl.FactChecker(
                index, registry, model,
                provider=src.StubSearchProvider(data_path("stub_search")),
            )
        )
    )
    check = healthy.post("/api/check", json={"claim": fx.SUPPORTED_CLAIM}).json()
    write("check_response.json", check)

    doc_id = urllib.parse.quote("wiki/Eiffel_Tower", safe="")
    document = healthy.get(
        f"/api/document/{doc_id}", params={"claim_id": check["claim_id"]}
    ).json()
    write("document_response.json", document)

    degraded_client = TestClient(
        create_app(pl.FactChecker(index, registry, model, provider=_FailingProvider()))
    )
    degraded = degraded_client.post(
        "/api/check", json={"claim": fx.SUPPORTED_CLAIM}
    ).json()
    write("check_response_degraded.json", degraded)
    return 0


if __name__ == "__main__":
    sys.exit(main())
