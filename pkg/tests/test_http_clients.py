"""HTTP client behavior against mocked transports: request shapes, rate
limiting, backoff, and error surfaces. No network involved."""

from __future__ import annotations

import json
import time

import httpx
import pytest

from crosslex.corpus.citations import HttpCitationClient
from crosslex.errors import CitationError, LLMClientError
from crosslex.retrieve.llm import HttpCompletionClient


def make_citation_client(handler, min_interval=0.0, max_retries=2):
    client = HttpCitationClient("https://api.example.org/graph/v1", min_interval=min_interval, max_retries=max_retries)
    client._client = httpx.Client(transport=httpx.MockTransport(handler))
    return client


class TestHttpCitationClient:
    def test_request_shape_and_parsing(self):
        seen = {}

        def handler(request: httpx.Request) -> httpx.Response:
            seen["url"] = str(request.url)
            return httpx.Response(
                200,
                json={
                    "paperId": "abc",
                    "title": "A title",
                    "abstract": "Some abstract.",
                    "url": "https://x/abc",
                    "references": [{"paperId": "r1", "title": "Ref", "abstract": "a"}],
                    "citations": [{"paperId": "c1", "title": "Cit"}, {"title": "no id, dropped"}],
                },
            )

        node = make_citation_client(handler).lookup("abc")
        assert seen["url"] == (
            "https://api.example.org/graph/v1/paper/abc"
            "?fields=citations,references,title,abstract,url"
        )
        assert node.title == "A title"
        assert [n.paper_id for n in node.cited] == ["r1"]
        assert [n.paper_id for n in node.citing] == ["c1"]

    def test_retries_with_backoff_then_succeeds(self, monkeypatch):
        calls = {"n": 0}
        sleeps: list[float] = []
        monkeypatch.setattr(time, "sleep", lambda s: sleeps.append(s))

        def handler(request: httpx.Request) -> httpx.Response:
            calls["n"] += 1
            if calls["n"] < 3:
                return httpx.Response(503)
            return httpx.Response(200, json={"paperId": "abc", "title": "t"})

        client = make_citation_client(handler, min_interval=0.5, max_retries=3)
        node = client.lookup("abc")
        assert node.paper_id == "abc"
        assert calls["n"] == 3
        backoffs = [s for s in sleeps if s >= 0.5]  # retry delays double
        assert backoffs[0] == pytest.approx(0.5)
        assert backoffs[1] == pytest.approx(1.0)

    def test_exhausted_retries_raise(self, monkeypatch):
        monkeypatch.setattr(time, "sleep", lambda s: None)

        def handler(request: httpx.Request) -> httpx.Response:
            return httpx.Response(500)

        with pytest.raises(CitationError):
            make_citation_client(handler, max_retries=1).lookup("abc")

    def test_rate_limit_spaces_requests(self, monkeypatch):
        sleeps: list[float] = []
        monkeypatch.setattr(time, "sleep", lambda s: sleeps.append(s))

        def handler(request: httpx.Request) -> httpx.Response:
            return httpx.Response(200, json={"paperId": "x", "title": "t"})

        client = make_citation_client(handler, min_interval=2.0)
        client.lookup("a")
        client.lookup("b")
        assert any(s > 1.5 for s in sleeps)  # second call waited out the interval


class TestHttpCompletionClient:
    def test_payload_shape_and_key_header(self, monkeypatch):
        seen = {}

        def fake_post(url, json=None, headers=None, timeout=None):
            seen.update(url=url, payload=json, headers=headers)
            request = httpx.Request("POST", url)
            return httpx.Response(
                200,
                json={"choices": [{"message": {"content": "alpha, beta"}}]},
                request=request,
            )

        monkeypatch.setattr(httpx, "post", fake_post)
        monkeypatch.setenv("TEST_LLM_KEY", "sekrit")
        client = HttpCompletionClient("https://llm.example.org/v1", "small-model", key_env="TEST_LLM_KEY")
        out = client.complete("pick terms")
        assert out == "alpha, beta"
        assert seen["url"] == "https://llm.example.org/v1/chat/completions"
        assert seen["payload"]["model"] == "small-model"
        assert seen["payload"]["temperature"] == 0
        assert seen["payload"]["messages"] == [{"role": "user", "content": "pick terms"}]
        assert seen["headers"]["Authorization"] == "Bearer sekrit"

    def test_failure_raises_client_error(self, monkeypatch):
        def fake_post(url, json=None, headers=None, timeout=None):
            request = httpx.Request("POST", url)
            return httpx.Response(500, json={}, request=request)

        monkeypatch.setattr(httpx, "post", fake_post)
        client = HttpCompletionClient("https://llm.example.org/v1", "m")
        with pytest.raises(LLMClientError):
            client.complete("prompt")


def test_expand_stage_writes_errors_jsonl(tmp_path):
    from crosslex import layout
    from crosslex.app.stages import PrepParams, stage_expand, stage_ingest
    from crosslex.corpus import StaticCitationClient

    records = [
        {"id": "s1", "title": "One", "body": "Alpha beta. Gamma delta.", "cited": ["n1"], "citing": []},
        {"id": "s2", "title": "Two", "body": "Epsilon zeta. Eta theta.", "cited": ["n2"], "citing": []},
        {"id": "n1", "title": "N1", "body": "Iota kappa."},
        {"id": "n2", "title": "N2", "body": "Lambda mu."},
    ]
    seeds = tmp_path / "seeds.jsonl"
    seeds.write_text("".join(json.dumps(r) + "\n" for r in records[:2]))
    ws = tmp_path / "ws"
    ws.mkdir()
    stage_ingest(ws, seeds, "d", PrepParams(min_count=1))
    client = StaticCitationClient({r["id"]: r for r in records}, fail_ids={"s2"})
    stats = stage_expand(ws, "d", client, PrepParams(min_count=1))
    assert stats["expansion_errors"] == 1
    errors = (layout.corpus_path(ws, "d") / "errors.jsonl").read_text().splitlines()
    assert len(errors) == 1
    assert json.loads(errors[0])["paper_id"] == "s2"


def test_map_term_csls_flag():
    import numpy as np

    from conftest import make_space
    from crosslex.align import DEFAULT_RECIPE, csls_scores, map_term, normalize_matrix
    from crosslex.align.mapping import AlignmentMap

    rng = np.random.default_rng(21)
    tokens = [f"t{i:02d}" for i in range(30)]
    src = make_space(tokens, rng.normal(size=(30, 6)))
    tgt = make_space(tokens, rng.normal(size=(30, 6)))
    amap = AlignmentMap("a", "b", np.eye(6), list(DEFAULT_RECIPE), "self_learn")

    ranked = map_term(amap, src, tgt, "t04", 30, use_csls=True)
    xs = normalize_matrix(src.matrix, amap.recipe)
    xt = normalize_matrix(tgt.matrix, amap.recipe)
    mapped = amap.apply(xs)
    mapped /= np.linalg.norm(mapped, axis=1, keepdims=True)
    xt /= np.linalg.norm(xt, axis=1, keepdims=True)
    expected = csls_scores(mapped, xt)[4]
    order = np.argsort(-expected, kind="stable")
    assert [t for t, _ in ranked] == [tokens[i] for i in order]
