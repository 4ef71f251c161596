from __future__ import annotations

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from crosslex.app.config import ServiceConfig
from crosslex.app.service import create_app

GOLDEN = Path(__file__).parent / "golden" / "query_schema.json"


@pytest.fixture(scope="module")
def client(fixture_workspace):
    app = create_app(ServiceConfig(workspace=str(fixture_workspace)))
    return TestClient(app)


def conforms(value, schema, path="$"):
    """Recursive shape check: dicts list required keys, lists describe their
    element shape, strings name the scalar type (| separates alternatives)."""
    if isinstance(schema, dict):
        assert isinstance(value, dict), f"{path}: expected object"
        assert set(value) == set(schema), f"{path}: keys {sorted(value)} != {sorted(schema)}"
        for key, sub in schema.items():
            conforms(value[key], sub, f"{path}.{key}")
    elif isinstance(schema, list):
        assert isinstance(value, list), f"{path}: expected array"
        for i, item in enumerate(value):
            conforms(item, schema[0], f"{path}[{i}]")
    else:
        for alt in schema.split("|"):
            if alt == "null" and value is None:
                return
            if alt == "str" and isinstance(value, str):
                return
            if alt == "int" and isinstance(value, int) and not isinstance(value, bool):
                return
            if alt == "float" and isinstance(value, (int, float)) and not isinstance(value, bool):
                return
            if alt == "int_pair" and isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
                return
        raise AssertionError(f"{path}: {value!r} does not match {schema!r}")


class TestEndpoints:
    def test_health(self, client):
        body = client.get("/api/health").json()
        assert body["status"] == "ok"
        assert body["schema_version"] == 1

    def test_domains_lists_both_but_not_combined(self, client):
        body = client.get("/api/domains").json()
        ids = [d["id"] for d in body["domains"]]
        assert ids == ["cogsci", "orgsci"]
        assert all("papers" in d["stats"] for d in body["domains"])

    def test_query_matches_golden_schema(self, client):
        resp = client.post(
            "/api/query",
            json={"home": "cogsci", "target": "orgsci", "term": "memory", "pipeline": "aligned"},
        )
        assert resp.status_code == 200
        body = resp.json()
        conforms(body, json.loads(GOLDEN.read_text()))
        assert body["schema_version"] == 1
        assert len(body["hits"]) == 10
        assert [h["rank"] for h in body["hits"]] == list(range(1, 11))

    def test_query_respects_caps(self, client):
        body = client.post(
            "/api/query",
            json={"home": "cogsci", "target": "orgsci", "term": "recall", "pipeline": "aligned"},
        ).json()
        pairs = sum(len(h["contexts"]) for h in body["hits"])
        assert pairs <= 50
        for hit in body["hits"]:
            assert len(hit["contexts"]) <= 5
            per_paper = {}
            for ctx in hit["contexts"]:
                per_paper[ctx["paper_id"]] = per_paper.get(ctx["paper_id"], 0) + 1
            assert all(v <= 2 for v in per_paper.values())

    def test_identical_queries_byte_identical(self, client):
        payload = {"home": "cogsci", "target": "orgsci", "term": "memory", "pipeline": "aligned"}
        a = client.post("/api/query", json=payload)
        b = client.post("/api/query", json=payload)
        assert a.content == b.content

    def test_oov_term_structured_error(self, client):
        resp = client.post(
            "/api/query",
            json={"home": "cogsci", "target": "orgsci", "term": "xyzzy", "pipeline": "aligned"},
        )
        assert resp.status_code == 422
        err = resp.json()["error"]
        assert err["code"] == "OOV_TERM"
        assert 1 <= len(err["suggestions"]) <= 3

    def test_bad_pipeline_code(self, client):
        resp = client.post(
            "/api/query",
            json={"home": "cogsci", "target": "orgsci", "term": "memory", "pipeline": "bogus"},
        )
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "BAD_PIPELINE"

    def test_missing_alignment_code(self, client):
        resp = client.post(
            "/api/query",
            json={"home": "orgsci", "target": "cogsci", "term": "market", "pipeline": "aligned"},
        )
        assert resp.status_code == 409
        err = resp.json()["error"]
        assert err["code"] == "MISSING_ALIGNMENT"
        assert "crosslex align" in err["remedy"]

    def test_paper_lookup(self, client):
        hit = client.post(
            "/api/query",
            json={"home": "cogsci", "target": "orgsci", "term": "memory", "pipeline": "aligned"},
        ).json()["hits"][0]
        pid = hit["contexts"][0]["paper_id"]
        body = client.get(f"/api/paper/{pid}").json()
        assert body["paper"]["id"] == pid
        assert client.get("/api/paper/doesnotexist").status_code == 404

    def test_rating_round_trips_through_export(self, client):
        resp = client.post(
            "/api/ratings",
            json={
                "home": "cogsci",
                "query": "working__memory",
                "target": "orgsci",
                "response_term": "spillover",
                "scheme": "cs2",
                "values": {"label": "sensible_new"},
                "rater_id": "tester",
            },
        )
        assert resp.status_code == 201
        rid = resp.json()["id"]
        assert rid.startswith("r")
        rows = client.get("/api/ratings/export").json()["rows"]
        match = [r for r in rows if r["query_term"] == "working__memory"]
        assert match and match[0]["hit_terms"] == ["spillover"]

    def test_bad_rating_rejected(self, client):
        resp = client.post(
            "/api/ratings",
            json={
                "home": "a", "query": "q", "target": "b", "response_term": "t",
                "scheme": "cs2", "values": {"label": "amazing"}, "rater_id": "x",
            },
        )
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "BAD_RATING"
