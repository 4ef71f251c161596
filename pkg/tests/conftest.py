from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from crosslex.align import SelfLearnConfig
from crosslex.app.stages import PrepParams, stage_align, stage_eval, stage_expand, stage_ingest, stage_train
from crosslex.corpus import StaticCitationClient
from crosslex.corpus.records import DomainCorpus, PaperRecord
from crosslex.corpus.text import segment_and_tokenize
from crosslex.corpus.vocab import Vocabulary
from crosslex.embed import TrainConfig
from crosslex.embed.space import EmbeddingSpace

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def make_corpus(bodies: list[str], domain: str = "test", titles: list[str] | None = None) -> DomainCorpus:
    papers = [
        PaperRecord(
            paper_id=f"p{i:03d}",
            title=(titles[i] if titles else ""),
            body=body,
            domain_tag=domain,
            url=f"https://example.org/{i}",
        )
        for i, body in enumerate(bodies)
    ]
    corpus = DomainCorpus(domain_id=domain, papers=papers)
    return segment_and_tokenize(corpus)


def make_space(tokens: list[str], matrix: np.ndarray, domain: str = "") -> EmbeddingSpace:
    vocab = Vocabulary(tokens=tokens, frequencies=list(range(len(tokens), 0, -1)), min_count=1)
    space = EmbeddingSpace(vocab=vocab, matrix=np.asarray(matrix, dtype=np.float32))
    if domain:
        space.meta["domain"] = domain
    return space


def planted_rotation_pair(n=1000, k=50, sigma=0.01, seed=42, shared_tokens=True):
    """The synthetic alignment benchmark: target rows are a planted random
    orthogonal transform of the source rows plus Gaussian noise; the gold
    mapping is row i -> row i."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, k))
    q, r = np.linalg.qr(rng.normal(size=(k, k)))
    rotation = q * np.sign(np.diag(r))
    y = x @ rotation.T
    if sigma:
        y = y + rng.normal(size=(n, k)) * sigma
    s_tokens = [f"w{i:04d}" for i in range(n)]
    t_tokens = s_tokens if shared_tokens else [f"z{i:04d}" for i in range(n)]
    return (
        make_space(s_tokens, x, domain="src"),
        make_space(t_tokens, y, domain="tgt"),
        rotation,
    )


def alignment_precision_at_1(amap, source_space, target_space) -> float:
    from crosslex.align import normalize_matrix

    xs = normalize_matrix(source_space.matrix, amap.recipe)
    xt = normalize_matrix(target_space.matrix, amap.recipe)
    mapped = amap.apply(xs)
    mapped /= np.linalg.norm(mapped, axis=1, keepdims=True)
    xt /= np.linalg.norm(xt, axis=1, keepdims=True)
    hits = np.argmax(mapped @ xt.T, axis=1) == np.arange(xs.shape[0])
    return float(hits.mean())


def build_fixture_workspace(ws: Path, epochs: int = 8, dim: int = 48, gibbs: int = 200) -> Path:
    """Full offline pipeline over the bundled fixture into ``ws``."""
    prep = PrepParams()
    for domain in ("cogsci", "orgsci"):
        stage_ingest(ws, FIXTURES / f"{domain}_seeds.jsonl", domain, prep)
        client = StaticCitationClient.from_jsonl(FIXTURES / "citations.jsonl")
        stage_expand(ws, domain, client, prep)
    stage_train(ws, TrainConfig(k=dim, epochs=epochs, seed=1), prep=prep)
    stage_align(ws, "cogsci", "orgsci", config=SelfLearnConfig(seed=0))
    stage_eval(ws, "cogsci", "orgsci", gibbs_iterations=gibbs, num_topics=6, seed=0)
    return ws


@pytest.fixture(scope="session")
def fixture_workspace(tmp_path_factory) -> Path:
    """One fully built workspace shared by read-only tests."""
    ws = tmp_path_factory.mktemp("ws")
    return build_fixture_workspace(ws)
