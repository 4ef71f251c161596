"""Pipeline stages behind the CLI subcommands.

Each stage checks its prerequisites through the workspace manifest, writes
its artifacts atomically, and records them in the manifest only after they
exist on disk.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from .. import layout
from ..align import SelfLearnConfig, align_procrustes_refine, align_selflearn
from ..align.mapping import AlignmentMap
from ..corpus import (
    DomainCorpus,
    build_vocabulary,
    expand_citations,
    ingest_records,
    load_corpus,
    load_vocabulary,
    merge_phrases,
    save_corpus,
    segment_and_tokenize,
)
from ..embed import TrainConfig, save_space, train_skipgram
from ..embed.space import load_space
from ..errors import CrosslexError
from ..ioutil import atomic_write_json, atomic_write_text
from ..metrics import evaluate_pair, lda_train, modularity_figure, report_csv_rows, salience_figure, salient_terms
from ..retrieve import InvertedIndex
from . import workspace as wsm

log = logging.getLogger(__name__)


@dataclass
class PrepParams:
    min_count: int = 2
    min_pair_count: int = 5
    phrase_threshold: float = 1e-4
    phrase_passes: int = 2

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _prepare_and_save(ws: Path, corpus: DomainCorpus, prep: PrepParams) -> dict:
    segment_and_tokenize(corpus)
    merge_phrases(corpus, prep.min_pair_count, prep.phrase_threshold, prep.phrase_passes)
    vocab = build_vocabulary(corpus, prep.min_count)
    save_corpus(corpus, ws, vocabulary=vocab, phrase_params=prep.to_json())
    InvertedIndex.build(corpus).save(layout.index_path(ws, corpus.domain_id))
    return {**corpus.stats.to_json(), "vocab_size": len(vocab)}


def stage_ingest(ws: str | Path, input_path: str | Path, domain: str, prep: PrepParams | None = None) -> dict:
    ws = Path(ws)
    if domain == layout.COMBINED:
        raise CrosslexError(f"domain name {layout.COMBINED!r} is reserved")
    corpus = ingest_records(input_path, domain)
    manifest = wsm.load_manifest(ws)
    wsm.invalidate(ws, manifest, "domains", domain)
    stats = _prepare_and_save(ws, corpus, prep or PrepParams())
    wsm.record_domain(manifest, ws, domain, stats)
    wsm.save_manifest(ws, manifest)
    return stats


def stage_expand(ws: str | Path, domain: str, client, prep: PrepParams | None = None) -> dict:
    ws = Path(ws)
    manifest = wsm.load_manifest(ws)
    wsm.require_domain(manifest, ws, domain)
    seeds = load_corpus(ws, domain).papers
    result = expand_citations(seeds, client)
    if result.errors:
        atomic_write_text(
            layout.corpus_path(ws, domain) / "errors.jsonl",
            "".join(json.dumps({"paper_id": pid, "error": msg}) + "\n" for pid, msg in result.errors),
        )
    corpus = DomainCorpus(domain_id=domain, papers=result.papers)
    wsm.invalidate(ws, manifest, "domains", domain)
    stats = _prepare_and_save(ws, corpus, prep or PrepParams())
    stats["expansion_errors"] = len(result.errors)
    wsm.record_domain(manifest, ws, domain, stats)
    wsm.save_manifest(ws, manifest)
    return stats


def _combined_corpus(ws: Path, domains: list[str]) -> DomainCorpus:
    papers = []
    seen: set[str] = set()
    for domain in sorted(domains):
        for paper in load_corpus(ws, domain).papers:
            if paper.paper_id not in seen:
                seen.add(paper.paper_id)
                papers.append(paper)
    return DomainCorpus(domain_id=layout.COMBINED, papers=papers)


def _train_one(ws: Path, name: str, corpus, vocab, config: TrainConfig) -> dict:
    space = train_skipgram(corpus, vocab, config)
    space.meta["domain"] = name
    save_space(space, layout.space_path(ws, name) / "vectors.txt")
    atomic_write_json(layout.space_path(ws, name) / "manifest.json", space.meta)
    return space.meta


def stage_train(
    ws: str | Path,
    config: TrainConfig | None = None,
    domains: list[str] | None = None,
    prep: PrepParams | None = None,
) -> dict:
    """Train one space per domain, plus the combined-corpus space whenever
    two or more domains exist (both monolingual baselines need it)."""
    ws = Path(ws)
    config = config or TrainConfig()
    manifest = wsm.load_manifest(ws)
    domains = domains or sorted(manifest["domains"])
    if not domains:
        raise CrosslexError("no ingested domains to train on (run: crosslex ingest)")
    for domain in domains:
        wsm.require_domain(manifest, ws, domain)

    trained = {}
    for domain in domains:
        corpus = load_corpus(ws, domain)
        vocab = load_vocabulary(ws, domain)
        wsm.invalidate(ws, manifest, "spaces", domain)
        trained[domain] = _train_one(ws, domain, corpus, vocab, config)
        wsm.record_space(manifest, ws, domain, trained[domain])
        wsm.save_manifest(ws, manifest)

    if len(domains) >= 2:
        combined = _combined_corpus(ws, domains)
        wsm.invalidate(ws, manifest, "spaces", layout.COMBINED)
        stats = _prepare_and_save(ws, combined, prep or PrepParams())
        vocab = load_vocabulary(ws, layout.COMBINED)
        combined = load_corpus(ws, layout.COMBINED)
        trained[layout.COMBINED] = _train_one(ws, layout.COMBINED, combined, vocab, config)
        manifest["domains_combined_stats"] = stats
        wsm.record_space(manifest, ws, layout.COMBINED, trained[layout.COMBINED])
        wsm.save_manifest(ws, manifest)

    return {name: meta["wall_time_s"] for name, meta in trained.items()}


ALIGN_METHODS = ("self_learn", "procrustes_refine")


def _load_space_with_domain(ws: Path, name: str):
    space = load_space(layout.space_path(ws, name) / "vectors.txt")
    space.meta["domain"] = name
    return space


def stage_align(
    ws: str | Path,
    source: str,
    target: str,
    methods=ALIGN_METHODS,
    config: SelfLearnConfig | None = None,
    rounds: int = 5,
) -> dict:
    ws = Path(ws)
    manifest = wsm.load_manifest(ws)
    for name in (source, target):
        wsm.require_space(manifest, ws, name)
    src = _load_space_with_domain(ws, source)
    tgt = _load_space_with_domain(ws, target)

    out = {}
    for method in methods:
        if method == "self_learn":
            amap = align_selflearn(src, tgt, config=config)
        elif method == "procrustes_refine":
            amap = align_procrustes_refine(src, tgt, rounds=rounds, config=config)
        else:
            raise CrosslexError(f"unknown alignment method {method!r}")
        wsm.invalidate(ws, manifest, "alignments", layout.alignment_name(source, target, method))
        amap.save(layout.alignment_path(ws, source, target, method))
        wsm.record_alignment(manifest, ws, source, target, method)
        wsm.save_manifest(ws, manifest)
        out[method] = {
            "orthogonality_error": amap.orthogonality_error(),
            "iterations": len(amap.iteration_log),
            "warning": amap.warning,
        }
    wsm.save_manifest(ws, manifest)
    return out


def stage_eval(
    ws: str | Path,
    source: str,
    target: str,
    methods=ALIGN_METHODS,
    k_graph: int = 10,
    node_cap: int = 2000,
    num_topics: int = 20,
    gibbs_iterations: int = 1000,
    n_salient: int = 100,
    seed: int = 0,
) -> list[dict]:
    """Score alignments for a domain pair and refresh the flat CSV and the
    figures rendered alongside it."""
    ws = Path(ws)
    manifest = wsm.load_manifest(ws)
    for method in methods:
        wsm.require_alignment(manifest, ws, source, target, method)

    src = _load_space_with_domain(ws, source)
    tgt = _load_space_with_domain(ws, target)
    src_corpus = load_corpus(ws, source)
    src_vocab = load_vocabulary(ws, source)
    topic_model = lda_train(
        src_corpus, src_vocab, num_topics=num_topics, gibbs_iterations=gibbs_iterations, seed=seed
    )
    salient = salient_terms(topic_model, n_salient)

    reports = []
    for method in methods:
        amap = AlignmentMap.load(layout.alignment_path(ws, source, target, method))
        report = evaluate_pair(amap, src, tgt, salient, k_graph=k_graph, node_cap=node_cap)
        name = layout.alignment_name(source, target, method)
        atomic_write_json(layout.report_path(ws, source, target, method) / "report.json", report)
        wsm.record_report(manifest, name)
        reports.append(report)

    # regenerate the flat export and figures over every report in the manifest
    all_reports = []
    for name in manifest["reports"]:
        path = layout.reports_root(ws) / name / "report.json"
        if path.exists():
            all_reports.append(json.loads(path.read_text()))
    atomic_write_text(layout.reports_root(ws) / "report.csv", report_csv_rows(all_reports))
    figures = layout.reports_root(ws) / "figures"
    modularity_figure(all_reports, figures / "normalized_modularity.png")
    salience_figure(all_reports, figures / "salient_cosine.png")

    wsm.save_manifest(ws, manifest)
    return reports
