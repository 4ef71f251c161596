"""Workspace directory layout, shared by the CLI, the service, and the
query pipelines.

    <ws>/manifest.json
    <ws>/corpora/<domain>/papers.jsonl, sentences.jsonl, vocab.tsv,
                          manifest.json, index.bin, errors.jsonl
    <ws>/spaces/<name>/vectors.txt, manifest.json
    <ws>/alignments/<src>__<tgt>__<method>/W.tsv, meta.json
    <ws>/reports/<src>__<tgt>__<method>/report.json
    <ws>/reports/report.csv, figures/
    <ws>/ratings.jsonl
"""

from __future__ import annotations

from pathlib import Path

COMBINED = "combined"  # reserved space/corpus name for the all-communities corpus
WORKSPACE_VERSION = "1"


def corpus_path(ws: str | Path, domain: str) -> Path:
    return Path(ws) / "corpora" / domain


def index_path(ws: str | Path, domain: str) -> Path:
    return corpus_path(ws, domain) / "index.bin"


def space_path(ws: str | Path, name: str) -> Path:
    return Path(ws) / "spaces" / name


def alignment_name(source: str, target: str, method: str) -> str:
    return f"{source}__{target}__{method}"


def alignment_path(ws: str | Path, source: str, target: str, method: str) -> Path:
    return Path(ws) / "alignments" / alignment_name(source, target, method)


def report_path(ws: str | Path, source: str, target: str, method: str) -> Path:
    return Path(ws) / "reports" / alignment_name(source, target, method)


def reports_root(ws: str | Path) -> Path:
    return Path(ws) / "reports"


def ratings_path(ws: str | Path) -> Path:
    return Path(ws) / "ratings.jsonl"


def manifest_path(ws: str | Path) -> Path:
    return Path(ws) / "manifest.json"
