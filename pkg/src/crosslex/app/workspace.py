"""Workspace manifest: the ledger of built artifacts.

Every CLI stage writes its artifacts first (each one atomically) and updates
the manifest last, so a crash mid-stage can leave stray files but never a
manifest entry pointing at a missing or partial artifact.
"""

from __future__ import annotations

import hashlib
from datetime import datetime, timezone
from pathlib import Path

from .. import layout
from ..errors import MissingArtifactError
from ..ioutil import atomic_write_json, read_json


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def file_fingerprint(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def empty_manifest() -> dict:
    return {
        "workspace_version": layout.WORKSPACE_VERSION,
        "created": _now(),
        "updated": _now(),
        "domains": {},
        "spaces": {},
        "alignments": {},
        "reports": [],
    }


def load_manifest(ws: str | Path) -> dict:
    path = layout.manifest_path(ws)
    if not path.exists():
        return empty_manifest()
    return read_json(path)


def save_manifest(ws: str | Path, manifest: dict) -> None:
    manifest["updated"] = _now()
    atomic_write_json(layout.manifest_path(ws), manifest)


def invalidate(ws: str | Path, manifest: dict, section: str, name: str) -> None:
    """Drop an entry before rebuilding its artifact, and persist that drop.

    Overwriting an artifact in place cannot be atomic with its manifest
    record, so a rebuild first unregisters the entry; a crash anywhere in
    the rebuild then leaves files the manifest never mentions, and the
    workspace still validates.
    """
    if name in manifest.get(section, {}):
        del manifest[section][name]
        save_manifest(ws, manifest)


def record_domain(manifest: dict, ws: Path, domain: str, stats: dict) -> None:
    manifest["domains"][domain] = {
        "fingerprint": file_fingerprint(layout.corpus_path(ws, domain) / "papers.jsonl"),
        "stats": stats,
        "built": _now(),
    }


def record_space(manifest: dict, ws: Path, name: str, meta: dict) -> None:
    manifest["spaces"][name] = {
        "fingerprint": file_fingerprint(layout.space_path(ws, name) / "vectors.txt"),
        "corpus_fingerprint": meta.get("corpus_fingerprint", ""),
        "built": _now(),
    }


def record_alignment(manifest: dict, ws: Path, source: str, target: str, method: str) -> None:
    name = layout.alignment_name(source, target, method)
    manifest["alignments"][name] = {
        "source": source,
        "target": target,
        "method": method,
        "fingerprint": file_fingerprint(layout.alignment_path(ws, source, target, method) / "W.tsv"),
        "built": _now(),
    }


def record_report(manifest: dict, name: str) -> None:
    if name not in manifest["reports"]:
        manifest["reports"].append(name)


def require_domain(manifest: dict, ws: Path, domain: str) -> None:
    if domain not in manifest["domains"]:
        raise MissingArtifactError(
            f"domain {domain!r} is not in the workspace manifest",
            remedy=f"crosslex ingest --domain {domain} --input <records.jsonl>",
        )


def require_space(manifest: dict, ws: Path, name: str) -> None:
    if name not in manifest["spaces"]:
        raise MissingArtifactError(
            f"embedding space {name!r} has not been trained", remedy="crosslex train"
        )


def require_alignment(manifest: dict, ws: Path, source: str, target: str, method: str) -> None:
    if layout.alignment_name(source, target, method) not in manifest["alignments"]:
        raise MissingArtifactError(
            f"alignment {source}->{target} ({method}) has not been built",
            remedy=f"crosslex align --source {source} --target {target} --method {method}",
        )


def validate_workspace(ws: str | Path) -> list[str]:
    """Check every manifest entry against the files on disk. Returns a list
    of problems (empty means healthy)."""
    ws = Path(ws)
    manifest = load_manifest(ws)
    problems: list[str] = []

    for domain in manifest["domains"]:
        papers = layout.corpus_path(ws, domain) / "papers.jsonl"
        if not papers.exists():
            problems.append(f"domain {domain}: papers.jsonl missing")
        elif file_fingerprint(papers) != manifest["domains"][domain]["fingerprint"]:
            problems.append(f"domain {domain}: papers.jsonl fingerprint mismatch")

    for name in manifest["spaces"]:
        vectors = layout.space_path(ws, name) / "vectors.txt"
        if not vectors.exists():
            problems.append(f"space {name}: vectors.txt missing")
        elif file_fingerprint(vectors) != manifest["spaces"][name]["fingerprint"]:
            problems.append(f"space {name}: vectors.txt fingerprint mismatch")

    for name, info in manifest["alignments"].items():
        w = layout.alignment_path(ws, info["source"], info["target"], info["method"]) / "W.tsv"
        if not w.exists():
            problems.append(f"alignment {name}: W.tsv missing")
        elif file_fingerprint(w) != info["fingerprint"]:
            problems.append(f"alignment {name}: W.tsv fingerprint mismatch")

    for name in manifest["reports"]:
        if not (layout.reports_root(ws) / name / "report.json").exists():
            problems.append(f"report {name}: report.json missing")
    return problems
