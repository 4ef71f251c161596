"""Command-line interface.

Stages build on each other: ingest (or ingest + expand) -> train -> align ->
eval / query. Exit codes: 0 ok, 1 user error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..align import SelfLearnConfig
from ..corpus import HttpCitationClient, StaticCitationClient
from ..embed import TrainConfig
from ..errors import CrosslexError, MissingArtifactError, OOVTermError
from ..layout import ratings_path
from ..metrics import RatingStore, export_csv, export_rows
from ..retrieve import HttpCompletionClient, Query, flatten_pairs, run_pipeline
from .config import load_config
from .stages import ALIGN_METHODS, PrepParams, stage_align, stage_eval, stage_expand, stage_ingest, stage_train

log = logging.getLogger(__name__)


def _add_prep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--min-count", type=int, default=2, help="vocabulary frequency threshold")
    p.add_argument("--min-pair-count", type=int, default=5, help="phrase-merge pair count floor")
    p.add_argument("--phrase-threshold", type=float, default=1e-4, help="phrase-merge score threshold")
    p.add_argument("--phrase-passes", type=int, default=2, help="phrase-merge passes (2 allows 3-4 word terms)")


def _prep_from(args) -> PrepParams:
    return PrepParams(
        min_count=args.min_count,
        min_pair_count=args.min_pair_count,
        phrase_threshold=args.phrase_threshold,
        phrase_passes=args.phrase_passes,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crosslex", description=__doc__)
    parser.add_argument("--workspace", "-w", default=".", help="workspace directory (default: cwd)")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="read line-delimited JSON records into a domain corpus")
    p.add_argument("--input", required=True, help="records file (one JSON object per line)")
    p.add_argument("--domain", required=True)
    _add_prep_flags(p)

    p = sub.add_parser("expand", help="grow a domain by one level of citations")
    p.add_argument("--domain", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--citations-file", help="static citation graph (jsonl), offline")
    src.add_argument("--api-base", help="Semantic-Scholar-compatible endpoint base URL")
    p.add_argument("--rate-interval", type=float, default=1.0, help="min seconds between API requests")
    _add_prep_flags(p)

    p = sub.add_parser("train", help="train per-domain spaces plus the combined space")
    p.add_argument("--domains", nargs="*", default=None, help="default: every ingested domain")
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--lr", type=float, default=0.025)
    p.add_argument("--subsample", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--subword", action="store_true", help="hashed character n-gram vectors")
    _add_prep_flags(p)

    p = sub.add_parser("align", help="align two trained spaces")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--method", choices=[*ALIGN_METHODS, "both"], default="both")
    p.add_argument("--rounds", type=int, default=5, help="refinement rounds for procrustes_refine")
    p.add_argument("--cutoff", type=int, default=8000, help="induction vocabulary cutoff")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("eval", help="alignment-quality reports, CSV, and figures")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--method", choices=[*ALIGN_METHODS, "both"], default="both")
    p.add_argument("--k-graph", type=int, default=10)
    p.add_argument("--node-cap", type=int, default=2000)
    p.add_argument("--topics", type=int, default=20)
    p.add_argument("--gibbs-iterations", type=int, default=1000)
    p.add_argument("--salient", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("query", help="run a retrieval pipeline for one term")
    p.add_argument("--home", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--pipeline", choices=["aligned", "fasttext_target", "fasttext_combined", "llm_select"], default="aligned")
    p.add_argument("--align-method", choices=list(ALIGN_METHODS), default="self_learn")
    p.add_argument("--k", type=int, default=10, help="expansion width")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--llm-endpoint", default="", help="OpenAI-compatible endpoint for llm_select")
    p.add_argument("--llm-model", default="", help="model name for llm_select")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)

    p = sub.add_parser("export-ratings", help="flat CSV of captured judgments")
    p.add_argument("--output", default="-", help="file path or - for stdout")
    p.add_argument("--json", action="store_true", help="rows as JSON instead of CSV")

    return parser


def _methods(arg: str) -> tuple[str, ...]:
    return ALIGN_METHODS if arg == "both" else (arg,)


def _cmd_query(args) -> int:
    query = Query(
        home_domain=args.home,
        target_domain=args.target,
        term=args.term,
        kind=args.pipeline,
        expansion_k=args.k,
        align_method=args.align_method,
    )
    client = None
    if args.pipeline == "llm_select" and args.llm_endpoint:
        client = HttpCompletionClient(args.llm_endpoint, args.llm_model)
    hits = run_pipeline(query, args.workspace, client=client)
    if args.json:
        payload = [
            {
                "term": h.term,
                "score": h.score,
                "rank": h.rank,
                "contexts": [c.__dict__ for c in h.contexts],
            }
            for h in hits
        ]
        print(json.dumps(payload, indent=2))
        return 0
    pairs = flatten_pairs(hits)
    print(f"{len(hits)} terms, {len(pairs)} (term, context) pairs\n")
    for hit in hits:
        score = f"{hit.score:.4f}" if hit.score is not None else "--"
        print(f"{hit.rank:>3}. {hit.term}  (score {score}, {len(hit.contexts)} contexts)")
        for ctx in hit.contexts:
            text = ctx.text if len(ctx.text) < 120 else ctx.text[:117] + "..."
            print(f"       [{ctx.paper_id}] {text}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    if config.workspace == ".":
        config.workspace = str(args.workspace)
    config.validate()
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "ingest":
            stats = stage_ingest(args.workspace, args.input, args.domain, _prep_from(args))
            print(json.dumps(stats, indent=2))
        elif args.command == "expand":
            if args.citations_file:
                client = StaticCitationClient.from_jsonl(args.citations_file)
            else:
                client = HttpCitationClient(args.api_base, min_interval=args.rate_interval)
            stats = stage_expand(args.workspace, args.domain, client, _prep_from(args))
            print(json.dumps(stats, indent=2))
        elif args.command == "train":
            config = TrainConfig(
                k=args.dim,
                window=args.window,
                negatives=args.negatives,
                epochs=args.epochs,
                initial_lr=args.lr,
                min_count=args.min_count,
                subsample_t=args.subsample,
                seed=args.seed,
                workers=args.workers,
                subword=args.subword,
            )
            timings = stage_train(args.workspace, config, args.domains, _prep_from(args))
            print(json.dumps({"trained": timings}, indent=2))
        elif args.command == "align":
            config = SelfLearnConfig(vocab_cutoff=args.cutoff, seed=args.seed)
            out = stage_align(args.workspace, args.source, args.target, _methods(args.method), config, args.rounds)
            print(json.dumps(out, indent=2))
        elif args.command == "eval":
            reports = stage_eval(
                args.workspace,
                args.source,
                args.target,
                _methods(args.method),
                k_graph=args.k_graph,
                node_cap=args.node_cap,
                num_topics=args.topics,
                gibbs_iterations=args.gibbs_iterations,
                n_salient=args.salient,
                seed=args.seed,
            )
            for rep in reports:
                print(
                    f"{rep['source']} -> {rep['target']} [{rep['method']}]: "
                    f"normalized_modularity={rep['modularity']['normalized_modularity']:.4f} "
                    f"mean_salient_cosine={rep['salience']['mean_normalized']:.4f}"
                )
        elif args.command == "query":
            return _cmd_query(args)
        elif args.command == "serve":
            return _cmd_serve(args)
        elif args.command == "export-ratings":
            store = RatingStore(ratings_path(args.workspace))
            if args.json:
                out = json.dumps([row.__dict__ for row in export_rows(store)], indent=2) + "\n"
            else:
                out = export_csv(store)
            if args.output == "-":
                sys.stdout.write(out)
            else:
                Path(args.output).write_text(out)
        return 0
    except OOVTermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MissingArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CrosslexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:  # internal bug: full trace, distinct exit code
        log.exception("internal error")
        return 2


if __name__ == "__main__":
    sys.exit(main())
