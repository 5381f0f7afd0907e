"""Operator command line: indexing, searching, checking, training, eval,
and serving the HTTP API.

Exit codes: 0 on success, 2 for usage errors (argparse conventions), 1 for
runtime failures, which are reported on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evaluation as ev
from . import pipeline as pl
from . import sources as src
from . import stance as st
from .errors import EmptyQueryError, FaktaError
from .querygen import fallback_query, generate_query
from .retrieval import Index, build_index, load_corpus_jsonl, parse_model, search
from .rerank import rerank
from .textanalysis import extract_named_entities, pos_tag, tokenize


def _add_index_commands(subparsers):
    p_index = subparsers.add_parser("index", help="build or inspect an index")
    index_sub = p_index.add_subparsers(dest="index_command", required=True)
    p_build = index_sub.add_parser("build", help="index a JSONL corpus into a directory")
    p_build.add_argument("corpus", help="corpus JSONL (doc_id, title, body, source_domain)")
    p_build.add_argument("directory", help="output index directory")


def _add_search_command(subparsers):
    p = subparsers.add_parser("search", help="query an index directly")
    p.add_argument("directory", help="index directory")
    p.add_argument("claim", help="claim text to search with")
    p.add_argument("--model", default="dfr_z", help="retrieval model, e.g. bm25, dfr_z, lm_jelinek:0.05")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--rerank", action="store_true", help="apply keyword-overlap re-ranking")


def _add_check_command(subparsers):
    p = subparsers.add_parser("check", help="fact-check a claim end to end")
    p.add_argument("claim")
    p.add_argument("--config", required=True, help="config file (see README)")
    p.add_argument("--json", action="store_true", help="print the full JSON result")


def _add_stance_commands(subparsers):
    p_stance = subparsers.add_parser("stance", help="train or inspect stance models")
    stance_sub = p_stance.add_subparsers(dest="stance_command", required=True)
    p_train = stance_sub.add_parser("train", help="train on stance JSONL data")
    p_train.add_argument("data", help="JSONL with claim, document, stance fields")
    p_train.add_argument("--out", required=True, help="output model file")
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--epochs", type=int, default=300)
    p_train.add_argument("--lr", type=float, default=0.5)
    p_train.add_argument("--l2", type=float, default=1e-4)
    p_train.add_argument("--batch-size", type=int, default=None)
    p_train.add_argument("--buckets", type=int, default=4096, help="hashed BoW buckets")


def _add_eval_commands(subparsers):
    p_eval = subparsers.add_parser("eval", help="retrieval and pipeline evaluation")
    eval_sub = p_eval.add_subparsers(dest="eval_command", required=True)

    p_ret = eval_sub.add_parser("retrieval", help="recall@K table over claims")
    p_ret.add_argument("directory", help="index directory")
    p_ret.add_argument("claims", help="claims JSONL (id, claim, label, evidence)")
    p_ret.add_argument("--models", default="all",
                       help='comma list of models or "all" for the full table')
    p_ret.add_argument("--variants", default="raw,querygen,reranked")
    p_ret.add_argument("--ks", default="1,5,10,20")
    p_ret.add_argument("--csv", default=None, help="also write CSV to this path")

    p_pipe = eval_sub.add_parser("pipeline", help="full-pipeline verdict metrics")
    p_pipe.add_argument("claims", help="claims JSONL")
    p_pipe.add_argument("--config", required=True)
    p_pipe.add_argument("--tune", default=None,
                        help="comma list of NEI thresholds to grid-search first")


def _add_serve_command(subparsers):
    p = subparsers.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--index-dir", required=True)
    p.add_argument("--model", required=True, help="stance model file")
    p.add_argument("--registry", default=None, help="source registry CSV")
    p.add_argument("--config", default=None, help="pipeline config file")
    p.add_argument("--ui-dir", default=None, help="static UI bundle to serve at /")
    p.add_argument("--cors", action="append", default=None, help="allowed CORS origin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fakta", description="claim fact-checking engine"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_index_commands(subparsers)
    _add_search_command(subparsers)
    _add_check_command(subparsers)
    _add_stance_commands(subparsers)
    _add_eval_commands(subparsers)
    _add_serve_command(subparsers)
    return parser


def _claim_query_terms(claim: str):
    tokens = pos_tag(tokenize(claim))
    try:
        query = generate_query(tokens, extract_named_entities(tokens))
    except EmptyQueryError:
        query = fallback_query(tokens)
    return tokens, query


def cmd_index_build(args) -> int:
    records = load_corpus_jsonl(args.corpus)
    index = build_index(records)
    out = index.save(args.directory)
    stats = index.stats
    print(
        f"indexed {stats.doc_count} docs, {stats.total_tokens} tokens, "
        f"{len(stats.df)} terms -> {out}"
    )
    return 0


def cmd_search(args) -> int:
    index = Index.load(args.directory)
    model = parse_model(args.model)
    tokens, query = _claim_query_terms(args.claim)
    hits = search(index, query, model, args.k)
    if args.rerank:
        titles = {h.doc_id: index.record(h.doc_id).title for h in hits}
        hits = rerank(tokens, hits, titles)
    print(f"query: {' '.join(query.terms)}  (model {model.name})")
    for hit in hits:
        title = index.record(hit.doc_id).title
        extra = f"  f_rank={hit.f_rank:.4f}" if hit.f_rank is not None else ""
        print(f"{hit.rank:3d}. {hit.doc_id}  score={hit.score_init:.4f}{extra}  {title}")
    if not hits:
        print("(no hits)")
    return 0


def cmd_check(args, parser: argparse.ArgumentParser) -> int:
    config_path = Path(args.config)
    if not config_path.exists():
        parser.error(f"config file not found: {config_path}")
    app_config = pl.load_app_config(config_path)
    checker = pl.build_checker(app_config)
    result = checker.check(args.claim)
    if args.json:
        print(json.dumps(pl.result_to_dict(result), sort_keys=True, indent=2))
        return 0
    v = result.verdict
    print(f"claim:   {result.claim}")
    print(f"query:   {' '.join(result.query.terms)}")
    print(
        f"verdict: {v.label}  (agree {v.agree_score:.3f} / disagree "
        f"{v.disagree_score:.3f} / discuss {v.discuss_score:.3f}; basis {v.basis_channel})"
    )
    for channel in result.channels:
        status = f"error: {channel.error}" if channel.error else f"{len(channel.documents)} docs"
        print(f"  [{channel.channel}] {status}")
        for doc in channel.documents:
            print(
                f"      {doc.hit.rank}. {doc.hit.doc_id} "
                f"(score {doc.hit.score_init:.3f}, stance {doc.stance_dist.dominant()})"
            )
    return 0


def cmd_stance_train(args) -> int:
    examples = st.load_stance_jsonl(args.data)
    config = st.FeatureConfig(n_buckets=args.buckets)
    model = st.train(
        examples,
        lr=args.lr,
        epochs=args.epochs,
        l2=args.l2,
        seed=args.seed,
        batch_size=args.batch_size,
        feature_config=config,
    )
    model.save(args.out)
    accuracy = st.training_accuracy(model, examples)
    print(
        f"trained on {len(examples)} examples (seed {args.seed}); "
        f"train accuracy {accuracy:.3f} -> {args.out}"
    )
    return 0


def cmd_eval_retrieval(args) -> int:
    index = Index.load(args.directory)
    claims = ev.load_fever(args.claims)
    if args.models == "all":
        from .retrieval import table_models

        models = table_models()
    else:
        models = [parse_model(m) for m in args.models.split(",")]
    variants = tuple(v.strip() for v in args.variants.split(","))
    ks = tuple(int(k) for k in args.ks.split(","))
    rows = ev.run_retrieval_eval(index, claims, models, variants, ks)
    print(ev.format_eval_table(rows))
    if args.csv:
        Path(args.csv).write_text(ev.eval_table_csv(rows), encoding="utf-8")
        print(f"csv written to {args.csv}")
    return 0


def cmd_eval_pipeline(args, parser: argparse.ArgumentParser) -> int:
    config_path = Path(args.config)
    if not config_path.exists():
        parser.error(f"config file not found: {config_path}")
    app_config = pl.load_app_config(config_path)
    checker = pl.build_checker(app_config)
    claims = ev.load_fever(args.claims)
    if args.tune:
        grid = [float(t) for t in args.tune.split(",")]
        best = ev.tune_threshold(claims, checker, grid)
        print(f"tuned nei_threshold: {best}")
        checker.config = checker.config.with_overrides(nei_threshold=best)
    metrics, _ = ev.run_pipeline_eval(checker, claims)
    print(ev.format_metrics(metrics))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    pipeline_config = pl.PipelineConfig()
    paths = {"index_dir": args.index_dir, "stance_model": args.model}
    if args.config:
        app_config = pl.load_app_config(args.config)
        pipeline_config = app_config.pipeline
        paths = {**app_config.paths, **paths}
    if args.registry:
        paths["registry"] = args.registry
    checker = pl.build_checker(pl.AppConfig(pipeline=pipeline_config, paths=paths))
    app = create_app(checker, cors_origins=args.cors, ui_dir=args.ui_dir)
    print(f"serving on http://{args.host}:{args.port} (index: {len(checker.index)} docs)")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "index":
            return cmd_index_build(args)
        if args.command == "search":
            return cmd_search(args)
        if args.command == "check":
            return cmd_check(args, parser)
        if args.command == "stance":
            return cmd_stance_train(args)
        if args.command == "eval":
            if args.eval_command == "retrieval":
                return cmd_eval_retrieval(args)
            return cmd_eval_pipeline(args, parser)
        if args.command == "serve":
            return cmd_serve(args)
    except FaktaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
