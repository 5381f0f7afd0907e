"""Evaluation harness: retrieval recall@K tables, pipeline classification
metrics, and NEI-threshold tuning.

The claims format is a simplified projection of the public benchmark
schema: JSONL with id, claim, label and evidence (a list of doc_id
strings). Full-scale numbers require the full corpus and are documented as
non-reproduction targets; everything here runs at desk scale.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .errors import EmptyQueryError, FeverFormatError
from .pipeline import FactChecker, decide_verdict
from .querygen import fallback_query, generate_query
from .rerank import rerank as rerank_hits
from .retrieval import Index, RetrievalModel, search
from .textanalysis import extract_named_entities, pos_tag, tokenize

VERDICT_LABELS = ("SUP", "REF", "NEI")

_LABEL_ALIASES = {
    "SUPPORTED": "SUP",
    "SUP": "SUP",
    "REFUTED": "REF",
    "REF": "REF",
    "NOT ENOUGH INFO": "NEI",
    "NOT-ENOUGH-INFO": "NEI",
    "NOT_ENOUGH_INFO": "NEI",
    "NEI": "NEI",
}


@dataclass(frozen=True)
class FeverClaim:
    id: str
    claim: str
    label: str
    evidence: tuple[str, ...]


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    f1: dict[str, float]
    f1_macro: float
    confusion: dict[str, dict[str, int]]
    recall_at: dict[int, float] = field(default_factory=dict)


def load_fever(path: str | Path) -> list[FeverClaim]:
    """Parse a claims JSONL file; labels normalize case-insensitively and
    NEI must be exactly the claims without evidence."""
    claims = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FeverFormatError(f"{path}:{lineno}: bad JSON: {exc}") from exc
            raw_label = str(obj.get("label", "")).strip().upper()
            if raw_label not in _LABEL_ALIASES:
                raise FeverFormatError(
                    f"{path}:{lineno}: unknown label {obj.get('label')!r}"
                )
            label = _LABEL_ALIASES[raw_label]
            evidence = tuple(str(e) for e in obj.get("evidence", []))
            if label == "NEI" and evidence:
                raise FeverFormatError(
                    f"{path}:{lineno}: NEI claim must not carry evidence"
                )
            if label != "NEI" and not evidence:
                raise FeverFormatError(
                    f"{path}:{lineno}: {label} claim requires evidence"
                )
            claims.append(
                FeverClaim(
                    id=str(obj.get("id", lineno)),
                    claim=str(obj["claim"]),
                    label=label,
                    evidence=evidence,
                )
            )
    return claims


def recall_at_k(
    results: Sequence[Sequence[str]],
    gold: Sequence[Sequence[str]],
    k: int,
) -> float:
    """Share of claims whose top-k ranked documents contain at least one
    gold document. Only claims with non-empty gold belong here."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(results) != len(gold):
        raise ValueError("results and gold must align")
    if not results:
        raise ValueError("need at least one claim")
    hits = 0
    for ranked, gold_ids in zip(results, gold):
        if not gold_ids:
            raise ValueError("recall@k is undefined for claims without gold docs")
        gold_set = set(gold_ids)
        hits += any(doc_id in gold_set for doc_id in list(ranked)[:k])
    return hits / len(results)


def classification_metrics(
    preds: Sequence[str], gold: Sequence[str]
) -> Metrics:
    """Per-label precision/recall/F1 (F1=0 when undefined), macro-F1 over
    the labels present in gold, accuracy, and the 3x3 confusion matrix."""
    if len(preds) != len(gold):
        raise ValueError("prediction and gold lists must align")
    if not preds:
        raise ValueError("need at least one prediction")
    for label in list(preds) + list(gold):
        if label not in VERDICT_LABELS:
            raise ValueError(f"unknown verdict label {label!r}")
    confusion = {g: {p: 0 for p in VERDICT_LABELS} for g in VERDICT_LABELS}
    for p, g in zip(preds, gold):
        confusion[g][p] += 1
    f1: dict[str, float] = {}
    for label in VERDICT_LABELS:
        tp = confusion[label][label]
        fp = sum(confusion[g][label] for g in VERDICT_LABELS if g != label)
        fn = sum(confusion[label][p] for p in VERDICT_LABELS if p != label)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1[label] = (
            2 * precision * recall / (precision + recall) if precision + recall else 0.0
        )
    present = [label for label in VERDICT_LABELS if any(confusion[label].values())]
    f1_macro = sum(f1[label] for label in present) / len(present)
    accuracy = sum(confusion[l][l] for l in VERDICT_LABELS) / len(preds)
    return Metrics(accuracy=accuracy, f1=f1, f1_macro=f1_macro, confusion=confusion)


def tune_threshold(
    dev_claims: Sequence[FeverClaim],
    checker: FactChecker,
    tau_grid: Sequence[float],
) -> float:
    """Grid-search the NEI threshold maximizing macro-F1 on dev claims (ties
    go to the smaller threshold). Retrieval and stance run once per claim;
    only the verdict rule is re-applied per grid point."""
    if not tau_grid:
        raise ValueError("tau grid must be non-empty")
    labels = {c.label for c in dev_claims}
    if "NEI" not in labels:
        raise ValueError("dev set must contain NEI claims to tune against")
    # an all-NEI dev set is degenerate but well-defined: every threshold
    # above all retrieval scores is optimal and the tie rule applies
    config = checker.config.with_overrides(label_mode="3lbl")
    observations = []
    for claim in dev_claims:
        result = checker.check(claim.claim, label_mode="3lbl")
        basis = result.channel(config.basis_channel)
        if basis is not None and basis.documents:
            observations.append(
                (basis.aggregate, basis.documents[0].hit.score_init, claim.label)
            )
        else:
            observations.append((None, 0.0, claim.label))
    best_tau = None
    best_f1 = -1.0
    for tau in tau_grid:
        tau_config = config.with_overrides(nei_threshold=float(tau))
        preds = [
            decide_verdict(agg, top, tau_config).label for agg, top, _ in observations
        ]
        f1 = classification_metrics(preds, [label for _, _, label in observations]).f1_macro
        if f1 > best_f1 or (f1 == best_f1 and best_tau is not None and tau < best_tau):
            best_f1, best_tau = f1, tau
    return float(best_tau)


# ---------------------------------------------------------------------------
# Retrieval evaluation table
# ---------------------------------------------------------------------------

VARIANT_RAW = "raw"
VARIANT_QUERYGEN = "querygen"
VARIANT_RERANKED = "reranked"
ALL_VARIANTS = (VARIANT_RAW, VARIANT_QUERYGEN, VARIANT_RERANKED)


@dataclass(frozen=True)
class RetrievalEvalRow:
    model: str
    variant: str
    recall_at: dict[int, float]


def _claim_terms(claim_text: str, variant: str):
    tokens = pos_tag(tokenize(claim_text))
    if variant == VARIANT_RAW:
        terms = []
        for t in tokens:
            if t.is_word and t.normalized not in terms:
                terms.append(t.normalized)
        return tokens, terms
    try:
        query = generate_query(tokens, extract_named_entities(tokens))
    except EmptyQueryError:
        try:
            query = fallback_query(tokens)
        except EmptyQueryError:
            return tokens, []
    return tokens, list(query.terms)


def ranked_doc_ids(
    index: Index,
    claim_text: str,
    model: RetrievalModel,
    variant: str,
    depth: int = 20,
) -> list[str]:
    """Ranked doc ids for one claim under a model and query variant."""
    tokens, terms = _claim_terms(claim_text, variant)
    if not terms:
        return []
    hits = search(index, terms, model, depth)
    if variant == VARIANT_RERANKED and hits:
        titles = {h.doc_id: index.record(h.doc_id).title for h in hits}
        hits = rerank_hits(tokens, hits, titles)
    return [h.doc_id for h in hits]


def run_retrieval_eval(
    index: Index,
    claims: Sequence[FeverClaim],
    models: Sequence[RetrievalModel],
    variants: Sequence[str] = ALL_VARIANTS,
    ks: Sequence[int] = (1, 5, 10, 20),
    depth: int | None = None,
) -> list[RetrievalEvalRow]:
    """One row of R@K values per (model, variant), in input order.

    depth is the retrieval pool size; it defaults to at least 20 so the
    re-ranked variant has candidates to promote even when only R@1 is
    requested."""
    for variant in variants:
        if variant not in ALL_VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
    scored = [c for c in claims if c.evidence]
    if not scored:
        raise ValueError("no claims with gold evidence")
    if depth is None:
        depth = max(max(ks), 20)
    rows = []
    for model in models:
        for variant in variants:
            ranked = [
                ranked_doc_ids(index, c.claim, model, variant, depth) for c in scored
            ]
            gold = [c.evidence for c in scored]
            rows.append(
                RetrievalEvalRow(
                    model=model.name,
                    variant=variant,
                    recall_at={k: recall_at_k(ranked, gold, k) for k in ks},
                )
            )
    return rows


def format_eval_table(rows: Sequence[RetrievalEvalRow]) -> str:
    """Aligned text table of R@K values."""
    if not rows:
        return "(no rows)"
    ks = sorted(rows[0].recall_at)
    headers = ["model", "variant"] + [f"R@{k}" for k in ks]
    body = [
        [row.model, row.variant] + [f"{row.recall_at[k]:.4f}" for k in ks]
        for row in rows
    ]
    widths = [
        max(len(headers[i]), max(len(line[i]) for line in body))
        for i in range(len(headers))
    ]
    def fmt(line):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line))
    rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
    return "\n".join([fmt(headers), rule] + [fmt(line) for line in body])


def eval_table_csv(rows: Sequence[RetrievalEvalRow]) -> str:
    buf = io.StringIO()
    ks = sorted(rows[0].recall_at) if rows else []
    writer = csv.writer(buf)
    writer.writerow(["model", "variant"] + [f"recall_at_{k}" for k in ks])
    for row in rows:
        writer.writerow(
            [row.model, row.variant] + [f"{row.recall_at[k]:.6f}" for k in ks]
        )
    return buf.getvalue()


def format_metrics(metrics: Metrics) -> str:
    lines = [
        f"accuracy     {metrics.accuracy:.4f}",
        f"macro F1     {metrics.f1_macro:.4f}",
    ]
    for label in VERDICT_LABELS:
        lines.append(f"F1({label})      {metrics.f1[label]:.4f}")
    lines.append("confusion (gold rows x pred cols: " + " ".join(VERDICT_LABELS) + ")")
    for g in VERDICT_LABELS:
        row = " ".join(f"{metrics.confusion[g][p]:5d}" for p in VERDICT_LABELS)
        lines.append(f"  {g}  {row}")
    return "\n".join(lines)


def run_pipeline_eval(
    checker: FactChecker,
    claims: Sequence[FeverClaim],
    progress: Callable[[int, int], None] | None = None,
) -> tuple[Metrics, list[str]]:
    """Run the full pipeline over claims and score the verdicts."""
    preds = []
    for i, claim in enumerate(claims):
        preds.append(checker.check(claim.claim).verdict.label)
        if progress is not None:
            progress(i + 1, len(claims))
    metrics = classification_metrics(preds, [c.label for c in claims])
    return metrics, preds
