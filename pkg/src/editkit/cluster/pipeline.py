"""End-to-end clustering: reduce, fit, label, and export per-intent corpora."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DimMismatch
from ..ingest.pairs import SentencePair
from ..jsonl import write_jsonl
from ..tokenizer import tokenize
from .embeddings import EmbeddingMatrix, hashed_bow_embed
from .kmeans import ClusterModel, kmeans_fit
from .labeling import INTENT_NAMES, label_clusters, load_seed_prompts
from .svd import SvdModel, truncated_svd

__all__ = ["ClusterOutcome", "cluster_pipeline", "export_corpus", "build_cluster_report"]

_STOPWORDS = {
    "the", "a", "an", "of", "to", "and", "in", "for", "on", "with", "is",
    "are", "was", "be", "it", "this", "that", "as", "at", "by", "from", "or",
}


@dataclass
class ClusterOutcome:
    model: ClusterModel
    svd: SvdModel
    labels: dict[int, str]
    report: dict
    counts: dict[str, int]


def build_cluster_report(model: ClusterModel, labels: dict[int, str], comments: list[str]) -> dict:
    """Per-cluster size, intent label, and most frequent non-stopword terms."""
    report: dict = {}
    k = model.centroids.shape[0]
    for cluster in range(k):
        members = [comments[i] for i in np.flatnonzero(model.assignments == cluster)]
        freq: dict[str, int] = {}
        for comment in members:
            for token in tokenize(comment.lower()):
                if token.isalpha() and token not in _STOPWORDS:
                    freq[token] = freq.get(token, 0) + 1
        top = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:6]
        report[str(cluster)] = {
            "size": len(members),
            "label": labels.get(cluster, "discarded"),
            "top_terms": [term for term, _ in top],
        }
    return report


def export_corpus(
    pairs: list[SentencePair],
    assignments: np.ndarray,
    labels: dict[int, str],
    out_dir: str | Path,
) -> dict[str, int]:
    """Write labeled pairs to per-intent JSONL files; discarded clusters are
    omitted. All four canonical intent files exist even when empty."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    buckets: dict[str, list[dict]] = {intent: [] for intent in INTENT_NAMES}
    for intent in labels.values():
        buckets.setdefault(intent, [])
    for pair, cluster in zip(pairs, assignments):
        intent = labels.get(int(cluster))
        if intent is None:
            continue
        buckets[intent].append({
            "source": pair.source,
            "target": pair.target,
            "comment": pair.comment,
            "intent": intent,
        })
    counts = {}
    for intent, records in buckets.items():
        write_jsonl(out_dir / f"{intent}.jsonl", records)
        counts[intent] = len(records)
    return counts


def cluster_pipeline(
    pairs: list[SentencePair],
    embeddings: EmbeddingMatrix | None,
    out_dir: str | Path,
    k: int = 10,
    svd_dim: int = 100,
    seed: int = 0,
    center: bool = True,
    prompts: dict[str, list[str]] | None = None,
    prompt_embeddings: EmbeddingMatrix | None = None,
) -> ClusterOutcome:
    """Cluster comments, label intents via seed prompts, export corpora.

    With no external embedding file the hashed bag-of-words fallback embeds
    both comments and prompts; external comment embeddings require external
    prompt embeddings in the same space.
    """
    comments = [pair.comment for pair in pairs]
    prompts = prompts if prompts is not None else load_seed_prompts()
    prompt_items = [(intent, p) for intent in prompts for p in prompts[intent]]

    if embeddings is None:
        embeddings = hashed_bow_embed(comments)
        prompt_matrix = hashed_bow_embed([text for _, text in prompt_items])
    else:
        if prompt_embeddings is None:
            raise DimMismatch("external comment embeddings need --prompt-embeddings in the same space")
        prompt_matrix = prompt_embeddings
    if embeddings.values.shape[0] != len(pairs):
        raise DimMismatch(
            f"{embeddings.values.shape[0]} embedding rows for {len(pairs)} pairs"
        )

    rank = min(svd_dim, embeddings.values.shape[0], embeddings.values.shape[1])
    svd = truncated_svd(embeddings.values, rank, center=center)
    reduced = svd.scores
    model = kmeans_fit(reduced, k, seed)

    prompt_reduced = svd.transform(prompt_matrix.values)
    prompt_vectors = [
        (intent, prompt_reduced[i]) for i, (intent, _) in enumerate(prompt_items)
    ]
    labels = label_clusters(model.centroids, prompt_vectors)
    counts = export_corpus(pairs, model.assignments, labels, out_dir)
    report = build_cluster_report(model, labels, comments)
    return ClusterOutcome(model=model, svd=svd, labels=labels, report=report, counts=counts)
