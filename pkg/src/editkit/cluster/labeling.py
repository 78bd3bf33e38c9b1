"""Seeded intent labeling of clusters.

Each seed prompt lands on its nearest centroid; a cluster earns an intent
label when a strict majority of that intent's prompts land there. Intents
whose prompts scatter raise UnlabeledIntent, and when two intents claim the
same cluster the one with the smaller mean prompt distance wins while the
loser raises.
"""

import json
from collections import Counter
from importlib import resources

import numpy as np

from ..errors import UnlabeledIntent

__all__ = ["INTENT_NAMES", "load_seed_prompts", "label_clusters"]

INTENT_NAMES = ("fluency", "readability", "simplification", "neutralization")


def load_seed_prompts() -> dict[str, list[str]]:
    text = resources.files("editkit.data").joinpath("seed_prompts.json").read_text("utf-8")
    return json.loads(text)


def label_clusters(
    centroids: np.ndarray,
    prompt_vectors: list[tuple[str, np.ndarray]],
) -> dict[int, str]:
    """Map cluster id to intent name; unlisted clusters are discarded."""
    if not prompt_vectors:
        return {}
    centroids = np.asarray(centroids, dtype=np.float64)
    placements: dict[str, list[tuple[int, float]]] = {}
    for intent, vec in prompt_vectors:
        diff = centroids - np.asarray(vec, dtype=np.float64)[None, :]
        d2 = np.einsum("kd,kd->k", diff, diff)
        cluster = int(d2.argmin())
        placements.setdefault(intent, []).append((cluster, float(d2[cluster])))

    claims: dict[int, list[tuple[str, float]]] = {}
    for intent, placed in placements.items():
        counts = Counter(cluster for cluster, _ in placed)
        cluster, votes = counts.most_common(1)[0]
        if votes * 2 <= len(placed):
            raise UnlabeledIntent(intent)
        dists = [d for c, d in placed if c == cluster]
        claims.setdefault(cluster, []).append((intent, sum(dists) / len(dists)))

    labels: dict[int, str] = {}
    for cluster, contenders in claims.items():
        contenders.sort(key=lambda item: (item[1], item[0]))
        labels[cluster] = contenders[0][0]
        if len(contenders) > 1:
            raise UnlabeledIntent(contenders[1][0])
    return labels
