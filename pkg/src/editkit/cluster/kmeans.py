"""Lloyd's algorithm with k-means++ initialization, fully deterministic per seed."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateData

__all__ = ["ClusterModel", "kmeans_pp_init", "kmeans_fit"]


@dataclass
class ClusterModel:
    centroids: np.ndarray          # (k, d)
    assignments: np.ndarray        # (n,)
    inertia: float                 # recomputable from centroids + assignments
    seed: int
    n_iter: int
    inertia_history: list[float] = field(default_factory=list)

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Nearest centroid per row, ties resolved to the lowest index."""
        return _sq_dists(np.asarray(X, dtype=np.float64), self.centroids).argmin(axis=1)


def _sq_dists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - C[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _check_data(X: np.ndarray, k: int) -> None:
    if X.shape[0] < k:
        raise DegenerateData(f"{X.shape[0]} points cannot form {k} clusters")
    if len(np.unique(X, axis=0)) < k:
        raise DegenerateData(f"fewer than {k} distinct points")


def kmeans_pp_init(X: np.ndarray, k: int, seed: int) -> np.ndarray:
    """D^2-weighted seeding: uniform first pick, then proportional to squared
    distance from the nearest already-chosen centroid."""
    X = np.asarray(X, dtype=np.float64)
    _check_data(X, k)
    rng = np.random.Generator(np.random.PCG64(seed))
    n = X.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = _sq_dists(X, X[chosen])[:, 0]
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            raise DegenerateData("D^2 weights vanished before k centroids were chosen")
        probs = d2 / total
        pick = int(np.searchsorted(np.cumsum(probs), rng.random(), side="right"))
        pick = min(pick, n - 1)
        chosen.append(pick)
        d2 = np.minimum(d2, _sq_dists(X, X[[pick]])[:, 0])
    return X[chosen].copy()


def _repair_empty(labels: np.ndarray, d2: np.ndarray, k: int) -> np.ndarray:
    present = set(labels.tolist())
    for cluster in range(k):
        if cluster in present:
            continue
        assigned = d2[np.arange(len(labels)), labels]
        victim = int(assigned.argmax())
        labels[victim] = cluster
        present.add(cluster)
    return labels


def kmeans_fit(
    X: np.ndarray,
    k: int,
    seed: int,
    max_iter: int = 300,
    tol: float = 1e-6,
) -> ClusterModel:
    """Run Lloyd iterations from the k-means++ seeding until the inertia
    improvement drops below ``tol`` or ``max_iter`` is reached."""
    X = np.asarray(X, dtype=np.float64)
    _check_data(X, k)
    centroids = kmeans_pp_init(X, k, seed)
    history: list[float] = []
    labels = np.zeros(X.shape[0], dtype=np.int64)
    prev = np.inf
    iterations = 0
    for iteration in range(max_iter):
        iterations = iteration + 1
        d2 = _sq_dists(X, centroids)
        labels = d2.argmin(axis=1)
        inertia = float(d2[np.arange(X.shape[0]), labels].sum())
        history.append(inertia)
        labels = _repair_empty(labels, d2, k)
        if prev - inertia < tol:
            break
        prev = inertia
        if iteration < max_iter - 1:
            centroids = np.stack([X[labels == c].mean(axis=0) for c in range(k)])

    final_d2 = _sq_dists(X, centroids)
    final_inertia = float(final_d2[np.arange(X.shape[0]), labels].sum())
    return ClusterModel(
        centroids=centroids,
        assignments=labels,
        inertia=final_inertia,
        seed=seed,
        n_iter=iterations,
        inertia_history=history,
    )
