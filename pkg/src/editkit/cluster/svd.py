"""Rank-truncated SVD reduction of embedding matrices.

Backed by LAPACK via numpy; a convergence failure surfaces as NoConvergence.
Centering is configurable: the pipeline centers before reduction, while raw
singular values of the uncentered matrix remain available for fixtures.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import NoConvergence

__all__ = ["SvdModel", "truncated_svd"]


@dataclass
class SvdModel:
    scores: np.ndarray            # (n, r) = U_r Sigma_r
    components: np.ndarray        # (r, d) right singular vectors
    singular_values: np.ndarray   # (r,) non-increasing
    mean: np.ndarray | None       # (d,) when centered

    def transform(self, X: np.ndarray) -> np.ndarray:
        """Project new rows into the reduced space."""
        X = np.asarray(X, dtype=np.float64)
        if self.mean is not None:
            X = X - self.mean
        return X @ self.components.T

    def reconstruct(self) -> np.ndarray:
        out = self.scores @ self.components
        if self.mean is not None:
            out = out + self.mean
        return out


def truncated_svd(X: np.ndarray, r: int, center: bool = True) -> SvdModel:
    X = np.asarray(X, dtype=np.float64)
    n, d = X.shape
    if not 1 <= r <= min(n, d):
        raise ValueError(f"rank {r} out of range for a {n}x{d} matrix")
    mean = X.mean(axis=0) if center else None
    work = X - mean if center else X
    try:
        u, s, vt = np.linalg.svd(work, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(0) from exc
    # canonical signs: largest-magnitude component of each direction is >= 0
    for idx in range(min(n, d)):
        pivot = np.argmax(np.abs(vt[idx]))
        if vt[idx, pivot] < 0:
            vt[idx] = -vt[idx]
            u[:, idx] = -u[:, idx]
    return SvdModel(
        scores=u[:, :r] * s[:r],
        components=vt[:r],
        singular_values=s[:r].copy(),
        mean=mean,
    )
