"""Cross-entropy losses for the tagging and generation heads."""

import numpy as np

__all__ = ["tagging_loss", "generation_loss", "cross_entropy_with_grad"]


def cross_entropy_with_grad(logits: np.ndarray, labels: np.ndarray):
    """Mean cross-entropy over positions with label >= 0, plus dL/dlogits.

    Positions labeled -1 (padding, unlabeled) contribute nothing.
    """
    counted = labels >= 0
    n = int(counted.sum())
    if n == 0:
        return 0.0, np.zeros_like(logits)
    shifted = logits - logits.max(axis=-1, keepdims=True)
    expd = np.exp(shifted)
    total = expd.sum(axis=-1, keepdims=True)
    log_probs = shifted - np.log(total)
    safe_labels = np.where(counted, labels, 0)
    picked = np.take_along_axis(log_probs, safe_labels[..., None], axis=-1)[..., 0]
    loss = float(-(picked * counted).sum() / n)

    dlogits = expd / total
    onehot_rows = np.zeros_like(dlogits)
    np.put_along_axis(onehot_rows, safe_labels[..., None], 1.0, axis=-1)
    dlogits = (dlogits - onehot_rows) * counted[..., None] / n
    return loss, dlogits.astype(logits.dtype)


def tagging_loss(tag_logits: np.ndarray, gold_tags: np.ndarray) -> float:
    """Mean cross-entropy over real token positions (gold -1 = excluded)."""
    loss, _ = cross_entropy_with_grad(tag_logits, gold_tags)
    return loss


def generation_loss(gen_logits: np.ndarray, gold_mask_tokens: np.ndarray) -> float:
    """Mean cross-entropy over [MASK] positions; [PAD] is a real target class."""
    loss, _ = cross_entropy_with_grad(gen_logits, gold_mask_tokens)
    return loss
