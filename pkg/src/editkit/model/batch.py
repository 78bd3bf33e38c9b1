"""Training/inference batch container."""

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatch

__all__ = ["Batch"]


@dataclass
class Batch:
    token_ids: np.ndarray   # (B, S) int64
    attn_mask: np.ndarray   # (B, S) 1.0 for real tokens, 0.0 for padding
    intent: int             # task index r
    mode: str               # "tag" or "gen"
    labels: np.ndarray | None = None  # (B, S) int64, -1 at unlabeled positions

    def validate(self, config) -> None:
        b, s = self.token_ids.shape
        if self.attn_mask.shape != (b, s):
            raise ShapeMismatch("attention mask shape differs from token ids")
        if self.labels is not None and self.labels.shape != (b, s):
            raise ShapeMismatch("labels shape differs from token ids")
        if s > config.max_seq_len:
            raise ShapeMismatch(f"sequence length {s} exceeds max {config.max_seq_len}")
        if not 0 <= self.intent < config.num_intents:
            raise ShapeMismatch(f"intent {self.intent} out of range")
        if self.mode not in ("tag", "gen"):
            raise ShapeMismatch(f"unknown mode {self.mode!r}")
        if int(self.token_ids.max(initial=0)) >= config.vocab_size:
            raise ShapeMismatch("token id out of vocabulary range")
