"""Word-level vocabulary with dedicated sentinel tokens."""

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..masking import SENTINELS

__all__ = ["Vocabulary", "build_vocab", "PAD_TOKEN", "UNK_TOKEN", "CLS_TOKEN"]

PAD_TOKEN = "[PAD]"
UNK_TOKEN = "[UNK]"
CLS_TOKEN = "[CLS]"

# [PAD] doubles as sequence padding and the generation no-op target class.
SPECIAL_TOKENS = (PAD_TOKEN, UNK_TOKEN, CLS_TOKEN) + tuple(
    s for s in SENTINELS if s != PAD_TOKEN
)


@dataclass
class Vocabulary:
    tokens: list[str]

    def __post_init__(self):
        self.index = {tok: i for i, tok in enumerate(self.tokens)}
        self.pad_id = self.index[PAD_TOKEN]
        self.unk_id = self.index[UNK_TOKEN]
        self.cls_id = self.index[CLS_TOKEN]
        self.mask_id = self.index["[MASK]"]

    def __len__(self) -> int:
        return len(self.tokens)

    def encode(self, tokens: Iterable[str]) -> list[int]:
        return [self.index.get(tok, self.unk_id) for tok in tokens]

    def decode(self, ids: Iterable[int]) -> list[str]:
        return [self.tokens[i] for i in ids]


def build_vocab(token_streams: Iterable[Iterable[str]], max_size: int = 8000) -> Vocabulary:
    """Frequency-sorted vocabulary (ties broken lexicographically)."""
    counts = Counter()
    for stream in token_streams:
        counts.update(stream)
    budget = max_size - len(SPECIAL_TOKENS)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:budget]
    words = [tok for tok, _ in ranked if tok not in SPECIAL_TOKENS]
    return Vocabulary(tokens=list(SPECIAL_TOKENS) + words)
