"""Encode tagging/generation examples into padded id arrays."""

from dataclasses import dataclass

import numpy as np

from ..masking import GenerationExample, TaggingExample, PAD
from ..tags import MERGED, TagSet
from .config import EncoderConfig
from .vocab import Vocabulary

__all__ = ["EncodedPool", "tag_label_index", "encode_tagging", "encode_generation", "build_pools"]


@dataclass
class EncodedPool:
    token_ids: np.ndarray  # (N, S) int64
    attn_mask: np.ndarray  # (N, S) float32
    labels: np.ndarray     # (N, S) int64, -1 = unlabeled
    dropped: int = 0


def tag_label_index(tag_set: TagSet) -> dict[str, int]:
    """Stable label ids: tag-set order, then the internal MERGED marker."""
    index = {tag: i for i, tag in enumerate(tag_set.tags)}
    index[MERGED] = len(tag_set.tags)
    return index


def encode_tagging(
    example: TaggingExample, vocab: Vocabulary, tag_index: dict[str, int], max_len: int
) -> tuple[list[int], list[int]] | None:
    ids = [vocab.cls_id] + vocab.encode(example.source_tokens)
    if len(ids) > max_len:
        return None
    labels = [tag_index[t] for t in example.tag_labels]
    return ids, labels


def encode_generation(
    example: GenerationExample, vocab: Vocabulary, max_len: int
) -> tuple[list[int], list[int]] | None:
    ids = [vocab.cls_id] + vocab.encode(example.tokens)
    if len(ids) > max_len:
        return None
    labels = [-1] * len(ids)
    gold = iter(example.gold)
    for pos, tok in enumerate(example.tokens):
        if tok == "[MASK]":
            target = next(gold)
            labels[pos + 1] = vocab.pad_id if target == PAD else vocab.index.get(
                target, vocab.unk_id
            )
    return ids, labels


def _pad_pool(rows: list[tuple[list[int], list[int]]], pad_id: int, dropped: int) -> EncodedPool:
    if not rows:
        return EncodedPool(
            token_ids=np.zeros((0, 1), dtype=np.int64),
            attn_mask=np.zeros((0, 1), dtype=np.float32),
            labels=np.full((0, 1), -1, dtype=np.int64),
            dropped=dropped,
        )
    width = max(len(ids) for ids, _ in rows)
    n = len(rows)
    token_ids = np.full((n, width), pad_id, dtype=np.int64)
    attn_mask = np.zeros((n, width), dtype=np.float32)
    labels = np.full((n, width), -1, dtype=np.int64)
    for i, (ids, labs) in enumerate(rows):
        token_ids[i, : len(ids)] = ids
        attn_mask[i, : len(ids)] = 1.0
        labels[i, : len(labs)] = labs
    return EncodedPool(token_ids=token_ids, attn_mask=attn_mask, labels=labels, dropped=dropped)


def build_pools(
    examples_by_intent: dict[str, list],
    vocab: Vocabulary,
    tag_set: TagSet,
    config: EncoderConfig,
) -> dict[tuple[int, str], EncodedPool]:
    """Per-(task, mode) padded pools from (TaggingExample, GenerationExample) pairs."""
    tag_index = tag_label_index(tag_set)
    pools: dict[tuple[int, str], EncodedPool] = {}
    for intent, pairs in examples_by_intent.items():
        task = config.intent_id(intent)
        tag_rows, gen_rows = [], []
        dropped = 0
        for tagging, generation in pairs:
            enc_tag = encode_tagging(tagging, vocab, tag_index, config.max_seq_len)
            enc_gen = encode_generation(generation, vocab, config.max_seq_len)
            if enc_tag is None or enc_gen is None:
                dropped += 1
                continue
            tag_rows.append(enc_tag)
            gen_rows.append(enc_gen)
        pools[(task, "tag")] = _pad_pool(tag_rows, vocab.pad_id, dropped)
        pools[(task, "gen")] = _pad_pool(gen_rows, vocab.pad_id, dropped)
    return pools
