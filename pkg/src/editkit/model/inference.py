"""Two-pass inference: predict tags, infill masked insertions, apply the plan."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..aligner import EditPlan, apply_plan
from ..errors import InapplicableTransform, UnknownIntent
from ..masking import MASK, PAD, SENTINELS, render_masked_input
from ..tags import APPEND, DELETE, KEEP, MERGED, REPLACE, EditTag, carries_slot, get_tag_set
from ..tokenizer import detokenize, tokenize
from ..transforms import apply_transform
from .batch import Batch
from .checkpoint import load_checkpoint, save_checkpoint
from .config import EncoderConfig
from .data import tag_label_index
from .encoder import forward
from .vocab import CLS_TOKEN, UNK_TOKEN, Vocabulary

__all__ = ["EditModel", "predict_edit", "edit_iterative"]


@dataclass
class EditModel:
    config: EncoderConfig
    params: dict
    vocab: Vocabulary

    def save(self, path: str | Path) -> None:
        save_checkpoint(path, self.config, self.params, self.vocab)

    @classmethod
    def load(cls, path: str | Path) -> "EditModel":
        config, params, vocab = load_checkpoint(path)
        return cls(config=config, params=params, vocab=vocab)

    def intent_id(self, intent: int | str) -> int:
        if isinstance(intent, str):
            if intent not in self.config.intent_names:
                raise UnknownIntent(f"intent {intent!r}; known: {self.config.intent_names}")
            return self.config.intent_names.index(intent)
        if not 0 <= intent < self.config.num_intents:
            raise UnknownIntent(f"intent id {intent} out of range")
        return int(intent)


def _single_batch(model: EditModel, tokens: list[str], intent: int, mode: str) -> Batch:
    ids = np.asarray([[model.vocab.cls_id] + model.vocab.encode(tokens)], dtype=np.int64)
    mask = np.ones_like(ids, dtype=np.float32)
    return Batch(token_ids=ids, attn_mask=mask, intent=intent, mode=mode)


def _predict_tag_names(model: EditModel, tokens: list[str], intent: int) -> list[str]:
    tag_set = get_tag_set(model.config.tag_set)
    index = tag_label_index(tag_set)
    names = list(index)
    batch = _single_batch(model, tokens, intent, "tag")
    _, logits = forward(model.config, model.params, batch)
    logits = logits[0]
    start_allowed = [index[KEEP], index[APPEND]]
    start = start_allowed[int(np.argmax(logits[0, start_allowed]))]
    rest = logits[1:len(tokens) + 1].argmax(axis=1)
    return [names[start]] + [names[i] for i in rest]


def _normalize_tags(tags: list[str], tokens: list[str]) -> list[str]:
    """Make a predicted tag sequence structurally applicable.

    Merge tags claim the following position; stray MERGED markers and
    inapplicable transforms fall back to KEEP.
    """
    out = list(tags)
    pos = 1
    while pos < len(out):
        kind = out[pos]
        token = tokens[pos - 1]
        if kind.startswith("MERGE_"):
            if pos == len(out) - 1:
                out[pos] = KEEP
            else:
                out[pos + 1] = MERGED
                pos += 2
                continue
        elif kind == MERGED:
            out[pos] = KEEP
        elif kind.startswith("TRANSFORM_") and kind != "TRANSFORM_VERB":
            try:
                apply_transform(kind, token)
            except InapplicableTransform:
                out[pos] = KEEP
        pos += 1
    return out


def _build_plan(tags: list[str]) -> EditPlan:
    plan_tags: list[EditTag] = []
    insertions: dict[int, list[str]] = {}
    slot = 0
    for kind in tags:
        if carries_slot(kind):
            insertions[slot] = []
            plan_tags.append(EditTag(kind, slot))
            slot += 1
        else:
            plan_tags.append(EditTag(kind))
    return EditPlan(tags=plan_tags, insertions=insertions)


def _fill_insertions(model: EditModel, tokens: list[str], plan: EditPlan, intent: int) -> None:
    masked = render_masked_input(tokens, plan, model.config.n_masks)
    if not any(tok == MASK for tok in masked.tokens):
        return
    batch = _single_batch(model, masked.tokens, intent, "gen")
    _, logits = forward(model.config, model.params, batch)
    picks = logits[0].argmax(axis=1)
    predicted: list[str] = []
    for pos, tok in enumerate(masked.tokens):
        if tok == MASK:
            predicted.append(model.vocab.tokens[int(picks[pos + 1])])
    slot_order = [tag.slot for tag in plan.tags if tag.slot is not None]
    n = model.config.n_masks
    for site, slot in enumerate(slot_order):
        window = predicted[site * n:(site + 1) * n]
        plan.insertions[slot] = [
            tok for tok in window
            if tok != PAD and tok != UNK_TOKEN and tok != CLS_TOKEN and tok not in SENTINELS
        ]


def predict_edit(model: EditModel, text: str, intent: int | str) -> str:
    """Tag pass, masked generation pass, then plan application."""
    task = model.intent_id(intent)
    tokens = tokenize(text)
    if not tokens:
        return text
    if len(tokens) + 1 > model.config.max_seq_len:
        return text
    tags = _predict_tag_names(model, tokens, task)
    tags = _normalize_tags(tags, tokens)
    plan = _build_plan(tags)
    _fill_insertions(model, tokens, plan, task)
    for pos, tag in enumerate(plan.tags):
        if tag.kind == "TRANSFORM_VERB" and not plan.insertions.get(tag.slot):
            plan.tags[pos] = EditTag(KEEP)  # no predicted form: keep the verb
    out = apply_plan(tokens, plan)
    return detokenize(out)


def edit_iterative(model: EditModel, text: str, intent: int | str, depth: int) -> str:
    """Apply predict_edit up to ``depth`` times, stopping at a fixed point."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    current = text
    for _ in range(depth):
        nxt = predict_edit(model, current, intent)
        if nxt == current:
            break
        current = nxt
    return current
