"""Render edit plans into masked generator inputs and training examples."""

from dataclasses import dataclass

from .errors import InsertionTooLong
from .aligner import EditPlan, align
from .tags import APPEND, DELETE, KEEP, MERGED, REPLACE, TagSet
from .tokenizer import tokenize
from .transforms import apply_transform

__all__ = [
    "MASK", "PAD", "DELETE_OPEN", "DELETE_CLOSE", "VERB_OPEN", "VERB_CLOSE",
    "SENTINELS", "MaskedInput", "render_masked_input",
    "TaggingExample", "GenerationExample", "plan_to_examples",
]

MASK = "[MASK]"
PAD = "[PAD]"
DELETE_OPEN = "[DELETE]"
DELETE_CLOSE = "[/DELETE]"
VERB_OPEN = "[TRANSFORM_VERB]"
VERB_CLOSE = "[/TRANSFORM_VERB]"

SENTINELS = (MASK, PAD, DELETE_OPEN, DELETE_CLOSE, VERB_OPEN, VERB_CLOSE)


@dataclass
class MaskedInput:
    """Generator-side view of an edit: mask sites plus per-mask gold targets."""

    tokens: list[str]
    gold: list[str]  # one entry per [MASK] token, [PAD] beyond the insertion


@dataclass
class TaggingExample:
    source_tokens: list[str]
    tag_labels: list[str]  # virtual start first, then one label per token
    intent: str = ""


@dataclass
class GenerationExample:
    tokens: list[str]
    gold: list[str]
    intent: str = ""


def _slot_tokens(plan: EditPlan, slot: int | None) -> list[str]:
    if slot is None:
        return []
    return plan.insertions.get(slot, [])


def render_masked_input(source: list[str], plan: EditPlan, n_masks: int) -> MaskedInput:
    """Expand a plan into the generation input.

    Every REPLACE/APPEND/TRANSFORM_VERB site contributes exactly ``n_masks``
    [MASK] tokens; replaced and deleted source tokens stay visible wrapped in
    [DELETE]...[/DELETE], wrong-tense verbs in [TRANSFORM_VERB] wrappers. Gold
    targets are the slot tokens padded with [PAD] up to the mask budget.
    """
    if n_masks < 1:
        raise ValueError("n_masks must be >= 1")
    tokens: list[str] = []
    gold: list[str] = []

    def emit_masks(slot_tokens: list[str]) -> None:
        if len(slot_tokens) > n_masks:
            raise InsertionTooLong(
                f"insertion of {len(slot_tokens)} tokens exceeds mask budget {n_masks}"
            )
        tokens.extend([MASK] * n_masks)
        gold.extend(slot_tokens + [PAD] * (n_masks - len(slot_tokens)))

    start = plan.tags[0]
    if start.kind == APPEND:
        emit_masks(_slot_tokens(plan, start.slot))

    pos = 1
    while pos < len(plan.tags):
        tag = plan.tags[pos]
        token = source[pos - 1]
        kind = tag.kind
        if kind == KEEP:
            tokens.append(token)
        elif kind == DELETE:
            tokens.extend([DELETE_OPEN, token, DELETE_CLOSE])
        elif kind == MERGED:
            pass  # consumed by the preceding merge
        elif kind == REPLACE:
            emit_masks(_slot_tokens(plan, tag.slot))
            tokens.extend([DELETE_OPEN, token, DELETE_CLOSE])
        elif kind == APPEND:
            tokens.append(token)
            emit_masks(_slot_tokens(plan, tag.slot))
        elif kind == "TRANSFORM_VERB":
            emit_masks(_slot_tokens(plan, tag.slot))
            tokens.extend([VERB_OPEN, token, VERB_CLOSE])
        elif kind.startswith("MERGE_"):
            tokens.append(apply_transform(kind, token, source[pos]))
            pos += 1
        else:
            result = apply_transform(kind, token)
            tokens.extend(result) if isinstance(result, tuple) else tokens.append(result)
        pos += 1
    return MaskedInput(tokens=tokens, gold=gold)


def plan_to_examples(
    source: str | list[str],
    target: str | list[str],
    intent: str,
    tag_set: TagSet,
    n_masks: int,
) -> tuple[TaggingExample, GenerationExample] | None:
    """Align one sentence pair and emit tagging + generation examples.

    Returns None (pair dropped) when any single insertion would need more
    than ``n_masks`` tokens.
    """
    src = tokenize(source) if isinstance(source, str) else source
    tgt = tokenize(target) if isinstance(target, str) else target
    plan = align(src, tgt, tag_set)
    if any(len(toks) > n_masks for toks in plan.insertions.values()):
        return None
    masked = render_masked_input(src, plan, n_masks)
    tagging = TaggingExample(
        source_tokens=src,
        tag_labels=[tag.kind for tag in plan.tags],
        intent=intent,
    )
    generation = GenerationExample(tokens=masked.tokens, gold=masked.gold, intent=intent)
    return tagging, generation
