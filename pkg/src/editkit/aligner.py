"""Word-level alignment between source and target token sequences.

The dynamic program scores keep=0, transform=0.5 (including hyphen split and
two-token merges), replace=1, delete=1, and 1 per inserted token. Ties are
broken by a fixed operation priority (keep > transform > replace > delete >
insert) walking back from the end of both sequences, which places leftover
insertions as far left as possible.

The resulting plan has one tag per source token plus a virtual start position
(index 0) that can only carry KEEP or APPEND. Consecutive inserted target
tokens are folded into one insertion slot on the nearest preceding position
that emits output; transform hosts are re-encoded as REPLACE when an insertion
lands on them, since transform tags cannot carry slots.
"""

from dataclasses import dataclass

from .errors import PlanShapeMismatch
from .tags import APPEND, DELETE, KEEP, MERGED, REPLACE, EditTag, TagSet, carries_slot
from .transforms import apply_transform, detect_merge, detect_split, detect_transform

__all__ = ["EditPlan", "align", "apply_plan"]

_TRANSFORM_COST = 0.5


@dataclass
class EditPlan:
    """Tags for the virtual start plus each source token, and insertion slots."""

    tags: list[EditTag]
    insertions: dict[int, list[str]]
    cost: float = 0.0

    def __len__(self) -> int:
        return len(self.tags)


class _Record:
    __slots__ = ("kind", "slot")

    def __init__(self, kind: str, slot: list[str] | None = None):
        self.kind = kind
        self.slot = slot


def align(source: list[str], target: list[str], tag_set: TagSet) -> EditPlan:
    """Compute a minimal-cost edit plan turning source into target."""
    m, n = len(source), len(target)
    big = float("inf")
    cost = [[big] * (n + 1) for _ in range(m + 1)]
    cost[0][0] = 0.0
    for i in range(m + 1):
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            best = big
            if i >= 1 and j >= 1:
                if source[i - 1] == target[j - 1]:
                    best = min(best, cost[i - 1][j - 1])
                elif detect_transform(source[i - 1], target[j - 1], tag_set):
                    best = min(best, cost[i - 1][j - 1] + _TRANSFORM_COST)
                best = min(best, cost[i - 1][j - 1] + 1.0)
            if i >= 2 and j >= 1 and detect_merge(source[i - 2], source[i - 1], target[j - 1], tag_set):
                best = min(best, cost[i - 2][j - 1] + _TRANSFORM_COST)
            if i >= 1 and j >= 2 and detect_split(source[i - 1], target[j - 2], target[j - 1], tag_set):
                best = min(best, cost[i - 1][j - 2] + _TRANSFORM_COST)
            if i >= 1:
                best = min(best, cost[i - 1][j] + 1.0)
            if j >= 1:
                best = min(best, cost[i][j - 1] + 1.0)
            cost[i][j] = best

    ops = _backtrack(source, target, cost, tag_set)
    return _build_plan(source, target, ops, cost[m][n])


def _backtrack(source, target, cost, tag_set):
    ops: list[tuple] = []
    i, j = len(source), len(target)
    while i > 0 or j > 0:
        here = cost[i][j]
        if i >= 1 and j >= 1 and source[i - 1] == target[j - 1] and cost[i - 1][j - 1] == here:
            ops.append(("keep",))
            i, j = i - 1, j - 1
            continue
        if i >= 1 and j >= 1 and cost[i - 1][j - 1] + _TRANSFORM_COST == here:
            kind = detect_transform(source[i - 1], target[j - 1], tag_set)
            if kind:
                ops.append(("trans", kind))
                i, j = i - 1, j - 1
                continue
        if i >= 2 and j >= 1 and cost[i - 2][j - 1] + _TRANSFORM_COST == here:
            kind = detect_merge(source[i - 2], source[i - 1], target[j - 1], tag_set)
            if kind:
                ops.append(("merge", kind))
                i, j = i - 2, j - 1
                continue
        if i >= 1 and j >= 2 and cost[i - 1][j - 2] + _TRANSFORM_COST == here:
            kind = detect_split(source[i - 1], target[j - 2], target[j - 1], tag_set)
            if kind:
                ops.append(("split", kind))
                i, j = i - 1, j - 2
                continue
        if i >= 1 and j >= 1 and cost[i - 1][j - 1] + 1.0 == here:
            ops.append(("replace",))
            i, j = i - 1, j - 1
            continue
        if i >= 1 and cost[i - 1][j] + 1.0 == here:
            ops.append(("delete",))
            i -= 1
            continue
        if j >= 1 and cost[i][j - 1] + 1.0 == here:
            ops.append(("insert",))
            j -= 1
            continue
        raise AssertionError("alignment backtrack lost the optimal path")
    ops.reverse()
    return ops


def _emitted_tokens(rec: _Record, pos: int, source: list[str]) -> list[str]:
    token = source[pos - 1]
    if rec.kind == KEEP:
        return [token]
    if rec.kind.startswith("MERGE_"):
        return [apply_transform(rec.kind, token, source[pos])]
    out = apply_transform(rec.kind, token)
    return list(out) if isinstance(out, tuple) else [out]


def _build_plan(source, target, ops, total_cost) -> EditPlan:
    m = len(source)
    records = [_Record(KEEP)] + [None] * m  # type: ignore[list-item]
    i = j = 0
    host: int | None = None  # index of the last output-emitting position
    for op in ops:
        name = op[0]
        if name == "keep":
            i += 1
            j += 1
            records[i] = _Record(KEEP)
            host = i
        elif name == "trans":
            i += 1
            j += 1
            kind = op[1]
            slot = [target[j - 1]] if kind == "TRANSFORM_VERB" else None
            records[i] = _Record(kind, slot)
            host = i
        elif name == "merge":
            records[i + 1] = _Record(op[1])
            records[i + 2] = _Record(MERGED)
            i += 2
            j += 1
            host = i - 1
        elif name == "split":
            i += 1
            j += 2
            records[i] = _Record(op[1])
            host = i
        elif name == "replace":
            i += 1
            j += 1
            records[i] = _Record(REPLACE, [target[j - 1]])
            host = i
        elif name == "delete":
            i += 1
            records[i] = _Record(DELETE)
        else:  # insert
            j += 1
            _attach_insert(records, host, target[j - 1], source)

    tags: list[EditTag] = []
    insertions: dict[int, list[str]] = {}
    next_slot = 0
    for rec in records:
        if rec.slot is not None:
            insertions[next_slot] = rec.slot
            tags.append(EditTag(rec.kind, next_slot))
            next_slot += 1
        else:
            tags.append(EditTag(rec.kind))
    return EditPlan(tags=tags, insertions=insertions, cost=total_cost)


def _attach_insert(records, host: int | None, token: str, source: list[str]) -> None:
    if host is None:
        start = records[0]
        if start.slot is None:
            records[0] = _Record(APPEND, [token])
        else:
            start.slot.append(token)
        return
    rec = records[host]
    if rec.slot is not None:
        rec.slot.append(token)
        return
    if rec.kind == KEEP:
        records[host] = _Record(APPEND, [token])
        return
    # Transform hosts cannot carry slots: re-encode as a replacement covering
    # the transform's own output plus the inserted token.
    emitted = _emitted_tokens(rec, host, source)
    records[host] = _Record(REPLACE, emitted + [token])
    if host < len(records) - 1 and records[host + 1] is not None and records[host + 1].kind == MERGED:
        records[host + 1] = _Record(DELETE)


def apply_plan(source: list[str], plan: EditPlan) -> list[str]:
    """Replay an edit plan over its source, reproducing the aligned target."""
    if len(plan.tags) != len(source) + 1:
        raise PlanShapeMismatch(
            f"plan has {len(plan.tags)} tags for {len(source)} source tokens"
        )
    out: list[str] = []
    start = plan.tags[0]
    if start.kind == APPEND:
        out.extend(plan.insertions[start.slot])
    elif start.kind != KEEP:
        raise PlanShapeMismatch(f"virtual start cannot carry {start.kind}")

    pos = 1
    while pos <= len(source):
        tag = plan.tags[pos]
        token = source[pos - 1]
        kind = tag.kind
        if kind == KEEP:
            out.append(token)
        elif kind == DELETE:
            pass
        elif kind == MERGED:
            raise PlanShapeMismatch("MERGED marker without a preceding merge tag")
        elif kind == REPLACE or kind == "TRANSFORM_VERB":
            out.extend(plan.insertions[tag.slot])
        elif kind == APPEND:
            out.append(token)
            out.extend(plan.insertions[tag.slot])
        elif kind.startswith("MERGE_"):
            if pos == len(source) or plan.tags[pos + 1].kind != MERGED:
                raise PlanShapeMismatch("merge tag must be followed by its MERGED marker")
            out.append(apply_transform(kind, token, source[pos]))
            pos += 1
        else:
            result = apply_transform(kind, token)
            out.extend(result) if isinstance(result, tuple) else out.append(result)
        pos += 1
    return out
