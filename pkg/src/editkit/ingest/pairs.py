"""Sentence-pair extraction from revision pairs, plus pair-level filtering."""

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ..metrics.bleu import bleu
from ..tokenizer import tokenize
from .comments import filter_comment
from .dump import RawRevision
from .markup import strip_markup
from .sentences import split_sentences

__all__ = [
    "RevisionPair", "SentencePair", "FilterConfig", "PairDecision",
    "extract_sentence_pairs", "filter_pair", "ingest_pages", "IngestStats",
]


@dataclass
class RevisionPair:
    comment: str
    source_doc: str
    target_doc: str


@dataclass
class SentencePair:
    source: str
    target: str
    comment: str
    intent: str | None = None


@dataclass
class FilterConfig:
    """Pair-filter thresholds; the paper names the signals, not the numbers."""

    bleu_min: float = 0.2
    bleu_max: float = 0.95
    len_ratio: float = 3.0
    comment_sim_max: float = 0.6

    def to_dict(self) -> dict:
        return {
            "bleu_min": self.bleu_min,
            "bleu_max": self.bleu_max,
            "len_ratio": self.len_ratio,
            "comment_sim_max": self.comment_sim_max,
        }


@dataclass
class PairDecision:
    keep: bool
    reason: str | None = None


def _lcs_match_pairs(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Index pairs of a longest common subsequence over exact sentence matches."""
    m, n = len(a), len(b)
    lengths = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row, below = lengths[i], lengths[i + 1]
        for j in range(n - 1, -1, -1):
            if a[i] == b[j]:
                row[j] = below[j + 1] + 1
            else:
                row[j] = max(below[j], row[j + 1])
    pairs: list[tuple[int, int]] = []
    i = j = 0
    while i < m and j < n:
        if a[i] == b[j]:
            pairs.append((i, j))
            i += 1
            j += 1
        elif lengths[i + 1][j] >= lengths[i][j + 1]:
            i += 1
        else:
            j += 1
    return pairs


def extract_sentence_pairs(pair: RevisionPair) -> list[SentencePair]:
    """Align the two documents' sentences and emit changed pairs.

    Exact-match sentences anchor the alignment; each maximal changed block
    contributes pairs by position, unmatched extras are discarded, and
    identical sentences are never emitted.
    """
    src_sents = split_sentences(pair.source_doc)
    tgt_sents = split_sentences(pair.target_doc)
    anchors = _lcs_match_pairs(src_sents, tgt_sents)
    out: list[SentencePair] = []
    prev_i = prev_j = 0
    for i, j in anchors + [(len(src_sents), len(tgt_sents))]:
        block_src = src_sents[prev_i:i]
        block_tgt = tgt_sents[prev_j:j]
        for s, t in zip(block_src, block_tgt):
            if s and t and s != t:
                out.append(SentencePair(source=s, target=t, comment=pair.comment))
        prev_i, prev_j = i + 1, j + 1
    return out


_NUMERIC_RE = re.compile(r"^\d[\d,.:/\-]*s?$")
_MONTHS = {
    "january", "february", "march", "april", "may", "june", "july", "august",
    "september", "october", "november", "december",
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
}


def _is_number_or_date(token: str) -> bool:
    return bool(_NUMERIC_RE.match(token)) or token.lower() in _MONTHS


def _multiset_diff(a: list[str], b: list[str]) -> list[str]:
    pool = list(b)
    out = []
    for item in a:
        if item in pool:
            pool.remove(item)
        else:
            out.append(item)
    return out


def filter_pair(pair: SentencePair, cfg: FilterConfig, intent: str | None = None) -> PairDecision:
    """Apply the pair-quality rules in a fixed order, reporting the first hit.

    The token-length-ratio rule is skipped for the simplification export,
    where legitimate targets are much shorter than their sources.
    """
    src_tokens = tokenize(pair.source)
    tgt_tokens = tokenize(pair.target)
    score = bleu(src_tokens, tgt_tokens)
    if score < cfg.bleu_min:
        return PairDecision(keep=False, reason="bleu_low")
    if score > cfg.bleu_max:
        return PairDecision(keep=False, reason="bleu_high")
    if intent != "simplification" and src_tokens and tgt_tokens:
        ratio = len(src_tokens) / len(tgt_tokens)
        if ratio > cfg.len_ratio or ratio < 1.0 / cfg.len_ratio:
            return PairDecision(keep=False, reason="len_ratio")
    diff = _multiset_diff(src_tokens, tgt_tokens) + _multiset_diff(tgt_tokens, src_tokens)
    if diff and all(_is_number_or_date(tok) for tok in diff):
        return PairDecision(keep=False, reason="number_or_time")
    if bleu(tokenize(pair.comment), src_tokens) > cfg.comment_sim_max:
        return PairDecision(keep=False, reason="comment_similar_to_source")
    return PairDecision(keep=True)


@dataclass
class IngestStats:
    revisions_total: int = 0
    revisions_kept: int = 0
    revision_drops: dict = field(default_factory=dict)
    pairs_total: int = 0
    pairs_kept: int = 0
    pair_drops: dict = field(default_factory=dict)

    def drop_revision(self, reason: str) -> None:
        self.revision_drops[reason] = self.revision_drops.get(reason, 0) + 1

    def drop_pair(self, reason: str) -> None:
        self.pair_drops[reason] = self.pair_drops.get(reason, 0) + 1

    def to_dict(self) -> dict:
        return {
            "revisions_total": self.revisions_total,
            "revisions_kept": self.revisions_kept,
            "revision_drops": dict(sorted(self.revision_drops.items())),
            "pairs_total": self.pairs_total,
            "pairs_kept": self.pairs_kept,
            "pair_drops": dict(sorted(self.pair_drops.items())),
        }


def ingest_pages(
    pages: Iterable[tuple[int, list[RawRevision]]],
    cfg: FilterConfig,
    stats: IngestStats | None = None,
) -> Iterator[SentencePair]:
    """Run the full per-page pipeline: comment filter, diff, pair filter.

    Each revision with a predecessor gets exactly one disposition, counted in
    ``stats``; surviving revisions contribute zero or more sentence pairs.
    """
    stats = stats if stats is not None else IngestStats()
    for _page_id, revisions in pages:
        for prev, cur in zip(revisions, revisions[1:]):
            stats.revisions_total += 1
            decision = filter_comment(cur.comment)
            if not decision.keep:
                stats.drop_revision(decision.reason or "comment")
                continue
            stats.revisions_kept += 1
            rev_pair = RevisionPair(
                comment=decision.normalized or "",
                source_doc=strip_markup(prev.text),
                target_doc=strip_markup(cur.text),
            )
            for pair in extract_sentence_pairs(rev_pair):
                stats.pairs_total += 1
                verdict = filter_pair(pair, cfg)
                if verdict.keep:
                    stats.pairs_kept += 1
                    yield pair
                else:
                    stats.drop_pair(verdict.reason or "other")
