"""Revision-history ingestion: streaming, filtering, sentence-pair extraction."""

from .comments import CommentDecision, expand_shortcuts, filter_comment
from .dump import RawRevision, stream_pages
from .markup import strip_markup
from .pairs import (
    FilterConfig,
    PairDecision,
    RevisionPair,
    SentencePair,
    extract_sentence_pairs,
    filter_pair,
    ingest_pages,
    IngestStats,
)
from .sentences import split_sentences

__all__ = [
    "CommentDecision", "expand_shortcuts", "filter_comment",
    "RawRevision", "stream_pages", "strip_markup", "split_sentences",
    "FilterConfig", "PairDecision", "RevisionPair", "SentencePair",
    "extract_sentence_pairs", "filter_pair", "ingest_pages", "IngestStats",
]
