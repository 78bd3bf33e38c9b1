"""Shared n-gram helpers."""

from collections import Counter

from ..tokenizer import tokenize

MAX_ORDER = 4


def as_tokens(text: str | list[str]) -> list[str]:
    return tokenize(text) if isinstance(text, str) else list(text)


def ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))
