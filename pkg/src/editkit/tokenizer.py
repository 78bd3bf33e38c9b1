"""Deterministic word tokenizer used by alignment, metrics, and the model.

Splits on whitespace, then peels leading/trailing punctuation into standalone
tokens. Hyphens (and any other punctuation) inside a word stay attached, so
hyphen split/merge tags remain expressible.
"""

import unicodedata

__all__ = ["tokenize", "detokenize", "is_punct"]


def is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _split_word(word: str) -> list[str]:
    """Peel leading/trailing punctuation characters off one whitespace chunk."""
    leading: list[str] = []
    trailing: list[str] = []
    start, end = 0, len(word)
    while start < end and is_punct(word[start]) and end - start > 1:
        leading.append(word[start])
        start += 1
    while end > start and is_punct(word[end - 1]) and end - start > 1:
        trailing.append(word[end - 1])
        end -= 1
    core = word[start:end]
    return leading + ([core] if core else []) + trailing[::-1]


def tokenize(text: str) -> list[str]:
    """Split text into surface tokens. Empty input yields an empty list."""
    tokens: list[str] = []
    for chunk in text.split():
        tokens.extend(_split_word(chunk))
    return tokens


def detokenize(tokens: list[str]) -> str:
    """Inverse of :func:`tokenize` up to whitespace: join with single spaces.

    Tokens produced by ``tokenize`` are fixed points of the splitter, so
    ``tokenize(detokenize(toks)) == toks``.
    """
    return " ".join(tokens)
