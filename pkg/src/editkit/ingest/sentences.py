"""Rule-based sentence splitting with an abbreviation stop list."""

__all__ = ["split_sentences", "ABBREVIATIONS"]

ABBREVIATIONS = {
    "mr.", "mrs.", "ms.", "dr.", "prof.", "e.g.", "i.e.", "etc.", "u.s.",
    "u.k.", "vs.", "jr.", "sr.", "st.", "no.", "fig.", "al.", "inc.", "co.",
}

_TERMINALS = ".!?"
_CLOSERS = "\"'”’)]"
_OPENERS = "\"'“‘(["


def _word_ending_at(text: str, end: int) -> str:
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:end]


def split_sentences(text: str) -> list[str]:
    """Split plain text into sentences.

    A terminal . ! ? followed by whitespace and an uppercase letter, digit,
    or opening quote starts a new sentence unless the terminating word is a
    known abbreviation.
    """
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in _TERMINALS:
            j = i + 1
            while j < n and (text[j] in _TERMINALS or text[j] in _CLOSERS):
                j += 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            boundary = (
                k > j
                and k < n
                and (text[k].isupper() or text[k].isdigit() or text[k] in _OPENERS)
            )
            if boundary and text[i] == ".":
                word = _word_ending_at(text, i + 1)
                if word.lower() in ABBREVIATIONS:
                    boundary = False
            if boundary:
                sentence = text[start:j].strip()
                if sentence:
                    sentences.append(sentence)
                start = k
                i = k
                continue
            i = j
            continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
