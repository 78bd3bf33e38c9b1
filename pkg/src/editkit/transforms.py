"""Deterministic token transforms: case, number agreement, hyphen, verb form.

A transform tag is applicable exactly when applying it to the source token
reproduces the target token, which keeps detection and application mutually
checkable. Verb-form changes consult a bundled lemma table first and fall back
to regular-conjugation suffix rules.
"""

from functools import lru_cache
from importlib import resources

from .errors import InapplicableTransform
from .tags import VERB_FORMS, TagSet

__all__ = [
    "apply_transform", "detect_transform", "detect_merge", "detect_split",
    "verb_change", "pluralize", "singularize",
]

_IRREGULAR_PLURALS = {
    "child": "children",
    "man": "men",
    "woman": "women",
    "foot": "feet",
    "tooth": "teeth",
    "mouse": "mice",
    "person": "people",
}
_IRREGULAR_SINGULARS = {v: k for k, v in _IRREGULAR_PLURALS.items()}

_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")


def pluralize(token: str) -> str:
    irregular = _IRREGULAR_PLURALS.get(token.lower())
    if irregular is not None:
        return _match_case(irregular, token)
    if token.lower().endswith(_SIBILANT_ENDINGS):
        return token + "es"
    return token + "s"


def singularize(token: str) -> str:
    irregular = _IRREGULAR_SINGULARS.get(token.lower())
    if irregular is not None:
        return _match_case(irregular, token)
    lower = token.lower()
    # Only strip -es after endings that unambiguously demanded it; "-ses" could
    # be either bus+es or horse+s, so those fall back to a plain -s strip.
    if lower.endswith(("xes", "zes", "ches", "shes", "sses")):
        return token[:-2]
    if lower.endswith("s") and not lower.endswith("ss") and len(token) > 1:
        return token[:-1]
    raise InapplicableTransform(f"cannot singularize {token!r}")


def _match_case(word: str, template: str) -> str:
    """Carry a leading capital from the template over to the rewritten word."""
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


# --- verb conjugation -------------------------------------------------------

def _conjugate_regular(base: str) -> dict[str, str]:
    if base.endswith("e"):
        past = base + "d"
    elif len(base) > 1 and base.endswith("y") and base[-2] not in "aeiou":
        past = base[:-1] + "ied"
    else:
        past = base + "ed"
    if base.endswith("ie"):
        gerund = base[:-2] + "ying"
    elif base.endswith("e") and not base.endswith("ee"):
        gerund = base[:-1] + "ing"
    else:
        gerund = base + "ing"
    if base.endswith(_SIBILANT_ENDINGS):
        third = base + "es"
    elif len(base) > 1 and base.endswith("y") and base[-2] not in "aeiou":
        third = base[:-1] + "ies"
    else:
        third = base + "s"
    return {"VB": base, "VBD": past, "VBG": gerund, "VBN": past, "VBZ": third}


def _load_lexicon() -> tuple[dict[str, dict[str, str]], dict[str, list[tuple[str, str]]]]:
    lemma_forms: dict[str, dict[str, str]] = {}
    form_index: dict[str, list[tuple[str, str]]] = {}
    text = resources.files("editkit.data").joinpath("verb_forms.tsv").read_text("utf-8")
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        cells = line.split("\t")
        lemma = cells[0]
        forms = dict(zip(VERB_FORMS, cells))
        lemma_forms[lemma] = forms
        for tag, form in forms.items():
            form_index.setdefault(form, []).append((lemma, tag))
    return lemma_forms, form_index


_LEMMA_FORMS, _FORM_INDEX = _load_lexicon()


def _heuristic_parses(token: str) -> list[tuple[str, str]]:
    """Guess (base, form) readings of a token and keep the self-consistent ones."""
    lower = token.lower()
    guesses: list[tuple[str, str]] = [(lower, "VB")]
    if lower.endswith("ies"):
        guesses.append((lower[:-3] + "y", "VBZ"))
    elif lower.endswith("es"):
        guesses.append((lower[:-2], "VBZ"))
    if lower.endswith("s"):
        guesses.append((lower[:-1], "VBZ"))
    if lower.endswith("ied"):
        guesses.append((lower[:-3] + "y", "VBD"))
        guesses.append((lower[:-3] + "y", "VBN"))
    elif lower.endswith("ed"):
        for base in (lower[:-2], lower[:-1]):
            guesses.append((base, "VBD"))
            guesses.append((base, "VBN"))
    if lower.endswith("ying"):
        guesses.append((lower[:-4] + "ie", "VBG"))
    if lower.endswith("ing"):
        guesses.append((lower[:-3], "VBG"))
        guesses.append((lower[:-3] + "e", "VBG"))
    parses = []
    for base, tag in guesses:
        if len(base) < 2:
            continue
        if _conjugate_regular(base).get(tag) == lower:
            parses.append((base, tag))
    return parses


def _verb_parses(token: str) -> list[tuple[str, str]]:
    lower = token.lower()
    parses = list(_FORM_INDEX.get(lower, ()))
    for parse in _heuristic_parses(token):
        if parse not in parses and parse[0] not in _LEMMA_FORMS:
            parses.append(parse)
    return parses


def _form_of(lemma: str, tag: str) -> str | None:
    forms = _LEMMA_FORMS.get(lemma)
    if forms is not None:
        return forms.get(tag)
    return _conjugate_regular(lemma).get(tag)


@lru_cache(maxsize=65536)
def verb_change(src: str, tgt: str) -> tuple[str, str] | None:
    """Return (src_form, tgt_form) when src and tgt inflect one shared lemma."""
    if src == tgt:
        return None
    tgt_lower = tgt.lower()
    best: tuple[str, str] | None = None
    for lemma, src_tag in _verb_parses(src):
        for tgt_tag in VERB_FORMS:
            if tgt_tag == src_tag:
                continue
            if _form_of(lemma, tgt_tag) == tgt_lower:
                candidate = (src_tag, tgt_tag)
                if best is None or candidate < best:
                    best = candidate
    return best


# --- tag application --------------------------------------------------------

_CASE_KINDS = (
    "TRANSFORM_CASE_CAPITAL",
    "TRANSFORM_CASE_CAPITAL_1",
    "TRANSFORM_CASE_LOWER",
    "TRANSFORM_CASE_UPPER",
    "TRANSFORM_CASE_UPPER_-1",
)


def apply_transform(kind: str, token: str, next_token: str | None = None) -> str | tuple[str, str]:
    """Apply a transform tag to a token.

    Merge tags consume ``next_token`` and return the joined token; the split
    tag returns a pair. Raises :class:`InapplicableTransform` when the rule
    cannot fire.
    """
    if not token:
        raise InapplicableTransform("empty token")
    if kind == "TRANSFORM_CASE_CAPITAL":
        return token[0].upper() + token[1:]
    if kind == "TRANSFORM_CASE_CAPITAL_1":
        if len(token) < 2:
            raise InapplicableTransform(f"{token!r} has no second character")
        return token[0] + token[1].upper() + token[2:]
    if kind == "TRANSFORM_CASE_LOWER":
        return token.lower()
    if kind == "TRANSFORM_CASE_UPPER":
        return token.upper()
    if kind == "TRANSFORM_CASE_UPPER_-1":
        if len(token) < 2:
            raise InapplicableTransform(f"{token!r} has no trailing character to spare")
        return token[:-1].upper() + token[-1]
    if kind == "TRANSFORM_AGREEMENT_PLURAL":
        return pluralize(token)
    if kind == "TRANSFORM_AGREEMENT_SINGULAR":
        return singularize(token)
    if kind == "TRANSFORM_SPLIT_HYPHEN":
        cut = token.find("-")
        if cut <= 0 or cut >= len(token) - 1:
            raise InapplicableTransform(f"{token!r} has no interior hyphen")
        return token[:cut], token[cut + 1:]
    if kind == "MERGE_HYPHEN":
        if next_token is None:
            raise InapplicableTransform("merge needs a following token")
        return token + "-" + next_token
    if kind == "MERGE_SPACE":
        if next_token is None:
            raise InapplicableTransform("merge needs a following token")
        return token + next_token
    if kind == "TRANSFORM_VERB":
        raise InapplicableTransform("generic verb tag carries its target via an insertion slot")
    if kind.startswith("TRANSFORM_VERB_"):
        src_tag, tgt_tag = kind[len("TRANSFORM_VERB_"):].split("_")
        for lemma, parse_tag in _verb_parses(token):
            if parse_tag == src_tag:
                form = _form_of(lemma, tgt_tag)
                if form is not None:
                    return _match_case(form, token)
        raise InapplicableTransform(f"{token!r} is not a known {src_tag} form")
    raise InapplicableTransform(f"{kind!r} is not a transform tag")


@lru_cache(maxsize=262144)
def detect_transform(src: str, tgt: str, tag_set: TagSet) -> str | None:
    """Return the first transform tag that rewrites src into tgt, or None.

    Checks case tags first, then number agreement, then verb form. Hyphen
    split/merge act on token pairs and are detected by the aligner through
    :func:`detect_split` / :func:`detect_merge`.
    """
    if src == tgt or not tag_set.has_transforms:
        return None
    for kind in _CASE_KINDS:
        if kind in tag_set:
            try:
                if apply_transform(kind, src) == tgt:
                    return kind
            except InapplicableTransform:
                pass
    for kind in ("TRANSFORM_AGREEMENT_PLURAL", "TRANSFORM_AGREEMENT_SINGULAR"):
        if kind in tag_set:
            try:
                if apply_transform(kind, src) == tgt:
                    return kind
            except InapplicableTransform:
                pass
    change = verb_change(src, tgt)
    if change is not None:
        if tag_set.generic_verb:
            return "TRANSFORM_VERB"
        specific = f"TRANSFORM_VERB_{change[0]}_{change[1]}"
        if specific in tag_set:
            try:
                if apply_transform(specific, src) == tgt:
                    return specific
            except InapplicableTransform:
                pass
    return None


def detect_split(src: str, tgt_a: str, tgt_b: str, tag_set: TagSet) -> str | None:
    """Detect a one-token-to-two hyphen split."""
    if "TRANSFORM_SPLIT_HYPHEN" not in tag_set.tags:
        return None
    try:
        if apply_transform("TRANSFORM_SPLIT_HYPHEN", src) == (tgt_a, tgt_b):
            return "TRANSFORM_SPLIT_HYPHEN"
    except InapplicableTransform:
        pass
    return None


def detect_merge(src_a: str, src_b: str, tgt: str, tag_set: TagSet) -> str | None:
    """Detect a two-token-to-one merge (hyphen first, then plain join)."""
    if "MERGE_HYPHEN" in tag_set.tags and src_a + "-" + src_b == tgt:
        return "MERGE_HYPHEN"
    if tag_set.has_merge_space and src_a + src_b == tgt:
        return "MERGE_SPACE"
    return None
