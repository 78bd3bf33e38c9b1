"""Edit-tag vocabularies and the tags themselves.

Three tag designs are supported: the 4-tag Levenshtein set (keep / delete /
replace / append), a 14-tag set that adds deterministic token transforms plus
a generic verb-form tag, and a 34-tag set that spells every verb-form change
out as its own tag. Indices are stable: each variant lists its tags in a fixed
order and never reorders them.
"""

from dataclasses import dataclass

__all__ = [
    "KEEP", "DELETE", "REPLACE", "APPEND", "MERGED",
    "VERB_FORMS", "TagSet", "EditTag", "get_tag_set", "TAG_SET_NAMES",
]

KEEP = "KEEP"
DELETE = "DELETE"
REPLACE = "REPLACE"
APPEND = "APPEND"

# Internal marker for the second token of a merge; keeps plan length equal to
# len(source)+1. Not a member of any tag set.
MERGED = "MERGED"

VERB_FORMS = ("VB", "VBD", "VBG", "VBN", "VBZ")

_KDRA4 = (KEEP, DELETE, REPLACE, APPEND)

_CORE14 = (
    "APPEND",
    "DELETE",
    "KEEP",
    "MERGE_HYPHEN",
    "REPLACE",
    "TRANSFORM_AGREEMENT_PLURAL",
    "TRANSFORM_AGREEMENT_SINGULAR",
    "TRANSFORM_CASE_CAPITAL",
    "TRANSFORM_CASE_CAPITAL_1",
    "TRANSFORM_CASE_LOWER",
    "TRANSFORM_CASE_UPPER",
    "TRANSFORM_CASE_UPPER_-1",
    "TRANSFORM_SPLIT_HYPHEN",
    "TRANSFORM_VERB",
)

_VERB_PAIR_TAGS = tuple(sorted(
    f"TRANSFORM_VERB_{src}_{dst}"
    for src in VERB_FORMS for dst in VERB_FORMS if src != dst
))

_EXTENDED34 = tuple(sorted(
    (
        "APPEND", "DELETE", "KEEP", "MERGE_HYPHEN", "MERGE_SPACE", "REPLACE",
        "TRANSFORM_AGREEMENT_PLURAL", "TRANSFORM_AGREEMENT_SINGULAR",
        "TRANSFORM_CASE_CAPITAL", "TRANSFORM_CASE_CAPITAL_1",
        "TRANSFORM_CASE_LOWER", "TRANSFORM_CASE_UPPER",
        "TRANSFORM_CASE_UPPER_-1", "TRANSFORM_SPLIT_HYPHEN",
    )
    + _VERB_PAIR_TAGS
))


@dataclass(frozen=True)
class TagSet:
    """A named, ordered edit-tag vocabulary."""

    variant: str
    tags: tuple[str, ...]

    def __contains__(self, kind: str) -> bool:
        return kind in self.tags

    def index(self, kind: str) -> int:
        return self.tags.index(kind)

    @property
    def has_transforms(self) -> bool:
        return self.variant != "kdra4"

    @property
    def has_merge_space(self) -> bool:
        return "MERGE_SPACE" in self.tags

    @property
    def generic_verb(self) -> bool:
        """True when verb-form fixes use the slot-carrying TRANSFORM_VERB tag."""
        return "TRANSFORM_VERB" in self.tags


_REGISTRY = {
    "kdra4": TagSet("kdra4", _KDRA4),
    "core14": TagSet("core14", _CORE14),
    "extended34": TagSet("extended34", _EXTENDED34),
}

TAG_SET_NAMES = tuple(_REGISTRY)


def get_tag_set(name: str) -> TagSet:
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        raise KeyError(f"unknown tag set {name!r}; expected one of {TAG_SET_NAMES}") from None


@dataclass(frozen=True)
class EditTag:
    """One per-token operation; slot-carrying tags reference an insertion slot."""

    kind: str
    slot: int | None = None

    def __post_init__(self):
        if self.kind in _SLOT_KINDS and self.slot is None:
            raise ValueError(f"{self.kind} requires an insertion slot")
        if self.kind not in _SLOT_KINDS and self.slot is not None:
            raise ValueError(f"{self.kind} cannot carry an insertion slot")


_SLOT_KINDS = {APPEND, REPLACE, "TRANSFORM_VERB"}


def carries_slot(kind: str) -> bool:
    return kind in _SLOT_KINDS


def is_transform(kind: str) -> bool:
    return kind.startswith("TRANSFORM_") or kind.startswith("MERGE_")
