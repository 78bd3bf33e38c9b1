"""Comment filtering: blacklist, emptiness, and wiki-shortcut expansion."""

from dataclasses import dataclass

__all__ = ["BLACKLIST_TERMS", "SHORTCUT_EXPANSIONS", "CommentDecision", "expand_shortcuts", "filter_comment"]

BLACKLIST_TERMS = (
    "template", "image", "infobox", "pic", "link", "photo",
    "comment", "http:", "https:", ".jpg", ".png", "reply",
)

SHORTCUT_EXPANSIONS = {
    "[[WP:NPOV|POV]]": "neutral point of view",
    "[[WP:TYPO]]": "typo",
    "[[WP:RS]]": "reliable sources",
    "[[WP:SYN]]": "synthesis",
}


@dataclass
class CommentDecision:
    keep: bool
    normalized: str | None = None
    reason: str | None = None


def expand_shortcuts(comment: str) -> str:
    for shortcut, meaning in SHORTCUT_EXPANSIONS.items():
        comment = comment.replace(shortcut, meaning)
    return comment


def filter_comment(comment: str) -> CommentDecision:
    """Keep a normalized comment, or drop it with a reason.

    Empty comments and comments containing any blacklist term are dropped;
    kept comments have wiki shortcuts expanded and whitespace collapsed.
    """
    if not comment or not comment.strip():
        return CommentDecision(keep=False, reason="empty")
    lowered = comment.lower()
    for term in BLACKLIST_TERMS:
        if term in lowered:
            return CommentDecision(keep=False, reason=f"blacklist:{term}")
    normalized = " ".join(expand_shortcuts(comment).split())
    return CommentDecision(keep=True, normalized=normalized)
