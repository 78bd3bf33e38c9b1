"""Best-effort wikitext markup removal.

Handles templates (one nesting level), internal and external links, ref
blocks, bold/italic quoting, and heading markers. Anything unparseable passes
through verbatim.
"""

import re

__all__ = ["strip_markup"]

_REF_RE = re.compile(r"<ref[^>/]*/>|<ref[^>]*>.*?</ref>", re.DOTALL | re.IGNORECASE)
_TEMPLATE_RE = re.compile(r"\{\{[^{}]*\}\}", re.DOTALL)
_INTERNAL_LINK_RE = re.compile(r"\[\[(?:[^\[\]|]*\|)?([^\[\]|]*)\]\]")
_EXTERNAL_LINK_RE = re.compile(r"\[(?:[a-z]+://|//)\S*(?:\s+([^\]]*))?\]")
_QUOTES_RE = re.compile(r"'{2,}")
_HEADING_RE = re.compile(r"^\s*(={1,6})\s*(.*?)\s*\1\s*$", re.MULTILINE)
_TAG_RE = re.compile(r"</?(?:br|nowiki|small|big|sub|sup|u|s|code|math)[^>]*>", re.IGNORECASE)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)


def strip_markup(wikitext: str) -> str:
    text = _COMMENT_RE.sub("", wikitext)
    text = _REF_RE.sub("", text)
    # two passes remove templates nested one level deep
    text = _TEMPLATE_RE.sub("", text)
    text = _TEMPLATE_RE.sub("", text)
    text = _INTERNAL_LINK_RE.sub(lambda m: m.group(1) or "", text)
    text = _EXTERNAL_LINK_RE.sub(lambda m: m.group(1) or "", text)
    text = _HEADING_RE.sub(lambda m: m.group(2), text)
    text = _QUOTES_RE.sub("", text)
    text = _TAG_RE.sub(" ", text)
    return text
