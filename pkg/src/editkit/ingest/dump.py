"""Streaming readers for revision histories.

Two input shapes are accepted: a MediaWiki XML export subset (page / revision
/ comment / text elements) and a JSONL fixture with one revision object per
line. Both yield one page at a time, holding only that page's revisions in
memory, with revisions sorted by revision id.
"""

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterator

from ..errors import MalformedDump

__all__ = ["RawRevision", "stream_pages"]


@dataclass
class RawRevision:
    page_id: int
    rev_id: int
    parent_rev_id: int | None
    comment: str
    text: str


class _CountingReader:
    """Tracks consumed bytes so parse errors can report an offset."""

    def __init__(self, raw: IO[bytes]):
        self._raw = raw
        self.consumed = 0

    def read(self, size: int = -1) -> bytes:
        data = self._raw.read(size)
        self.consumed += len(data)
        return data


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _stream_xml(fh: IO[bytes]) -> Iterator[tuple[int, list[RawRevision]]]:
    reader = _CountingReader(fh)
    page_id: int | None = None
    revisions: list[RawRevision] = []
    rev: dict | None = None
    in_contributor = False
    try:
        for event, elem in ET.iterparse(reader, events=("start", "end")):
            tag = _local(elem.tag)
            if event == "start":
                if tag == "page":
                    page_id, revisions = None, []
                elif tag == "revision":
                    rev = {}
                elif tag == "contributor":
                    in_contributor = True
                continue
            text = (elem.text or "").strip() if elem.text else ""
            if tag == "contributor":
                in_contributor = False
            elif tag == "id" and not in_contributor:
                if rev is not None:
                    rev.setdefault("rev_id", int(text))
                elif page_id is None:
                    page_id = int(text)
            elif rev is not None and tag == "parentid":
                rev["parent_rev_id"] = int(text)
            elif rev is not None and tag == "comment":
                rev["comment"] = elem.text or ""
            elif rev is not None and tag == "text":
                rev["text"] = elem.text or ""
            elif tag == "revision":
                if rev is None or "rev_id" not in rev:
                    raise MalformedDump("revision without id", reader.consumed)
                revisions.append(RawRevision(
                    page_id=page_id if page_id is not None else -1,
                    rev_id=rev["rev_id"],
                    parent_rev_id=rev.get("parent_rev_id"),
                    comment=rev.get("comment", ""),
                    text=rev.get("text", ""),
                ))
                rev = None
            elif tag == "page":
                if page_id is None:
                    raise MalformedDump("page without id", reader.consumed)
                revisions.sort(key=lambda r: r.rev_id)
                yield page_id, revisions
                elem.clear()
    except ET.ParseError as exc:
        raise MalformedDump(f"XML parse error: {exc}", reader.consumed) from exc


def _stream_jsonl(fh: IO[bytes]) -> Iterator[tuple[int, list[RawRevision]]]:
    consumed = 0
    current_id: int | None = None
    revisions: list[RawRevision] = []
    for line in fh:
        offset = consumed
        consumed += len(line)
        stripped = line.strip()
        if not stripped:
            continue
        try:
            row = json.loads(stripped)
            revision = RawRevision(
                page_id=int(row["page_id"]),
                rev_id=int(row["rev_id"]),
                parent_rev_id=row.get("parent_rev_id"),
                comment=str(row.get("comment", "")),
                text=str(row.get("text", "")),
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise MalformedDump(f"bad JSONL revision: {exc}", offset) from exc
        if current_id is not None and revision.page_id != current_id:
            revisions.sort(key=lambda r: r.rev_id)
            yield current_id, revisions
            revisions = []
        current_id = revision.page_id
        revisions.append(revision)
    if current_id is not None:
        revisions.sort(key=lambda r: r.rev_id)
        yield current_id, revisions


def stream_pages(path: str | Path) -> Iterator[tuple[int, list[RawRevision]]]:
    """Yield (page_id, revisions sorted by rev_id) one page at a time.

    ``.jsonl`` inputs are read as revision objects grouped by consecutive
    page_id; anything else is parsed as a MediaWiki XML export subset.
    """
    path = Path(path)
    if path.suffix == ".jsonl":
        with open(path, "rb") as fh:
            yield from _stream_jsonl(fh)
    else:
        with open(path, "rb") as fh:
            yield from _stream_xml(fh)
