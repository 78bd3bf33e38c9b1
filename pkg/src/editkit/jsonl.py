"""Line-oriented JSON I/O with stable field order for bit-exact fixtures."""

import json
from pathlib import Path
from typing import Iterable, Iterator

__all__ = ["dump_line", "write_jsonl", "read_jsonl"]


def dump_line(record: dict) -> str:
    """Serialize one record preserving insertion order of its keys."""
    return json.dumps(record, ensure_ascii=False, separators=(", ", ": "))


def write_jsonl(path: str | Path, records: Iterable[dict]) -> int:
    count = 0
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(dump_line(record) + "\n")
            count += 1
    return count


def read_jsonl(path: str | Path) -> Iterator[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)
