from __future__ import annotations

import io
import re
from pathlib import Path
from typing import Iterator, List, Optional, Tuple

import chardet  # type: ignore

from .errors import BraidParseError

MAX_BATCH_BYTES = 20_000_000

_HEADER_RE = re.compile(r"^n\s*=\s*(?P<n>\d+)$")


def decode_bytes(data: bytes) -> Optional[str]:
    if not data:
        return ""
    if 0 in data:
        return None
    enc = chardet.detect(data).get("encoding")
    candidates = []
    if enc:
        candidates.append(enc)
    candidates.append("utf-8")
    for candidate in candidates:
        try:
            return data.decode(candidate, errors="strict")
        except (LookupError, UnicodeDecodeError):
            continue
    return None


def read_batch_text(path: Path, max_bytes: int = MAX_BATCH_BYTES) -> str:
    try:
        with path.open("rb") as f:
            data = f.read(max_bytes + 1)
    except OSError as exc:
        raise BraidParseError(f"cannot read {path}: {exc}") from exc
    if len(data) > max_bytes:
        raise BraidParseError(f"{path} is larger than {max_bytes} bytes")
    text = decode_bytes(data)
    if text is None:
        raise BraidParseError(f"{path} does not look like a text file")
    return text


def iter_lines(text: str) -> Iterator[Tuple[int, str]]:
    buf = io.StringIO(text)
    for i, line in enumerate(buf, start=1):
        yield i, line.rstrip("\r\n")


def parse_batch(text: str) -> Tuple[int, List[str]]:
    """Split batch text into the strand count and the word lines.

    The first non-empty line must be ``n=<int>``; blank lines and ``#`` comments
    are skipped afterwards.
    """
    n: Optional[int] = None
    words: List[str] = []
    for line_num, raw in iter_lines(text):
        line = raw.strip().lstrip("\ufeff")
        if not line:
            continue
        if n is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise BraidParseError(f"line {line_num}: expected header 'n=<int>', got {line!r}")
            n = int(m.group("n"))
            continue
        if line.startswith("#"):
            continue
        words.append(line)
    if n is None:
        raise BraidParseError("batch file is missing the 'n=<int>' header")
    return n, words
