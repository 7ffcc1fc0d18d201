"""The ``dmax v1`` text format for point sets.

    # optional comment lines
    dmax v1 n=2 r=3 d=2
    1 1 1
    1 2 2

The ``d=`` field is optional.  Members are written in lexicographic order
and the file ends with a newline.
"""

from __future__ import annotations

import re
from typing import Optional

from .words import PointSet

_HEADER = re.compile(r"dmax v1 n=(\d+) r=(\d+)(?: d=(\d+))?")


class SetFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def serialize(S: PointSet, d: Optional[int] = None) -> str:
    head = f"dmax v1 n={S.n} r={S.r}" + (f" d={d}" if d is not None else "")
    return "\n".join([head] + [" ".join(map(str, a)) for a in S.members]) + "\n"


def parse(text: str) -> tuple[PointSet, Optional[int]]:
    """Parse a set file, returning the set and its declared diameter (or None)."""
    if not text.endswith("\n"):
        lines = text.split("\n")
        raise SetFileError("missing trailing newline", len(lines), len(lines[-1]) + 1)
    lines = text[:-1].split("\n")
    header = None
    words = []
    seen = set()
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            continue
        if header is None:
            match = _HEADER.fullmatch(line)
            if not match:
                raise SetFileError(f"expected header 'dmax v1 n=<int> r=<int>', got {line!r}", lineno)
            n, r = int(match.group(1)), int(match.group(2))
            d = int(match.group(3)) if match.group(3) is not None else None
            if n < 1:
                raise SetFileError("alphabet size must be positive", lineno, line.index("n=") + 3)
            header = (n, r, d)
            continue
        n, r, _ = header
        tokens = line.split(" ") if line else []
        if len(tokens) != r:
            raise SetFileError(f"expected {r} symbols, found {len(tokens)}", lineno)
        col = 1
        word = []
        for tok in tokens:
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise SetFileError(f"symbol {tok!r} is not an integer in 1..{n}", lineno, col)
            word.append(int(tok))
            col += len(tok) + 1
        word = tuple(word)
        if word in seen:
            raise SetFileError(f"duplicate word {line!r}", lineno)
        seen.add(word)
        words.append(word)
    if header is None:
        raise SetFileError("missing header line", len(lines))
    n, r, d = header
    return PointSet(n, r, tuple(words)), d


def read(path) -> tuple[PointSet, Optional[int]]:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(path, S: PointSet, d: Optional[int] = None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(S, d))
