"""Text formats for coefficient prefixes.

* b-file: ``"<position> <coeff>\\n"`` per line from position 0, no header.
* CSV: header ``position,coefficient`` then one row per position.
* JSON: ``[["0",1],["1",-1],...]`` followed by a newline; positions are
  strings so they survive any consumer's integer width.

All writers are byte-deterministic.  Readers reject gaps, reordering and
values outside {-1, 0, 1}.
"""

from __future__ import annotations

import json
from io import StringIO
from typing import IO

import numpy as np

from .expander import CoeffArray

__all__ = ["FORMATS", "dumps", "loads", "read", "write"]

FORMATS = ("bfile", "csv", "json")
CSV_HEADER = "position,coefficient"
_CHUNK = 1 << 16


def _lines(arr, fmt: str):
    sep = " " if fmt == "bfile" else ","
    values = arr.to_numpy()
    for start in range(0, len(values), _CHUNK):
        chunk = values[start : start + _CHUNK].tolist()
        yield "".join(f"{start + i}{sep}{v}\n" for i, v in enumerate(chunk))


def write(arr, stream: IO[str], fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "csv":
        stream.write(CSV_HEADER + "\n")
    if fmt in ("bfile", "csv"):
        for block in _lines(arr, fmt):
            stream.write(block)
        return
    values = arr.to_numpy().tolist()
    stream.write("[")
    stream.write(",".join(f'["{i}",{v}]' for i, v in enumerate(values)))
    stream.write("]\n")


def dumps(arr, fmt: str) -> str:
    buf = StringIO()
    write(arr, buf, fmt)
    return buf.getvalue()


def _from_pairs(pairs) -> CoeffArray:
    values = []
    for expect, (pos, coeff) in enumerate(pairs):
        if pos != expect:
            raise ValueError(f"expected position {expect}, found {pos}")
        if coeff not in (-1, 0, 1):
            raise ValueError(f"coefficient at {pos} out of range: {coeff}")
        values.append(coeff)
    return CoeffArray(np.array(values, dtype=np.int8))


def _parse_rows(lines, sep: str):
    for lineno, line in enumerate(lines, 1):
        fields = line.split(sep)
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected two fields, got {line!r}")
        yield int(fields[0]), int(fields[1])


def loads(text: str, fmt: str) -> CoeffArray:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        data = json.loads(text)
        return _from_pairs((int(p), c) for p, c in data)
    if text and not text.endswith("\n"):
        raise ValueError("missing final newline")
    lines = text.split("\n")[:-1] if text else []
    if fmt == "csv":
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"missing CSV header {CSV_HEADER!r}")
        return _from_pairs(_parse_rows(lines[1:], ","))
    return _from_pairs(_parse_rows(lines, " "))


def read(stream: IO[str], fmt: str) -> CoeffArray:
    return loads(stream.read(), fmt)
