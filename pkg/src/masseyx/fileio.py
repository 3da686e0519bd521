"""Text and JSON formats: code matrix files and polynomial documents.

Matrix file::

    field p e [c0 ... ce]
    code N k
    <k lines of N encoded field elements>

Blank lines and ``#`` comments are ignored on read.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .code import LinearCode
from .gf import parse_header


class FormatError(ValueError):
    pass


def dumps_code(C: LinearCode) -> str:
    lines = [C.field.header(), f"code {C.n_len} {C.k_dim}"]
    lines += [" ".join(str(int(x)) for x in row) for row in C.gen]
    return "\n".join(lines) + "\n"


def loads_code(text: str) -> LinearCode:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) < 2:
        raise FormatError("matrix file needs a field header and a code line")
    F = parse_header(lines[0])
    head = lines[1].split()
    if len(head) != 3 or head[0] != "code":
        raise FormatError(f"expected 'code N k', got {lines[1]!r}")
    n, k = int(head[1]), int(head[2])
    rows = [[int(x) for x in ln.split()] for ln in lines[2:]]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise FormatError(f"expected {k} rows of {n} entries")
    gen = np.array(rows, dtype=np.int64).reshape(k, n)
    return LinearCode(F, gen)


def read_code(path: str | Path) -> LinearCode:
    return loads_code(Path(path).read_text())


def write_code(C: LinearCode, path: str | Path) -> None:
    Path(path).write_text(dumps_code(C))


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
