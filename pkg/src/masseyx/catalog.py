"""Built-in codes, stored as matrix files and re-validated when loaded."""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .code import LinearCode, is_self_dual, is_self_orthogonal, min_distance
from .fileio import read_code

ENV_DATA_DIR = "MASSEYX_DATA_DIR"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: LinearCode
    self_dual: bool
    self_orthogonal: bool
    two_transitive: bool  # recorded, never verified
    provenance: str


# name -> (self_dual, self_orthogonal, two_transitive, expected min distance, provenance)
_REGISTRY: dict[str, tuple[bool, bool, bool, int, str]] = {
    "c1_ternary": (
        False, False, False, 4,
        "Ternary [8,3,4] code; generator copied verbatim from the worked example "
        "whose dual carries a 6-participant scheme with l = 2.",
    ),
    "hamming8": (
        True, True, True, 4,
        "Extended binary Hamming [8,4,4]: systematic [7,4] Hamming generator with "
        "parity part rows 110, 101, 011, 111, extended by an overall parity bit.",
    ),
    "golay24": (
        True, True, True, 8,
        "Extended binary Golay [24,12,8] in the form [I | B], where B borders the "
        "11x11 circulant with first row {0} + quadratic residues mod 11 by an "
        "all-ones column and row (corner 0).",
    ),
    "toy6": (
        False, False, False, 3,
        "Binary [6,2,3] toy code with rows 101010 and 010101.",
    ),
}


class CatalogError(KeyError):
    pass


def data_dir() -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(str(resources.files("masseyx") / "data"))


def names() -> list[str]:
    return sorted(_REGISTRY)


def path_for(name: str) -> Path:
    if name not in _REGISTRY:
        raise CatalogError(f"unknown catalog code {name!r}; known: {', '.join(names())}")
    return data_dir() / f"{name}.code"


def load(name: str) -> CatalogEntry:
    """Load a catalog code and check the asserted properties against it."""
    self_dual, self_orth, two_trans, d, prov = _REGISTRY[name] if name in _REGISTRY else (None,) * 5
    C = read_code(path_for(name))
    if self_orth and not is_self_orthogonal(C):
        raise CatalogError(f"{name}: generator is not self-orthogonal")
    if self_dual and not is_self_dual(C):
        raise CatalogError(f"{name}: code is not self-dual")
    if min_distance(C) != d:
        raise CatalogError(f"{name}: minimum distance {min_distance(C)} != {d}")
    return CatalogEntry(name, C, self_dual, self_orth, two_trans, prov)


def listing() -> list[dict]:
    out = []
    for name in names():
        e = load(name)
        out.append(
            {
                "name": name,
                "field": e.code.field.header(),
                "n": e.code.n_len,
                "k": e.code.k_dim,
                "self_dual": e.self_dual,
                "self_orthogonal": e.self_orthogonal,
                "two_transitive": e.two_transitive,
                "provenance": e.provenance,
            }
        )
    return out
