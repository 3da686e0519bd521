"""Access structures: group classification, minimal access groups, size bounds.

Participant sets travel internally as bitmasks with bit ``i - 1`` for
participant ``P_i``; public results use sorted 1-based index lists.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .code import (
    DEFAULT_CAP,
    CapExceeded,
    check_cap,
    generalized_hamming_weight,
    is_self_dual,
    mask_to_set,
    masks_from_digits,
    min_distance,
    popcount,
    span_words,
)
from .scheme import SchemeInstance, reconstruction_coefficients


class Kind(str, enum.Enum):
    FULL = "Full"
    PARTIAL = "Partial"
    NONE = "None"


@dataclass(frozen=True)
class GroupClassification:
    kind: Kind
    leaked_dim: int


@dataclass
class BoundsRecord:
    """Participant-count bounds; ``None`` marks a bound that was not computed."""

    ghw_bound: int | None
    simple_bound: int | None
    noinfo_bound: int
    recover_threshold: int
    d_perp: int
    d_l_perp: int | None

    def non_access_bound(self) -> int:
        """Largest size at which no access group can exist."""
        return max(b for b in (self.ghw_bound, self.simple_bound, self.noinfo_bound) if b is not None)

    def as_dict(self) -> dict:
        return {
            "ghw_bound": self.ghw_bound,
            "simple_bound": self.simple_bound,
            "noinfo_bound": self.noinfo_bound,
            "recover_threshold": self.recover_threshold,
            "d_perp": self.d_perp,
            "d_l_perp": self.d_l_perp,
        }


@dataclass
class AccessReport:
    """Result of :func:`enumerate_access_structure`.

    ``histogram`` counts the distinct participant sets that arise as the
    union of supports of a dual-codeword tuple, by size; these are the
    counts compared against the enumerator bound.  It is ``None`` when the
    subset backend was used.  ``minimal_histogram`` counts minimal groups.
    """

    minimal_groups: list[list[int]]
    histogram: dict[int, int] | None
    minimal_histogram: dict[int, int]
    bounds: BoundsRecord | None
    backend: str
    max_size: int | None = None
    union_masks: np.ndarray | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "minimal_groups": self.minimal_groups,
            "histogram": None if self.histogram is None else {str(k): v for k, v in sorted(self.histogram.items())},
            "minimal_histogram": {str(k): v for k, v in sorted(self.minimal_histogram.items())},
            "bounds": None if self.bounds is None else self.bounds.as_dict(),
            "backend": self.backend,
            "max_size": self.max_size,
        }


def _group_list(S: SchemeInstance, B: Iterable[int]) -> list[int]:
    B = sorted(set(int(i) for i in B))
    S.participant_columns(B)  # range check
    return B


def classify_span(S: SchemeInstance, B: Iterable[int]) -> GroupClassification:
    """Classify by comparing the span of the secret columns with the group's columns."""
    B = _group_list(S, B)
    cols = S.participant_columns(B)
    r_b = S.code.column_rank(cols)
    r_u = S.code.column_rank(list(range(S.l)) + cols)
    leaked = r_b + S.l - r_u
    if leaked == S.l:
        return GroupClassification(Kind.FULL, leaked)
    if leaked == 0:
        return GroupClassification(Kind.NONE, 0)
    return GroupClassification(Kind.PARTIAL, leaked)


def classify_dual(S: SchemeInstance, B: Iterable[int]) -> bool:
    """True iff dual words with prefixes ``e_1..e_l`` exist inside ``{1..l} + B``."""
    return reconstruction_coefficients(S, _group_list(S, B)) is not None


# --- dual tuple space --------------------------------------------------------


def prefix_word_count(S: SchemeInstance) -> int:
    """Number of dual codewords whose first ``l`` coordinates equal a given ``e_j``."""
    H = S.dual_code.gen
    r = linalg.rank(S.field, H[:, : S.l]) if H.shape[0] else 0
    if r < S.l:
        return 0
    return S.field.q ** (H.shape[0] - r)


def prefix_words(S: SchemeInstance, j: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Digit matrix of every dual codeword whose prefix equals ``e_j`` (1-based ``j``)."""
    F, H, l = S.field, S.dual_code.gen, S.l
    N = S.code.n_len
    if H.shape[0] == 0:
        return np.zeros((0, N), dtype=np.int64)
    target = np.zeros(l, dtype=np.int64)
    target[j - 1] = 1
    y0 = linalg.solve_left(F, H[:, :l], target)
    if y0 is None:
        return np.zeros((0, N), dtype=np.int64)
    K = linalg.left_kernel(F, H[:, :l])
    check_cap("prefix-constrained dual words", F.q ** K.shape[0], cap)
    basis = linalg.matmul(F, K, H) if K.shape[0] else np.zeros((0, N), dtype=np.int64)
    return span_words(F, basis, offset=linalg.vecmat(F, y0, H))


def prefix_masks(S: SchemeInstance, cap: int = DEFAULT_CAP) -> list[np.ndarray]:
    """Full-length support masks of the prefix-``e_j`` dual words, one array per ``j``."""
    return [masks_from_digits(prefix_words(S, j, cap)) for j in range(1, S.l + 1)]


def _shift(masks: np.ndarray, l: int) -> np.ndarray:
    if masks.dtype == object:
        return np.array([int(m) >> l for m in masks], dtype=object)
    return np.right_shift(masks, np.uint64(l))


def tuple_count(S: SchemeInstance) -> int:
    return prefix_word_count(S) ** S.l


def tuple_union_masks(S: SchemeInstance, cap: int = DEFAULT_CAP, threads: int = 1) -> np.ndarray:
    """Participant-union mask of every tuple ``(v_1..v_l)``, with multiplicity.

    Tuples are ordered with ``v_1`` slowest.  The range of ``v_1`` is split
    across ``threads`` workers; the concatenation order does not depend on
    the split.
    """
    check_cap("dual codeword tuples", tuple_count(S), cap)
    parts = [_shift(m, S.l) for m in prefix_masks(S, cap)]
    if any(p.size == 0 for p in parts):
        return np.zeros(0, dtype=np.uint64)

    def unions_for(first: np.ndarray) -> np.ndarray:
        acc = first
        for p in parts[1:]:
            acc = (acc[:, None] | p[None, :]).ravel()
        return acc

    chunks = np.array_split(parts[0], max(1, threads))
    if threads <= 1:
        return unions_for(parts[0])
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.concatenate(list(pool.map(unions_for, chunks)))


def minimal_masks(masks: np.ndarray) -> np.ndarray:
    """Inclusion-minimal elements of a family of masks (duplicates removed)."""
    uniq = np.unique(masks)
    if uniq.size == 0:
        return uniq
    sizes = popcount(uniq)
    order = np.lexsort((uniq, sizes))
    uniq, sizes = uniq[order], sizes[order]
    kept: list[np.ndarray] = []
    mins = uniq[:0]
    for s in np.unique(sizes):
        layer = uniq[sizes == s]
        if mins.size:
            # drop every layer member that contains an already accepted minimal set
            keep = np.ones(layer.size, dtype=bool)
            for a in range(0, layer.size, 2048):
                blk = layer[a : a + 2048, None]
                for b in range(0, mins.size, 4096):
                    m = mins[None, b : b + 4096]
                    keep[a : a + 2048] &= ~((blk & m) == m).any(axis=1)
            layer = layer[keep]
        kept.append(layer)
        mins = np.concatenate(kept)
    return mins


def _subset_backend(S: SchemeInstance) -> list[int]:
    full = []
    for mask in range(1 << S.n):
        if classify_span(S, mask_to_set(mask)).kind is Kind.FULL:
            full.append(mask)
    return [int(m) for m in minimal_masks(np.array(full, dtype=np.uint64 if S.n <= 64 else object))]


def _sorted_groups(masks) -> list[list[int]]:
    groups = [mask_to_set(int(m)) for m in masks]
    return sorted(groups, key=lambda g: (len(g), g))


def enumerate_access_structure(
    S: SchemeInstance,
    cap: int = DEFAULT_CAP,
    *,
    max_size: int | None = None,
    backend: str = "auto",
    with_bounds: bool = True,
    ghw: bool = True,
    threads: int = 1,
) -> AccessReport:
    """Minimal access groups and the histogram of tuple-union supports.

    ``max_size`` keeps only groups of at most that many participants, which
    still yields exactly the minimal groups of those sizes.  The ``auto``
    backend picks the tuple space or the subset lattice, whichever is
    smaller.
    """
    n_tuples = tuple_count(S)
    if backend == "auto":
        backend = "tuples" if n_tuples <= (1 << S.n) else "subsets"
    if backend == "tuples":
        unions = tuple_union_masks(S, cap, threads)
        if max_size is not None:
            unions = unions[popcount(unions) <= max_size]
        uniq = np.unique(unions)
        histogram = dict(sorted(Counter(popcount(uniq).tolist()).items()))
        mins = minimal_masks(uniq)
    elif backend == "subsets":
        if S.n > 24:
            raise CapExceeded("subset lattice", 1 << S.n, 1 << 24)
        check_cap("participant subsets", 1 << S.n, cap)
        mins = _subset_backend(S)
        if max_size is not None:
            mins = [m for m in mins if int(m).bit_count() <= max_size]
        histogram, uniq = None, None
    else:
        raise ValueError(f"unknown backend {backend!r}")
    groups = _sorted_groups(mins)
    minimal_histogram = dict(sorted(Counter(len(g) for g in groups).items()))
    rec = bounds(S, cap, ghw=ghw) if with_bounds else None
    return AccessReport(groups, histogram, minimal_histogram, rec, backend, max_size, uniq)


def bounds(S: SchemeInstance, cap: int = DEFAULT_CAP, *, ghw: bool = True) -> BoundsRecord:
    l = S.l
    D = S.dual_code
    d_perp = min_distance(D, cap)
    d_l = None
    if ghw:
        try:
            d_l = generalized_hamming_weight(D, l, cap)
        except CapExceeded:
            d_l = None
    simple = math.ceil(3 * (d_perp - l) / 2) - 1 if l >= 2 else None
    return BoundsRecord(
        ghw_bound=None if d_l is None else d_l - l - 1,
        simple_bound=simple,
        noinfo_bound=d_perp - l - 1,
        recover_threshold=S.n + l - S.d + 1,
        d_perp=d_perp,
        d_l_perp=d_l,
    )


def check_even_minimal_groups(S: SchemeInstance, cap: int = DEFAULT_CAP, *, max_size: int | None = None) -> bool:
    """Whether every minimal access group (and every tuple union) has even size.

    Only defined for binary self-dual codes with ``l = 2``.
    """
    if S.l != 2 or S.field.q != 2 or not is_self_dual(S.code):
        raise ValueError("parity check needs a binary self-dual code with l = 2")
    rep = enumerate_access_structure(S, cap, max_size=max_size, backend="tuples", with_bounds=False)
    sizes = set(rep.minimal_histogram) | set(rep.histogram or {})
    return all(s % 2 == 0 for s in sizes)
