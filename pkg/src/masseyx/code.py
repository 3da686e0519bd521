"""Linear codes over GF(q): duals, codeword enumeration, weights, subcodes.

Supports are handled as bitmasks where bit ``i`` stands for coordinate
``i + 1``.  For lengths up to 64 they live in ``uint64`` numpy arrays and
weights come from a vectorized popcount; longer codes fall back to Python
integers in object arrays.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .gf import FieldElement, FieldSpec

DEFAULT_CAP = 1 << 26
_BLOCK = 1 << 14


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} items exceeds cap {cap}")
        self.size = size
        self.cap = cap


# --- bitmask helpers --------------------------------------------------------


def popcount(masks) -> np.ndarray:
    masks = np.asarray(masks)
    if masks.dtype == object:
        return np.fromiter((int(m).bit_count() for m in masks.ravel()), dtype=np.int64).reshape(masks.shape)
    return np.bitwise_count(masks).astype(np.int64)


def masks_from_digits(words: np.ndarray) -> np.ndarray:
    """Support bitmask of every row of a digit matrix."""
    words = np.asarray(words)
    n = words.shape[1]
    nz = words != 0
    if n <= 64:
        bits = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
        return np.bitwise_or.reduce(np.where(nz, bits, np.uint64(0)), axis=1).astype(np.uint64)
    out = np.empty(words.shape[0], dtype=object)
    for i, row in enumerate(nz):
        out[i] = sum(1 << j for j in np.flatnonzero(row))
    return out


def mask_to_set(mask: int) -> list[int]:
    """1-based coordinate list of a support mask."""
    mask = int(mask)
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def set_to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (int(i) - 1)
    return m


def mask_dtype(n: int):
    return np.uint64 if n <= 64 else object


# --- codewords and codes ----------------------------------------------------


@dataclass(frozen=True)
class Codeword:
    coords: tuple[int, ...]
    field: FieldSpec

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coords if c)

    @property
    def support(self) -> list[int]:
        return [i + 1 for i, c in enumerate(self.coords) if c]

    def elements(self) -> list[FieldElement]:
        return [FieldElement(c, self.field) for c in self.coords]

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear code given by a generator matrix of full row rank.

    The zero code (``k == 0``) is allowed so that duals of full-space codes
    are representable.
    """

    field: FieldSpec
    gen: np.ndarray

    def __post_init__(self) -> None:
        gen = np.array(self.gen, dtype=np.int64)
        if gen.ndim != 2:
            raise ValueError("generator must be a 2-d matrix")
        if gen.shape[1] < 1:
            raise ValueError("code length must be at least 1")
        if ((gen < 0) | (gen >= self.field.q)).any():
            raise ValueError(f"generator entries must lie in [0, {self.field.q})")
        if linalg.rank(self.field, gen) != gen.shape[0]:
            raise ValueError("generator matrix does not have full row rank")
        gen.setflags(write=False)
        object.__setattr__(self, "gen", gen)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, n_len: int | None = None) -> LinearCode:
        rows = list(rows)
        if not rows:
            if n_len is None:
                raise ValueError("zero code needs an explicit length")
            return cls(field, np.zeros((0, n_len), dtype=np.int64))
        return cls(field, np.array(rows, dtype=np.int64))

    @property
    def n_len(self) -> int:
        return self.gen.shape[1]

    @property
    def k_dim(self) -> int:
        return self.gen.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.q**self.k_dim

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    @cached_property
    def canonical(self) -> np.ndarray:
        """Reduced row-echelon generator; equal row spaces give equal matrices."""
        if self.k_dim == 0:
            return self.gen
        return linalg.rref(self.field, self.gen)[0]

    def same_rowspace(self, other: LinearCode) -> bool:
        return (
            self.field == other.field
            and self.gen.shape == other.gen.shape
            and np.array_equal(self.canonical, other.canonical)
        )

    def contains(self, vec) -> bool:
        vec = np.asarray(vec, dtype=np.int64)
        if self.k_dim == 0:
            return not vec.any()
        return linalg.solve_left(self.field, self.gen, vec) is not None

    def encode(self, u) -> np.ndarray:
        return linalg.vecmat(self.field, u, self.gen)

    def column_rank(self, cols: Iterable[int]) -> int:
        """Rank of the generator columns at the given 0-based positions."""
        cols = list(cols)
        if not cols or self.k_dim == 0:
            return 0
        return linalg.rank(self.field, self.gen[:, cols])

    def __repr__(self) -> str:
        return f"LinearCode([{self.n_len},{self.k_dim}] over {self.field!r})"


def span_words(F: FieldSpec, basis: np.ndarray, offset=None) -> np.ndarray:
    """All words ``offset + sum(u_i * basis_i)`` in message-lexicographic order.

    The first basis row is the most significant message digit.
    """
    basis = np.asarray(basis, dtype=np.int64)
    n = basis.shape[1]
    words = np.zeros((1, n), dtype=np.int64) if offset is None else np.asarray(offset, dtype=np.int64).reshape(1, n)
    for row in basis[::-1]:
        layers = [words] + [F.add_array(words, F.scale_array(lam, row)) for lam in range(1, F.q)]
        words = np.concatenate(layers, axis=0)
    return words


def span_masks_binary(basis_masks: list[int], n: int, offset: int = 0) -> np.ndarray:
    """Binary fast path: support masks of ``offset + span(basis)`` by XOR doubling."""
    out = np.array([offset], dtype=mask_dtype(n))
    for m in reversed(basis_masks):
        out = np.concatenate([out, out ^ (np.uint64(m) if n <= 64 else m)])
    return out


def rows_to_masks(gen: np.ndarray) -> list[int]:
    return [int(m) for m in masks_from_digits(gen)]


def check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(what, size, cap)


def support_masks(C: LinearCode, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Support bitmask of every codeword, in message order."""
    check_cap(f"enumerating {C!r}", C.size, cap)
    if C.is_binary:
        return span_masks_binary(rows_to_masks(C.gen), C.n_len)
    return np.concatenate([masks_from_digits(b) for b in iter_word_blocks(C, cap)])


def iter_word_blocks(C: LinearCode, cap: int = DEFAULT_CAP, block: int = _BLOCK) -> Iterator[np.ndarray]:
    """Digit matrices of consecutive codeword runs, in message order."""
    check_cap(f"enumerating {C!r}", C.size, cap)
    F, k = C.field, C.k_dim
    if k == 0:
        yield np.zeros((1, C.n_len), dtype=np.int64)
        return
    # split messages into a high part iterated here and a low part done in numpy
    low = 0
    while low < k and F.q ** (low + 1) <= block:
        low += 1
    low = max(low, 1)
    tail = span_words(F, C.gen[k - low :])
    high = C.gen[: k - low]
    for hi in np.ndindex(*([F.q] * (k - low))):
        base = linalg.vecmat(F, hi, high) if k > low else np.zeros(C.n_len, dtype=np.int64)
        yield F.add_array(tail, base)


def enumerate_codewords(C: LinearCode, cap: int = DEFAULT_CAP) -> Iterator[Codeword]:
    """Yield each codeword once, in lexicographic order of message vectors."""
    for blk in iter_word_blocks(C, cap):
        for row in blk:
            yield Codeword(tuple(int(x) for x in row), C.field)


def weight_distribution(C: LinearCode, cap: int = DEFAULT_CAP) -> list[int]:
    w = popcount(support_masks(C, cap))
    return np.bincount(w, minlength=C.n_len + 1).tolist()


def min_distance(C: LinearCode, cap: int = DEFAULT_CAP) -> int:
    if C.k_dim == 0:
        raise ValueError("the zero code has no minimum distance")
    dist = weight_distribution(C, cap)
    return next(w for w in range(1, len(dist)) if dist[w])


def dual(C: LinearCode) -> LinearCode:
    """The dual code under the standard inner product."""
    if C.k_dim == 0:
        return LinearCode(C.field, np.eye(C.n_len, dtype=np.int64))
    return LinearCode(C.field, linalg.kernel(C.field, C.gen))


def is_self_orthogonal(C: LinearCode) -> bool:
    if C.k_dim == 0:
        return True
    return not linalg.matmul(C.field, C.gen, C.gen.T).any()


def is_self_dual(C: LinearCode) -> bool:
    return 2 * C.k_dim == C.n_len and is_self_orthogonal(C)


def restrict_support(C: LinearCode, keep: Iterable[int]) -> LinearCode:
    """Delete every column outside ``keep`` (1-based) and re-reduce the rows."""
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise ValueError("restrict_support needs a non-empty index set")
    if keep[0] < 1 or keep[-1] > C.n_len:
        raise ValueError(f"indices must lie in 1..{C.n_len}")
    sub = C.gen[:, [i - 1 for i in keep]]
    if C.k_dim == 0:
        return LinearCode(C.field, sub)
    R, _ = linalg.rref(C.field, sub)
    return LinearCode(C.field, R)


def gaussian_binomial(k: int, r: int, q: int) -> int:
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _message_index(q: int, msgs: np.ndarray) -> np.ndarray:
    k = msgs.shape[1]
    return msgs @ (q ** np.arange(k - 1, -1, -1, dtype=np.int64))


def generalized_hamming_weight(C: LinearCode, r: int, cap: int = DEFAULT_CAP) -> int:
    """Minimum support size over all r-dimensional subcodes.

    Exhaustive branch-and-bound over bases built from projectively distinct
    codewords, sorted by weight.  Exact; cost is bounded by the number of
    r-dimensional subcodes, which must not exceed ``cap``.
    """
    k, q, n = C.k_dim, C.q, C.n_len
    if not 1 <= r <= k:
        raise ValueError(f"r must lie in 1..{k}, got {r}")
    check_cap(f"{r}-dimensional subcodes of {C!r}", gaussian_binomial(k, r, q), cap)
    if r == 1:
        return min_distance(C, cap)
    if r == k:
        return len(mask_to_set(sum(1 << (i - 1) for i in range(1, n + 1) if C.gen[:, i - 1].any())))
    masks = support_masks(C, cap)
    idx = np.arange(C.size, dtype=np.int64)
    # message digits, most significant first
    msgs = (idx[:, None] // (q ** np.arange(k - 1, -1, -1, dtype=np.int64))) % q
    nonzero = msgs != 0
    first = np.argmax(nonzero, axis=1)
    proj = nonzero.any(axis=1) & (msgs[np.arange(C.size), first] == 1)
    cand = np.flatnonzero(proj)
    weights = popcount(masks[cand])
    order = np.argsort(weights, kind="stable")
    cand, weights = cand[order], weights[order]
    cmasks = masks[cand]

    best = n + 1
    F = C.field

    def span_index(rows: list[int]) -> np.ndarray:
        return _message_index(q, span_words(F, msgs[rows]))

    def dfs(start: int, chosen: list[int], union) -> None:
        nonlocal best
        depth = len(chosen)
        limit = np.searchsorted(weights, best)  # words heavier than best cannot appear
        if depth == r - 1:
            if start >= limit:
                return
            pool = np.arange(start, limit)
            inside = np.isin(cand[pool], span_index(chosen))
            pool = pool[~inside]
            if pool.size:
                best = min(best, int(popcount(cmasks[pool] | union).min()))
            return
        for t in range(start, limit):
            if t >= np.searchsorted(weights, best):
                break
            if depth and np.isin(cand[t], span_index(chosen)):
                continue
            u = cmasks[t] | union
            if int(popcount(np.array([u]))[0]) >= best:
                continue
            dfs(t + 1, chosen + [int(cand[t])], u)

    dfs(0, [], cmasks.dtype.type(0) if cmasks.dtype != object else 0)
    return best
