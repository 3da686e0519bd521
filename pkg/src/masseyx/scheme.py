"""Dealer and reconstructor for the multi-symbol Massey scheme.

A secret ``s`` of length ``l`` is placed in the first ``l`` coordinates of a
codeword ``c = uG`` of an ``[l + n, k, d]`` code; participant ``P_i``
(1-based) receives ``c[l + i]``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .code import DEFAULT_CAP, LinearCode, dual, min_distance, span_words

Secret = tuple[int, ...]


class SchemeError(ValueError):
    """The code and secret length do not form a valid scheme."""


class NotAuthorized(Exception):
    """The group cannot determine the whole secret from its shares."""


class InconsistentShares(ValueError):
    """The supplied shares do not extend to any codeword."""


@dataclass(frozen=True, eq=False)
class SchemeInstance:
    code: LinearCode
    l: int
    d: int
    _coefficients: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def n(self) -> int:
        return self.code.n_len - self.l

    @property
    def field(self):
        return self.code.field

    @cached_property
    def dual_code(self) -> LinearCode:
        return dual(self.code)

    def participant_columns(self, group: Iterable[int]) -> list[int]:
        """0-based generator columns held by the given 1-based participants."""
        cols = []
        for i in group:
            i = int(i)
            if not 1 <= i <= self.n:
                raise ValueError(f"participant index {i} outside 1..{self.n}")
            cols.append(self.l + i - 1)
        return cols

    def __repr__(self) -> str:
        return f"SchemeInstance(l={self.l}, n={self.n}, d={self.d}, code={self.code!r})"


@dataclass(frozen=True)
class ShareVector:
    shares: tuple[int, ...]
    codeword: tuple[int, ...]

    def as_dict(self) -> dict[int, int]:
        return {i + 1: v for i, v in enumerate(self.shares)}


def make_scheme(C: LinearCode, l: int, cap: int = DEFAULT_CAP) -> SchemeInstance:
    if not 1 <= l < C.n_len:
        raise SchemeError(f"secret length must lie in 1..{C.n_len - 1}, got {l}")
    if C.column_rank(range(l)) != l:
        raise SchemeError(f"the first {l} generator columns are linearly dependent")
    d = min_distance(C, cap)
    if d <= l:
        raise SchemeError(f"minimum distance {d} does not exceed the secret length {l}")
    return SchemeInstance(C, l, d)


def _check_secret(S: SchemeInstance, secret) -> np.ndarray:
    s = np.asarray(tuple(int(x) for x in secret), dtype=np.int64)
    if s.shape != (S.l,):
        raise ValueError(f"secret must have length {S.l}")
    if ((s < 0) | (s >= S.field.q)).any():
        raise ValueError(f"secret entries must lie in [0, {S.field.q})")
    return s


def deal(S: SchemeInstance, secret, seed: int = 0) -> ShareVector:
    """Share ``secret`` with randomness drawn from ``numpy.random.default_rng(seed)``.

    The message ``u`` is uniform over all solutions of ``u G_i = s_i`` for
    ``i <= l``: a fixed particular solution plus a uniformly random element
    of the left kernel of the first ``l`` columns.
    """
    s = _check_secret(S, secret)
    F, G = S.field, S.code.gen
    u0 = linalg.solve_left(F, G[:, : S.l], s)
    if u0 is None:  # pragma: no cover - excluded by make_scheme
        raise SchemeError("secret is not dealable")
    K = linalg.left_kernel(F, G[:, : S.l])
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, F.q, size=K.shape[0])
    u = u0
    for c, row in zip(coeffs, K):
        u = F.add_array(u, F.scale_array(int(c), row))
    c = S.code.encode(u)
    return ShareVector(tuple(int(x) for x in c[S.l :]), tuple(int(x) for x in c))


def iter_dealings(S: SchemeInstance) -> Iterator[tuple[Secret, tuple[int, ...]]]:
    """Every (secret, shares) pair over all q^k messages."""
    for c in span_words(S.field, S.code.gen):
        yield tuple(int(x) for x in c[: S.l]), tuple(int(x) for x in c[S.l :])


def prefix_dual_word(S: SchemeInstance, j: int, group: Iterable[int]) -> np.ndarray | None:
    """A dual codeword with first ``l`` coordinates ``e_j`` supported on ``{j} + group``.

    ``j`` is 1-based; returns None when no such word exists.
    """
    H = S.dual_code.gen
    N = S.code.n_len
    allowed = set(range(S.l)) | set(S.participant_columns(group))
    fixed = list(range(S.l)) + [c for c in range(S.l, N) if c not in allowed]
    target = np.zeros(len(fixed), dtype=np.int64)
    target[j - 1] = 1
    if H.shape[0] == 0:
        return None
    y = linalg.solve_left(S.field, H[:, fixed], target)
    if y is None:
        return None
    return linalg.vecmat(S.field, y, H)


def reconstruction_coefficients(S: SchemeInstance, group: Iterable[int]) -> list[np.ndarray] | None:
    """Dual words ``v_1..v_l`` certifying that ``group`` is authorized, or None."""
    key = tuple(sorted(set(int(i) for i in group)))
    if key not in S._coefficients:
        out = []
        for j in range(1, S.l + 1):
            v = prefix_dual_word(S, j, key)
            if v is None:
                out = None
                break
            out.append(v)
        S._coefficients[key] = out
    return S._coefficients[key]


def _parity_rows(S: SchemeInstance, key: tuple[int, ...]) -> np.ndarray:
    """Rows ``y`` with ``G_B y = 0``; share vectors on ``B`` are exactly their annihilator."""
    ck = ("parity",) + key
    if ck not in S._coefficients:
        S._coefficients[ck] = linalg.kernel(S.field, S.code.gen[:, S.participant_columns(key)])
    return S._coefficients[ck]


def reconstruct_batch(S: SchemeInstance, group: Iterable[int], shares: np.ndarray) -> np.ndarray:
    """Vectorized :func:`reconstruct` for many share rows on one group.

    ``shares`` has one row per dealing, with columns in increasing
    participant order.  Returns an array of secrets, one row each.
    """
    group = sorted(set(int(i) for i in group))
    F = S.field
    vals = np.asarray(shares, dtype=np.int64)
    if vals.ndim == 1:
        vals = vals.reshape(1, -1)
    if vals.shape[1] != len(group):
        raise ValueError(f"expected {len(group)} share columns, got {vals.shape[1]}")
    if ((vals < 0) | (vals >= F.q)).any():
        raise ValueError(f"share values must lie in [0, {F.q})")
    cols = S.participant_columns(group)
    key = tuple(group)
    P = _parity_rows(S, key)
    if P.shape[0] and linalg.matmul(F, vals, P.T).any():
        raise InconsistentShares("shares do not extend to a codeword")
    words = reconstruction_coefficients(S, key)
    if words is None:
        raise NotAuthorized(f"group {group} cannot determine the secret")
    # c . v_j = 0 and v_j restricted to the prefix is e_j, so c_j = -sum v_j[col] c[col]
    V = np.stack([v[cols] for v in words])
    return F.neg_array(linalg.matmul(F, vals, V.T))


def reconstruct(S: SchemeInstance, group: Iterable[int], shares: Mapping[int, int]) -> Secret:
    """Recover the secret from the shares of ``group``.

    Raises :class:`InconsistentShares` if the shares are not the restriction
    of any codeword and :class:`NotAuthorized` if the group cannot determine
    every secret symbol.
    """
    group = sorted(set(int(i) for i in group))
    shares = {int(k): int(v) for k, v in shares.items()}
    if set(shares) != set(group):
        raise ValueError("shares must be given for exactly the participants in the group")
    row = np.array([[shares[i] for i in group]], dtype=np.int64)
    return tuple(int(x) for x in reconstruct_batch(S, group, row)[0])


def cheater_capacity(S: SchemeInstance) -> int:
    return (S.d - S.l) // 2


def information_rate(S: SchemeInstance) -> int:
    return S.l
