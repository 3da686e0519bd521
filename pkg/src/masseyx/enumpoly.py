"""Joint weight enumerators and the polynomials derived from them.

A g-fold enumerator lives in ``2**g`` variables ``x_0 .. x_{2^g - 1}``.  The
variable for a zero/nonzero pattern ``(a_1, ..., a_g)`` has the index whose
binary expansion is ``a_1 a_2 ... a_g`` with ``a_1`` (the first argument)
most significant, so for ``g = 4`` the pattern ``1010`` is ``x_10``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .access import prefix_masks, prefix_words, tuple_count
from .code import (
    DEFAULT_CAP,
    LinearCode,
    check_cap,
    dual,
    is_self_orthogonal,
    mask_to_set,
    masks_from_digits,
    min_distance,
    popcount,
    restrict_support,
    rows_to_masks,
    span_masks_binary,
    span_words,
    support_masks,
)
from . import linalg
from .scheme import SchemeInstance

Exponent = tuple[int, ...]


def _order_key(exp: Exponent):
    return (-sum(exp), tuple(-e for e in exp))


class SparseEnumerator:
    """Polynomial with integer coefficients in ``2**g`` variables.

    Terms are stored as ``{exponent tuple: coefficient}`` with zero
    coefficients dropped.  Iteration and serialization use graded
    lexicographic order, highest degree and largest leading exponent first.
    """

    def __init__(self, g: int, terms: Mapping[Exponent, int] | None = None, nvars: int | None = None):
        self.g = g
        self.nvars = nvars if nvars is not None else 1 << g
        self.terms: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent vector {exp} for {self.nvars} variables")
            c = int(c)
            if c:
                self.terms[exp] = self.terms.get(exp, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def from_counter(cls, g: int, counts: Counter) -> SparseEnumerator:
        return cls(g, dict(counts))

    def items(self) -> list[tuple[Exponent, int]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseEnumerator):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other: SparseEnumerator) -> SparseEnumerator:
        if self.nvars != other.nvars:
            raise ValueError("cannot add polynomials in different variable sets")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparseEnumerator(self.g, out, self.nvars)

    def scale(self, c: int) -> SparseEnumerator:
        return SparseEnumerator(self.g, {e: c * v for e, v in self.terms.items()}, self.nvars)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def evaluate(self, values: Sequence[int]) -> int:
        return sum(c * math.prod(v**e for v, e in zip(values, exp)) for exp, c in self.terms.items())

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def specialize(self, merge: Mapping[int, int]) -> SparseEnumerator:
        """Substitute ``x_i -> x_merge[i]`` and collect terms.

        Variables missing from ``merge`` map to themselves.
        """
        out: dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exp):
                new[merge.get(i, i)] += e
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return SparseEnumerator(self.g, out, self.nvars)

    def permute(self, perm: Sequence[int]) -> SparseEnumerator:
        """Rename ``x_i`` to ``x_perm[i]`` (``perm`` must be a permutation)."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation of the variables")
        return self.specialize(dict(enumerate(perm)))

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> SparseEnumerator:
        terms = {tuple(t["exp"]): int(t["coef"]) for t in doc["terms"]}
        g = int(doc["g"])
        nvars = len(next(iter(terms))) if terms else 1 << g
        return cls(g, terms, nvars)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "".join(f"x_{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SparseEnumerator(g={self.g}, {self.pretty()})"


def parse_pretty(text: str, nvars: int, g: int | None = None) -> SparseEnumerator:
    """Parse ``c x_i^e x_j ... + ...`` notation (LaTeX braces allowed)."""
    import re

    text = text.replace("{", "").replace("}", "").replace(" ", "").replace("\n", "")
    terms: dict[Exponent, int] = {}
    for chunk in filter(None, text.split("+")):
        m = re.match(r"^(\d*)(.*)$", chunk)
        coef = int(m.group(1)) if m.group(1) else 1
        exp = [0] * nvars
        for var, power in re.findall(r"x_(\d+)(?:\^(\d+))?", m.group(2)):
            exp[int(var)] += int(power) if power else 1
        terms[tuple(exp)] = terms.get(tuple(exp), 0) + coef
    if g is None:
        g = max(1, (nvars - 1).bit_length())
    return SparseEnumerator(g, terms, nvars)


# --- joint weight enumerators --------------------------------------------------


@dataclass(frozen=True)
class FixedVector:
    """A single vector used as a one-element argument of a joint enumerator."""

    coords: tuple[int, ...]

    @classmethod
    def indicator(cls, n_len: int, positions: Iterable[int]) -> FixedVector:
        pos = set(positions)
        return cls(tuple(1 if i in pos else 0 for i in range(1, n_len + 1)))

    def __len__(self) -> int:
        return len(self.coords)


def _full(n: int):
    return np.uint64((1 << n) - 1) if n <= 64 else (1 << n) - 1


def _as_masks(arg, cap: int) -> tuple[np.ndarray, int]:
    if isinstance(arg, LinearCode):
        return support_masks(arg, cap), arg.n_len
    if isinstance(arg, FixedVector):
        n = len(arg)
        return masks_from_digits(np.array([arg.coords], dtype=np.int64)), n
    raise TypeError(f"joint enumerator arguments must be LinearCode or FixedVector, not {type(arg).__name__}")


def pattern_counts(mask_lists: Sequence[np.ndarray], n: int, threads: int = 1) -> Counter:
    """Exponent-vector counts over all tuples drawn from ``mask_lists``.

    The first ``g - 1`` coordinates of each tuple are iterated in Python and
    the last is vectorized; the first list is split across ``threads``.
    """
    g = len(mask_lists)
    full = _full(n)
    last = mask_lists[-1]
    half = 1 << (g - 1)
    base = n + 1
    encodable = base**half < (1 << 62)
    weights = base ** np.arange(half - 1, -1, -1, dtype=np.int64) if encodable else None

    def one_prefix(prefix, acc: Counter) -> None:
        # P_b: positions whose pattern on the first g-1 arguments is b
        cols_on = []
        for b in range(half):
            P = full
            for j, s in enumerate(prefix):
                bit = (b >> (g - 2 - j)) & 1
                P = P & (s if bit else (~s & full))
            cols_on.append(P)
        sizes = [int(P).bit_count() for P in cols_on]
        on = np.stack([popcount(last & P) for P in cols_on], axis=1)
        if encodable:
            keys, cnt = np.unique(on @ weights, return_counts=True)
            rows = (keys[:, None] // weights[None, :]) % base
        else:
            rows, cnt = np.unique(on, axis=0, return_counts=True)
        for row, c in zip(rows.tolist(), cnt.tolist()):
            exp = [0] * (2 * half)
            for b in range(half):
                exp[2 * b + 1] = row[b]
                exp[2 * b] = sizes[b] - row[b]
            key = tuple(exp)
            acc[key] += c

    def run(first_chunk) -> Counter:
        acc: Counter = Counter()
        if g == 1:
            w = popcount(last)
            for wt, c in zip(*np.unique(w, return_counts=True)):
                acc[(n - int(wt), int(wt))] += int(c)
            return acc
        for s0 in first_chunk:
            for rest in product(*mask_lists[1:-1]):
                one_prefix((s0,) + rest, acc)
        return acc

    if g == 1 or threads <= 1:
        return run(mask_lists[0])
    chunks = [c for c in np.array_split(mask_lists[0], threads) if c.size]
    total: Counter = Counter()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(run, chunks):
            total.update(part)
    return total


def joint_weight_enumerator(args: Sequence, cap: int = DEFAULT_CAP, threads: int = 1) -> SparseEnumerator:
    """The g-fold joint weight enumerator of codes and fixed vectors."""
    if not args:
        raise ValueError("need at least one argument")
    lists, lengths = zip(*(_as_masks(a, cap) for a in args))
    if len(set(lengths)) != 1:
        raise ValueError(f"arguments have different lengths {sorted(set(lengths))}")
    check_cap("joint enumerator tuples", math.prod(len(m) for m in lists), cap)
    return SparseEnumerator.from_counter(len(args), pattern_counts(list(lists), lengths[0], threads))


def secret_coefficient(S: SchemeInstance, cap: int = DEFAULT_CAP, threads: int = 1) -> SparseEnumerator:
    """Coefficient of the prefix-selecting monomial in the 2l-fold enumerator.

    Computed directly as the l-fold enumerator, over the participant
    coordinates, of the sets of dual codewords with prefix exactly ``e_j``.
    Variable ``x_a`` (``0 <= a < 2^l``) counts positions where the tuple's
    zero/nonzero pattern reads ``a`` with ``v_1`` most significant.
    """
    check_cap("dual codeword tuples", tuple_count(S), cap)
    l = S.l
    if tuple_count(S) == 0:
        return SparseEnumerator(l, {})
    parts = [np.right_shift(m, np.uint64(l)) if m.dtype != object else np.array([int(x) >> l for x in m], dtype=object)
             for m in prefix_masks(S, cap)]
    return SparseEnumerator.from_counter(l, pattern_counts(parts, S.n, threads))


def full_secret_coefficient(S: SchemeInstance, cap: int = DEFAULT_CAP) -> SparseEnumerator:
    """The same polynomial read off the full ``J(1_T1, .., 1_Tl, C^perp, .., C^perp)``.

    Only feasible for small duals; used as a cross-check.  For ``q > 2`` the
    literal coefficient also counts nonzero multiples of ``e_j`` in the
    prefix, so it equals ``(q - 1)^l`` times :func:`secret_coefficient`.
    """
    l, N = S.l, S.code.n_len
    args = [FixedVector.indicator(N, [j]) for j in range(1, l + 1)] + [S.dual_code] * l
    J = joint_weight_enumerator(args, cap)
    x2 = {(1 << (l - j)) * (1 << l) + (1 << (l - j)) for j in range(1, l + 1)}
    out: dict[Exponent, int] = {}
    for exp, c in J.terms.items():
        if any(exp[a] != 1 for a in x2):
            continue
        if any(exp[a] for a in range(1 << l, 1 << (2 * l)) if a not in x2):
            continue
        key = tuple(exp[: 1 << l])
        out[key] = out.get(key, 0) + c
    return SparseEnumerator(l, out)


def count_bound(p: SparseEnumerator, m: int, d_perp: int) -> tuple[int, bool]:
    """Tuple count with exactly ``m`` participants and whether it is exact.

    Exactness holds when ``m < 3/2 d_perp - 1``.
    """
    bound = sum(c for exp, c in p.terms.items() if sum(exp[1:]) == m)
    return bound, 2 * m < 3 * d_perp - 2


# --- code extension enumerator ---------------------------------------------------


@dataclass(frozen=True)
class ExtensionEnumerator:
    """``P_D(t)`` as ``{degree: count}``; ``zero_degree`` is the zero coset's term."""

    terms: dict[int, int]
    zero_degree: int
    nonzero_terms: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.terms.values())

    @property
    def degree(self) -> int:
        return max(self.terms)

    def pretty(self) -> str:
        return " + ".join(
            (f"{c}" if c != 1 else "") + (f"t^{d}" if d != 1 else "t") for d, c in sorted(self.terms.items(), reverse=True)
        )

    def as_dict(self) -> dict:
        return {
            "terms": {str(d): c for d, c in sorted(self.terms.items())},
            "zero_coset_degree": self.zero_degree,
            "nonzero_terms": {str(d): c for d, c in sorted(self.nonzero_terms.items())},
            "pretty": self.pretty(),
        }


def extension_enumerator(D: LinearCode, cap: int = DEFAULT_CAP) -> ExtensionEnumerator:
    """Sum of ``t^d(<c, D>)`` over representatives ``c`` of ``D^perp / D``.

    For ``c`` outside ``D`` the distance of ``<c, D>`` is the smaller of
    ``d(D)`` and the minimum weight of the coset ``c + D`` (scalar multiples
    of a coset have the same weights).
    """
    if D.k_dim == 0:
        raise ValueError("extension enumerator needs a nonzero code")
    if not is_self_orthogonal(D):
        raise ValueError("extension enumerator needs a self-orthogonal code")
    N, k, q = D.n_len, D.k_dim, D.q
    check_cap("dual words of the extended code", q ** (N - k), cap)
    R, pivots = linalg.rref(D.field, D.gen)
    Dp = dual(D)
    if D.is_binary:
        words = span_masks_binary(rows_to_masks(Dp.gen), N)
        weights = popcount(words)
        reps = words
        for row, pc in zip(rows_to_masks(R), pivots):
            bit = words.dtype.type(1 << pc) if words.dtype != object else 1 << pc
            hit = (reps & bit) != 0
            reps = np.where(hit, reps ^ (words.dtype.type(row) if words.dtype != object else row), reps)
        keys = reps
    else:
        F = D.field
        words = span_words(F, Dp.gen)
        weights = popcount(masks_from_digits(words))
        reps = words.copy()
        for row, pc in zip(R, pivots):
            coef = reps[:, pc].copy()
            reps = F.add_array(reps, F.neg_array(F.mul_array(coef[:, None], row[None, :])))
        _, keys = np.unique(reps, axis=0, return_inverse=True)
        keys = keys.ravel()
    uniq, inverse = np.unique(keys, return_inverse=True)
    coset_min = np.full(uniq.size, N + 1, dtype=np.int64)
    np.minimum.at(coset_min, inverse.ravel(), weights)
    zero_index = int(np.searchsorted(uniq, uniq.dtype.type(0))) if keys.dtype != object else list(uniq).index(0)
    dD = min_distance(D, cap)
    if uniq.size != q ** (N - 2 * k):  # pragma: no cover - guarded by the rank identity
        raise AssertionError("coset count mismatch")
    degrees = np.minimum(coset_min, dD)
    degrees[zero_index] = dD
    nonzero = np.delete(degrees, zero_index)
    terms = Counter(degrees.tolist())
    return ExtensionEnumerator(dict(sorted(terms.items())), dD, dict(sorted(Counter(nonzero.tolist()).items())))


def verify_exact_count(
    S: SchemeInstance, m: int, cap: int = DEFAULT_CAP, threads: int = 1
) -> tuple[int, bool]:
    """Count access groups of size ``m`` exactly and test the exactness certificate.

    Every tuple ``(v_1..v_l)`` whose participant union has ``m`` elements
    is turned into the code spanned by the ``v_j`` on their joint support;
    the certificate holds when, for every such code, each nonzero coset term
    of its extension enumerator has degree below ``d^perp``.
    """
    if not is_self_orthogonal(S.code):
        raise ValueError("exact-count certification needs a self-orthogonal scheme code")
    check_cap("dual codeword tuples", tuple_count(S), cap)
    l = S.l
    d_perp = min_distance(S.dual_code, cap)
    words = [prefix_words(S, j, cap) for j in range(1, l + 1)]
    masks = [masks_from_digits(w) for w in words]
    if any(len(w) == 0 for w in words):
        return 0, True
    part = (1 << S.code.n_len) - (1 << l)

    # tuples whose participant union has size m, as index tuples
    hits: list[tuple[int, ...]] = []
    for head in product(*[range(len(w)) for w in words[:-1]]):
        u = 0
        for j, i in enumerate(head):
            u |= int(masks[j][i])
        unions = masks[-1] | (np.uint64(u) if masks[-1].dtype != object else u)
        sizes = popcount(unions & (np.uint64(part) if masks[-1].dtype != object else part))
        for i in np.flatnonzero(sizes == m):
            hits.append(head + (int(i),))

    supports: set[int] = set()

    def certify(batch: list[tuple[int, ...]]) -> tuple[set[int], bool]:
        seen, ok = set(), True
        for tup in batch:
            rows = np.stack([words[j][i] for j, i in enumerate(tup)])
            full = 0
            for j, i in enumerate(tup):
                full |= int(masks[j][i])
            seen.add(full & part)
            D = restrict_support(LinearCode(S.field, rows), mask_to_set(full))
            P = extension_enumerator(D, cap)
            if any(deg >= d_perp for deg in P.nonzero_terms):
                ok = False
        return seen, ok

    certified = True
    if threads <= 1:
        supports, certified = certify(hits)
    else:
        batches = [hits[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for seen, ok in pool.map(certify, batches):
                supports |= seen
                certified &= ok
    return len(supports), certified


def derivative_Z(biweight: SparseEnumerator, n_len: int) -> SparseEnumerator:
    """Mixed partial in the 01- and 10-pattern variables, divided by ``n(n-1)``.

    Raises ``ValueError`` when a coefficient is not divisible, which means
    the input cannot come from a code with a 2-transitive automorphism group.
    """
    if biweight.nvars != 4:
        raise ValueError("derivative_Z needs a 2-fold enumerator")
    denom = n_len * (n_len - 1)
    if denom <= 0:
        raise ValueError("length must be at least 2")
    out: dict[Exponent, int] = {}
    for (i, j, k, l), a in biweight.terms.items():
        if j == 0 or k == 0:
            continue
        num = j * k * a
        if num % denom:
            raise ValueError(f"coefficient {num} of x_0^{i}x_1^{j - 1}x_2^{k - 1}x_3^{l} is not divisible by {denom}")
        out[(i, j - 1, k - 1, l)] = num // denom
    return SparseEnumerator(2, out)
