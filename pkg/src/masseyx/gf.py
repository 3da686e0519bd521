"""Exact arithmetic in GF(p) and GF(p^e).

Elements are plain integers in ``[0, q)``.  For extension fields the integer
holds the polynomial-basis coordinates as little-endian base-p digits, so
``value = c0 + c1*p + ... + c_{e-1}*p^(e-1)`` stands for
``c0 + c1*a + ... + c_{e-1}*a^(e-1)`` with ``a`` a root of the modulus.

Hot loops work on raw integers (or numpy arrays of them) through the
``FieldSpec`` methods; :class:`FieldElement` wraps a value for callers that
want operator syntax and field-mixing checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16

# Ascending coefficients, monic.  Every one is primitive, so ``a`` generates
# the multiplicative group; the log tables do not depend on that.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (2, 2, 1),  # x^2 + 2x + 2
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
}


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_mod(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    """Remainder of ``num`` by monic ``den`` over GF(p), ascending coefficients."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return [c % p for c in num[:dd]]


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= e/2."""
    e = len(modulus) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(list(modulus), tuple(low) + (1,), p)):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field GF(p^e).

    Build instances through :func:`make_field`; the constructor validates
    the parameters and precomputes log/antilog tables when ``e > 1``.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None
    q: int = field(init=False)
    _exp: np.ndarray | None = field(init=False, repr=False)
    _log: np.ndarray | None = field(init=False, repr=False)

    def __post_init__(self) -> None:
        p, e = self.p, self.e
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        object.__setattr__(self, "q", q)
        if e == 1:
            if self.modulus is not None:
                raise FieldError("prime fields take no modulus")
            object.__setattr__(self, "_exp", None)
            object.__setattr__(self, "_log", None)
            return
        mod = self.modulus
        if mod is None:
            raise FieldError(f"GF({p}^{e}) needs an explicit modulus")
        mod = tuple(int(c) for c in mod)
        if len(mod) != e + 1 or any(not 0 <= c < p for c in mod):
            raise FieldError(f"modulus must list {e + 1} coefficients in [0, {p})")
        if mod[-1] != 1:
            raise FieldError("modulus is not monic")
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {mod} is reducible over GF({p})")
        object.__setattr__(self, "modulus", mod)
        self._build_tables()

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        mod = self.modulus
        digits = np.array([[(v // p**i) % p for i in range(e)] for v in range(q)], dtype=np.int64)
        powers = p ** np.arange(e, dtype=np.int64)

        def times_x(v: int) -> int:
            d = list(digits[v])
            top = d[-1]
            d = [0] + d[:-1]
            return int(sum(((d[i] - top * mod[i]) % p) * p**i for i in range(e)))

        def mul_slow(a: int, b: int) -> int:
            acc = np.zeros(e, dtype=np.int64)
            cur = a
            for i in range(e):
                if digits[b][i]:
                    acc = (acc + digits[b][i] * digits[cur]) % p
                cur = times_x(cur)
            return int(acc @ powers)

        # search the smallest generator of the multiplicative group
        for g in range(2, q) if q > 2 else [1]:
            exp = np.zeros(2 * (q - 1), dtype=np.int64)
            v, seen = 1, set()
            for i in range(q - 1):
                exp[i] = v
                seen.add(v)
                v = mul_slow(v, g)
            if len(seen) == q - 1:
                break
        else:  # pragma: no cover - irreducible modulus guarantees a generator
            raise FieldError("no multiplicative generator found")
        exp[q - 1 :] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "_digits", digits)
        object.__setattr__(self, "_powers", powers)

    # identity / hashing by parameters so equal fields compare equal
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={self.modulus})"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def header(self) -> str:
        """The ``field p e c0 ... ce`` line used by the file formats."""
        parts = ["field", str(self.p), str(self.e)]
        if self.e > 1:
            parts += [str(c) for c in self.modulus]
        return " ".join(parts)

    # --- scalar arithmetic on raw values -------------------------------
    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        return int(self._add_digits(np.int64(x), np.int64(y)))

    def neg(self, x: int) -> int:
        if self.e == 1:
            return (-x) % self.p
        if self.p == 2:
            return x
        return int(self.neg_array(np.int64(x)))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x * y) % self.p
        if x == 0 or y == 0:
            return 0
        return int(self._exp[self._log[x] + self._log[y]])

    def inv(self, x: int) -> int:
        if x % self.q == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(x, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)])

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(x), -k)
        if self.e == 1:
            return pow(x, k, self.p)
        if x == 0:
            return 1 if k == 0 else 0
        return int(self._exp[(self._log[x] * k) % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)

    # --- vectorized arithmetic on numpy arrays -------------------------
    def _add_digits(self, x, y):
        p, out, scale = self.p, 0, 1
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        for _ in range(self.e):
            out = out + ((x % p + y % p) % p) * scale
            x, y, scale = x // p, y // p, scale * p
        return out

    def add_array(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        return self._add_digits(x, y)

    def neg_array(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.e == 1:
            return (-x) % self.p
        if self.p == 2:
            return x.copy()
        p, out, scale = self.p, 0, 1
        for _ in range(self.e):
            out = out + ((-(x % p)) % p) * scale
            x, scale = x // p, scale * p
        return out

    def scale_array(self, c: int, x):
        """Multiply every entry of ``x`` by the scalar ``c``."""
        x = np.asarray(x, dtype=np.int64)
        if self.e == 1:
            return (c * x) % self.p
        if c == 0:
            return np.zeros_like(x)
        lx = self._log[x]
        return np.where(x == 0, 0, self._exp[lx + self._log[c]])

    def mul_array(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.e == 1:
            return (x * y) % self.p
        prod = self._exp[self._log[x] + self._log[y]]
        return np.where((x == 0) | (y == 0), 0, prod)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} is not an element of {self.field!r}")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"cannot combine elements of {self.field!r} and {other.field!r}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self * other.inverse()

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, k: int) -> FieldElement:
        return FieldElement(self.field.pow(self.value, k), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@{self.field!r}"


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Return a validated ``FieldSpec`` for GF(p^e).

    ``modulus`` lists the coefficients of a monic irreducible polynomial in
    ascending order.  When omitted for ``e > 1`` a built-in default is used;
    only GF(4), GF(8), GF(9), GF(16) and GF(27) have one.
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    if e > 1 and modulus is None:
        if (p, e) not in DEFAULT_MODULI:
            raise FieldError(f"no built-in modulus for GF({p}^{e}); supply one explicitly")
        modulus = DEFAULT_MODULI[(p, e)]
    return FieldSpec(p, e, modulus)


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def parse_header(line: str) -> FieldSpec:
    """Inverse of :meth:`FieldSpec.header`."""
    parts = line.split()
    if not parts or parts[0] != "field" or len(parts) < 3:
        raise FieldError(f"malformed field header: {line!r}")
    p, e = int(parts[1]), int(parts[2])
    coeffs = tuple(int(c) for c in parts[3:])
    if e == 1 and coeffs:
        raise FieldError("prime field header must not carry a modulus")
    if e > 1 and len(coeffs) != e + 1:
        raise FieldError(f"field header needs {e + 1} modulus coefficients")
    return make_field(p, e, coeffs or None)
