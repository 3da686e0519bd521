"""Pinned reproductions of the worked examples.

Each target returns a :class:`Check`; the CLI ``reproduce`` command and the
test suite both call these functions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import catalog
from .access import enumerate_access_structure
from .code import DEFAULT_CAP, dual
from .enumpoly import (
    count_bound,
    joint_weight_enumerator,
    parse_pretty,
    secret_coefficient,
    verify_exact_count,
)
from .scheme import make_scheme

HAMMING_BIWEIGHT = (
    "x_3^8+14x_2^4x_3^4+x_2^8+14x_3^4x_1^4+14x_2^4x_1^4+x_1^8+168x_0^2x_1^2x_2^2x_3^2"
    "+14x_3^4x_0^4+14x_2^4x_0^4+14x_1^4x_0^4+x_0^8"
)
HAMMING_Z = "4x_1^3x_2^3 + 12 x_0^2x_1x_2x_3^2"
GOLAY_Z = """
6160x_0^{12}x_1^3x_2^3x_3^4 + 22176x_0^{10}x_1^5x_2^5x_3^2+
7392x_0^{10}x_1^5x_2x_3^6 + 7392x_0^{10}x_1x_2^5x_3^6+
2640x_0^8x_1^7x_2^7 + 73920x_0^8x_1^7x_2^3x_3^4+
73920x_0^8x_1^3x_2^7x_3^4 + 36960x_0^8x_1^3x_2^3x_3^8+
36960x_0^6x_1^9x_2^5x_3^2 + 12320x_0^6x_1^9x_2x_3^6+
36960x_0^6x_1^5x_2^9x_3^2 + 266112x_0^6x_1^5x_2^5x_3^6+
7392x_0^6x_1^5x_2x_3^{10} + 12320x_0^6x_1x_2^9x_3^6+
7392x_0^6x_1x_2^5x_3^{10} + 18480x_0^4x_1^{11}x_2^3x_3^4+
147840x_0^4x_1^7x_2^7x_3^4 + 73920x_0^4x_1^7x_2^3x_3^8+
18480x_0^4x_1^3x_2^{11}x_3^4 + 73920x_0^4x_1^3x_2^7x_3^8+
6160x_0^4x_1^3x_2^3x_3^{12} + 36960x_0^2x_1^9x_2^5x_3^6+
36960x_0^2x_1^5x_2^9x_3^6 + 22176x_0^2x_1^5x_2^5x_3^{10} + 176x_1^{15}x_2^7+
672x_1^{11}x_2^{11} + 176x_1^7x_2^{15} + 2640x_1^7x_2^7x_3^8
"""


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details, "seconds": round(self.seconds, 3)}


def _hist(h):
    return {int(k): int(v) for k, v in (h or {}).items()}


def example1(cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    S = make_scheme(dual(catalog.load("c1_ternary").code), 2, cap)
    rep = enumerate_access_structure(S, cap, backend="tuples", with_bounds=False, threads=threads)
    got = _hist(rep.histogram)
    return Check("example1", got == {5: 4, 6: 1} and S.n == 6, {"histogram": got, "participants": S.n})


def example2(cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    S = make_scheme(catalog.load("hamming8").code, 3, cap)
    rep = enumerate_access_structure(S, cap, backend="tuples", with_bounds=False, threads=threads)
    got = _hist(rep.histogram)
    return Check("example2", got == {4: 4, 5: 1} and S.n == 5, {"histogram": got, "participants": S.n})


def hamming_z(cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    C = catalog.load("hamming8").code
    J = joint_weight_enumerator([C, C], cap, threads)
    S = make_scheme(C, 2, cap)
    Z = secret_coefficient(S, cap, threads)
    bound = count_bound(Z, 4, 4)
    ok = J == parse_pretty(HAMMING_BIWEIGHT, 4) and Z == parse_pretty(HAMMING_Z, 4) and bound == (12, True)
    return Check("hamming-z", ok, {"biweight_terms": len(J), "Z": Z.pretty(), "count_bound_m4": list(bound)})


def golay_z(cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    S = make_scheme(catalog.load("golay24").code, 2, cap)
    Z = secret_coefficient(S, cap, threads)
    expected = parse_pretty(GOLAY_Z, 4)
    return Check("golay-z", Z == expected and len(expected) == 28, {"terms": len(Z), "Z": Z.pretty()})


def golay_m10(cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    S = make_scheme(catalog.load("golay24").code, 2, cap)
    Z = secret_coefficient(S, cap, threads)
    bound = count_bound(Z, 10, 8)
    exact = verify_exact_count(S, 10, cap, threads)
    return Check("golay-m10", bound == (6160, True) and exact == (6160, True),
                 {"count_bound": list(bound), "count": exact[0], "certified": exact[1]})


def golay_m12(cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    S = make_scheme(catalog.load("golay24").code, 2, cap)
    Z = secret_coefficient(S, cap, threads)
    bound = count_bound(Z, 12, 8)
    count, certified = verify_exact_count(S, 12, cap, threads)
    return Check("golay-m12", bound == (36960, False) and (count, certified) == (36960, True),
                 {"count_bound": list(bound), "count": count, "certified": certified})


TARGETS: dict[str, Callable[..., Check]] = {
    "example1": example1,
    "example2": example2,
    "hamming-z": hamming_z,
    "golay-z": golay_z,
    "golay-m10": golay_m10,
    "golay-m12": golay_m12,
}


def run(name: str, cap: int = DEFAULT_CAP, threads: int = 1) -> Check:
    t0 = time.perf_counter()
    check = TARGETS[name](cap, threads)
    check.seconds = time.perf_counter() - t0
    return check
