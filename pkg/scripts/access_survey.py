"""Access structures, bounds and enumerator counts for the catalog schemes.

For each code (and its dual) and each admissible secret length, print the
histogram of tuple-union supports next to the bound read off the secret
coefficient, plus the four participant-count bounds.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from masseyx import catalog
from masseyx.access import enumerate_access_structure
from masseyx.code import dual, min_distance
from masseyx.enumpoly import count_bound, secret_coefficient
from masseyx.scheme import SchemeError, make_scheme


@dataclass
class Config:
    max_participants: int = 12
    max_l: int = 4
    golay_max_size: int = 12


def schemes(cfg: Config):
    for name in catalog.names():
        base = catalog.load(name).code
        for label, C in ((name, base), (f"dual:{name}", dual(base))):
            if C.k_dim == 0 or (label.startswith("dual:") and catalog.load(name).self_dual):
                continue
            for l in range(1, cfg.max_l + 1):
                try:
                    yield label, make_scheme(C, l)
                except SchemeError:
                    continue


def main(cfg: Config) -> None:
    for label, S in schemes(cfg):
        max_size = None if S.n <= cfg.max_participants else cfg.golay_max_size
        if max_size is not None and S.l != 2:
            continue
        rep = enumerate_access_structure(S, max_size=max_size, ghw=S.n <= cfg.max_participants or S.l <= 2)
        Z = secret_coefficient(S)
        d_perp = min_distance(S.dual_code)
        print(f"{label} l={S.l} n={S.n} d={S.d} d_perp={d_perp}")
        print(f"  bounds      {rep.bounds.as_dict()}")
        print(f"  minimal     {rep.minimal_histogram}")
        for m, count in sorted((rep.histogram or {}).items()):
            bound, exact = count_bound(Z, m, d_perp)
            print(f"  m={m:<3} unions={count:<7} bound={bound:<7} exact={exact}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-l", type=int, default=4)
    args = ap.parse_args()
    main(Config(max_l=args.max_l))
