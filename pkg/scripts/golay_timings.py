"""Wall-clock timings of the Golay computations."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from masseyx import catalog
from masseyx.code import generalized_hamming_weight
from masseyx.enumpoly import SparseEnumerator, derivative_Z, joint_weight_enumerator, secret_coefficient, verify_exact_count
from masseyx.scheme import make_scheme


@dataclass
class Config:
    threads: int = 1
    certify_sizes: tuple[int, ...] = (10, 12)


def timed(label, fn):
    t0 = time.perf_counter()
    out = fn()
    shown = f"{len(out)} terms" if isinstance(out, SparseEnumerator) else out
    print(f"{label:<34} {time.perf_counter() - t0:8.2f}s  {shown}")
    return out


def main(cfg: Config) -> None:
    g = catalog.load("golay24").code
    S = make_scheme(g, 2)
    timed("d_2 of the code", lambda: generalized_hamming_weight(g, 2))
    Z = timed("secret coefficient", lambda: len(secret_coefficient(S, threads=cfg.threads)))
    bw = timed("biweight enumerator (4096^2 pairs)", lambda: joint_weight_enumerator([g, g], threads=cfg.threads))
    timed("derivative of the biweight", lambda: len(derivative_Z(bw, 24)) == Z)
    for m in cfg.certify_sizes:
        timed(f"exact count certification m={m}", lambda m=m: verify_exact_count(S, m, threads=cfg.threads))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--m", type=int, nargs="*", default=[10, 12])
    args = ap.parse_args()
    main(Config(args.threads, tuple(args.m)))
