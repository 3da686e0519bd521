"""Run every pinned reproduction target and print a pass/fail table."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from masseyx import reproduce
from masseyx.code import DEFAULT_CAP


@dataclass
class Config:
    targets: tuple[str, ...] = tuple(reproduce.TARGETS)
    threads: int = 1
    cap: int = DEFAULT_CAP


def main(cfg: Config) -> int:
    failed = 0
    for name in cfg.targets:
        check = reproduce.run(name, cfg.cap, cfg.threads)
        failed += not check.passed
        status = "pass" if check.passed else "FAIL"
        print(f"{name:<10} {status}  {check.seconds:7.2f}s  {check.details if name != 'golay-z' else ''}")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("targets", nargs="*", help=f"subset of {', '.join(reproduce.TARGETS)}")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    cfg = Config(threads=args.threads)
    unknown = set(args.targets) - set(reproduce.TARGETS)
    if unknown:
        ap.error(f"unknown targets: {', '.join(sorted(unknown))}")
    if args.targets:
        cfg.targets = tuple(args.targets)
    sys.exit(main(cfg))
