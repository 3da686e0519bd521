"""Command-line front end.

JSON goes to stdout (sorted keys), log lines to stderr.  Exit status is 0 on
success, 1 on a computation error and 2 on a usage error.

Codes are named by a catalog entry or a matrix file path; prefix either
with ``dual:`` to use the dual code.  ``jwe`` also accepts ``ind:N:i,j,..``
for the indicator vector of positions ``i, j, ..`` in length ``N``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog, reproduce
from .access import bounds, classify_dual, classify_span, enumerate_access_structure
from .code import DEFAULT_CAP, LinearCode, dual, min_distance
from .enumpoly import (
    FixedVector,
    SparseEnumerator,
    count_bound,
    derivative_Z,
    extension_enumerator,
    joint_weight_enumerator,
    secret_coefficient,
    verify_exact_count,
)
from .fileio import read_code
from .scheme import InconsistentShares, NotAuthorized, deal, make_scheme, reconstruct

log = logging.getLogger("masseyx")


class UsageError(Exception):
    pass


def resolve_code(spec: str) -> LinearCode:
    if spec.startswith("dual:"):
        return dual(resolve_code(spec[5:]))
    if spec in catalog.names():
        return catalog.load(spec).code
    path = Path(spec)
    if path.exists():
        return read_code(path)
    raise UsageError(f"{spec!r} is neither a catalog code nor a readable file")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _load_json_arg(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc


def _scheme(args):
    return make_scheme(resolve_code(args.code), args.l, args.cap)


def _poly_out(p: SparseEnumerator, args) -> dict:
    doc = p.to_json()
    if args.format == "pretty":
        doc["pretty"] = p.pretty()
    return doc


# --- subcommands --------------------------------------------------------------


def cmd_catalog(args):
    if args.name:
        e = catalog.load(args.name)
        return {
            "name": e.name,
            "field": e.code.field.header(),
            "n": e.code.n_len,
            "k": e.code.k_dim,
            "d": min_distance(e.code, args.cap),
            "generator": e.code.gen.tolist(),
            "self_dual": e.self_dual,
            "self_orthogonal": e.self_orthogonal,
            "two_transitive": e.two_transitive,
            "provenance": e.provenance,
        }
    return {"codes": catalog.listing(), "data_dir": str(catalog.data_dir())}


def cmd_deal(args):
    S = _scheme(args)
    sv = deal(S, _int_list(args.secret), args.seed)
    return {str(i): v for i, v in sv.as_dict().items()}


def cmd_reconstruct(args):
    S = _scheme(args)
    shares = {int(k): int(v) for k, v in _load_json_arg(args.shares).items()}
    try:
        secret = reconstruct(S, sorted(shares), shares)
    except NotAuthorized as exc:
        return {"authorized": False, "message": str(exc)}
    return {"authorized": True, "secret": list(secret)}


def cmd_classify(args):
    S = _scheme(args)
    group = _int_list(args.group)
    c = classify_span(S, group)
    return {"group": sorted(set(group)), "kind": c.kind.value, "leaked_dim": c.leaked_dim,
            "dual_full": classify_dual(S, group)}


def cmd_access(args):
    S = _scheme(args)
    rep = enumerate_access_structure(
        S, args.cap, max_size=args.max_size, backend=args.backend, ghw=not args.no_ghw, threads=args.threads
    )
    return rep.as_dict()


def cmd_bounds(args):
    return bounds(_scheme(args), args.cap, ghw=not args.no_ghw).as_dict()


def cmd_jwe(args):
    items = []
    n_len = None
    for spec in args.args:
        if spec.startswith("ind:"):
            _, n, pos = spec.split(":", 2)
            items.append(FixedVector.indicator(int(n), _int_list(pos)))
        else:
            C = resolve_code(spec)
            n_len = C.n_len
            items.append(C)
    if n_len is not None:
        log.info("joint enumerator of %d arguments, length %d", len(items), n_len)
    return _poly_out(joint_weight_enumerator(items, args.cap, args.threads), args)


def cmd_z(args):
    return _poly_out(secret_coefficient(_scheme(args), args.cap, args.threads), args)


def cmd_count(args):
    S = _scheme(args)
    p = secret_coefficient(S, args.cap, args.threads)
    d_perp = min_distance(S.dual_code, args.cap)
    bound, exact = count_bound(p, args.m, d_perp)
    return {"m": args.m, "bound": bound, "is_exact": exact, "d_perp": d_perp}


def cmd_extenum(args):
    return extension_enumerator(resolve_code(args.code), args.cap).as_dict()


def cmd_verify_count(args):
    count, certified = verify_exact_count(_scheme(args), args.m, args.cap, args.threads)
    return {"m": args.m, "count": count, "certified": certified}


def cmd_derive_z(args):
    if args.biweight:
        bw = SparseEnumerator.from_json(_load_json_arg(args.biweight))
        if args.n is None:
            raise UsageError("--n is required with --biweight")
        n = args.n
    elif args.code:
        C = resolve_code(args.code)
        bw = joint_weight_enumerator([C, C], args.cap, args.threads)
        n = args.n or C.n_len
    else:
        raise UsageError("give --code or --biweight")
    return _poly_out(derivative_Z(bw, n), args)


def cmd_reproduce(args):
    names = list(reproduce.TARGETS) if args.target == "all" else [args.target]
    checks = []
    for name in names:
        log.info("reproducing %s", name)
        check = reproduce.run(name, args.cap, args.threads)
        log.info("%s: %s (%.2fs)", name, "pass" if check.passed else "FAIL", check.seconds)
        checks.append(check.as_dict())
    result = {"checks": checks, "passed": all(c["passed"] for c in checks)}
    return result


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration budget (default 2^26)")
    common.add_argument("--threads", type=int, default=1, help="worker threads (output does not depend on it)")
    common.add_argument("--format", choices=["json", "pretty"], default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="masseyx", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def scheme_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("--code", required=True)
        p.add_argument("--l", type=int, required=True, help="secret length")
        p.set_defaults(fn=fn)
        return p

    p = sub.add_parser("catalog", help="list built-in codes", parents=[common])
    p.add_argument("action", nargs="?", choices=["list", "show"], default="list")
    p.add_argument("name", nargs="?")
    p.set_defaults(fn=cmd_catalog)

    p = scheme_cmd("deal", cmd_deal, "deal shares for a secret")
    p.add_argument("--secret", required=True, help="comma-separated field elements")
    p.add_argument("--seed", type=int, default=0)

    p = scheme_cmd("reconstruct", cmd_reconstruct, "recover the secret from a share subset")
    p.add_argument("--shares", required=True, help='JSON {"participant": element} or @file')

    p = scheme_cmd("classify", cmd_classify, "classify a participant group")
    p.add_argument("--group", required=True, help="comma-separated participant indices")

    p = scheme_cmd("access", cmd_access, "enumerate the access structure")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--backend", choices=["auto", "tuples", "subsets"], default="auto")
    p.add_argument("--no-ghw", action="store_true", help="skip the generalized Hamming weight bound")

    p = scheme_cmd("bounds", cmd_bounds, "size bounds for access groups")
    p.add_argument("--no-ghw", action="store_true")

    p = sub.add_parser("jwe", help="g-fold joint weight enumerator", parents=[common])
    p.add_argument("args", nargs="+", help="codes, dual:CODE or ind:N:i,j")
    p.set_defaults(fn=cmd_jwe)

    scheme_cmd("z", cmd_z, "secret coefficient polynomial")

    p = scheme_cmd("count", cmd_count, "access-group count bound read from the secret coefficient")
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("extenum", help="code extension enumerator", parents=[common])
    p.add_argument("--code", required=True)
    p.set_defaults(fn=cmd_extenum)

    p = scheme_cmd("verify-count", cmd_verify_count, "exact count of size-m groups with certificate")
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("derive-z", help="secret coefficient from the biweight enumerator", parents=[common])
    p.add_argument("--code")
    p.add_argument("--biweight", help="polynomial JSON or @file")
    p.add_argument("--n", type=int)
    p.set_defaults(fn=cmd_derive_z)

    p = sub.add_parser("reproduce", help="run pinned reproductions", parents=[common])
    p.add_argument("target", choices=["all", *reproduce.TARGETS])
    p.set_defaults(fn=cmd_reproduce)
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        result = args.fn(args)
    except UsageError as exc:
        print(f"masseyx: usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, RuntimeError, InconsistentShares, OSError) as exc:
        print(f"masseyx: error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(result, sort_keys=True, indent=2), file=stdout)
    if args.command == "reproduce" and not result["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
