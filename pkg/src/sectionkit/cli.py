"""Command-line interface.

Exit codes, fixed so shell harnesses stay simple:
  0  found / valid / all checks passed
  1  not found / invalid / a check failed
  2  usage or input errors (bad flags, unreadable or malformed files)
  3  a configured cap was exceeded
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .analysis import is_isomorphic
from .catalog import generate_catalog
from .construct import MetacyclicSpec, construct_metacyclic, direct_product
from .errors import CapExceeded, FormatError, SectionKitError
from .groups import PermGroup
from .numth import prime_divisors
from .oracle import is_section_bruteforce, theorem_sweep, verify_witness
from .pipeline import SectionTarget, chain_report, run_pipeline, section_config

USAGE_ERROR = 2
CAP_ERROR = 3


def _read_group(path: str) -> formats.GroupFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return formats.parse_group(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}")


def infer_metacyclic_spec(group: PermGroup) -> MetacyclicSpec:
    """Recover (p, n, q, r) from a concrete copy of a target group."""
    m = group.order()
    for q in prime_divisors(m):
        rest = m // q
        if rest % q == 0 or rest == 1:
            continue
        ps = prime_divisors(rest)
        if len(ps) != 1 or ps[0] == q:
            continue
        p = ps[0]
        n = 0
        while p**n < rest:
            n += 1
        for r in range(2, rest):
            if pow(r, q, rest) != 1:
                continue
            spec = MetacyclicSpec(p, n, q, r)
            if is_isomorphic(construct_metacyclic(spec).group, group).isomorphic:
                return spec
    raise SectionKitError("group is not a valid metacyclic target")


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reverify_witness_file(path: str, original: PermGroup, target: PermGroup) -> None:
    """Witness files are re-read and re-verified before a success exit."""
    with open(path, encoding="utf-8") as fh:
        record = formats.parse_witness(fh.read())
    reloaded = formats.witness_from_record(record, original, target)
    check = verify_witness(reloaded, original, target)
    if not check.ok:
        raise SectionKitError(f"written witness failed re-verification: {check.reason}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct_d(args) -> int:
    if args.r is not None:
        spec = MetacyclicSpec(args.p, args.n, args.q, args.r)
    else:
        spec = MetacyclicSpec.canonical(args.p, args.n, args.q)
    met = construct_metacyclic(spec)
    name = args.name or f"C{spec.modulus}:C{spec.q}(r={spec.r})"
    _write_or_print(formats.render_group(met.group, name), args.out)
    return 0


def cmd_check_chain(args) -> int:
    gf = _read_group(args.file)
    orders, chain_ok, proper_ok = chain_report(gf.group, args.p)
    print(f"order {gf.group.order()}")
    print("normal-subgroup-orders " + ",".join(str(o) for o in orders))
    print(f"chain {'true' if chain_ok else 'false'}")
    print(f"proper-normals-are-{args.p}-groups {'true' if proper_ok else 'false'}")
    return 0 if chain_ok and proper_ok else 1


def cmd_find_section(args) -> int:
    d = _read_group(args.d).group
    host = _read_group(args.host).group
    report = is_section_bruteforce(d, host)
    print(
        f"found {'true' if report.found else 'false'} "
        f"subgroups-examined {report.subgroups_examined}"
    )
    if report.found and args.out:
        text = formats.render_witness(report.witness, host, d)
        _write_or_print(text, args.out)
        _reverify_witness_file(args.out, host, d)
    return 0 if report.found else 1


def cmd_run_pipeline(args) -> int:
    x = _read_group(args.x).group
    y = _read_group(args.y).group
    g = _read_group(args.g).group
    h = _read_group(args.h).group
    d = _read_group(args.d).group
    spec = infer_metacyclic_spec(d)
    target = SectionTarget.from_group(d, spec)
    dp = direct_product(x, y)
    cfg = section_config(dp, g, h, target)
    witness, trace = run_pipeline(cfg)
    original = x if witness.side == "X" else y
    check = verify_witness(witness, original, d)
    if not check.ok:
        raise SectionKitError(f"pipeline witness failed verification: {check.reason}")
    print(f"side {witness.side} subgroup {witness.subgroup.order()} kernel {witness.kernel.order()}")
    if args.trace_out:
        _write_or_print(trace.render(), args.trace_out)
    if args.witness_out:
        text = formats.render_witness(witness, original, d, trace.digest())
        _write_or_print(text, args.witness_out)
        _reverify_witness_file(args.witness_out, original, d)
    return 0


def cmd_verify_witness(args) -> int:
    host = _read_group(args.host).group
    d = _read_group(args.d).group
    try:
        with open(args.witness, encoding="utf-8") as fh:
            record = formats.parse_witness(fh.read())
        witness = formats.witness_from_record(record, host, d)
    except OSError as exc:
        raise FormatError(f"cannot read {args.witness}: {exc}")
    except SectionKitError as exc:
        print(f"invalid: {exc}")
        return 1
    check = verify_witness(witness, host, d)
    print("valid" if check.ok else f"invalid: {check.reason}")
    return 0 if check.ok else 1


def cmd_sweep(args) -> int:
    parts = [int(tok) for tok in args.spec.split(",")]
    if len(parts) == 3:
        spec = MetacyclicSpec.canonical(*parts)
    elif len(parts) == 4:
        spec = MetacyclicSpec(*parts)
    else:
        raise FormatError("--spec expects p,n,q or p,n,q,r")
    target = SectionTarget.from_metacyclic(construct_metacyclic(spec))
    catalog = generate_catalog(args.catalog_max)
    report = theorem_sweep(
        catalog, catalog, target, config_limit=args.config_limit, jobs=args.jobs
    )
    sys.stdout.write(report.render_records())
    sys.stdout.write(f"# {report.summary()}\n")
    return 0 if not report.discrepancies else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sectionkit",
        description="Descend metacyclic sections of direct products into one factor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct-d", help="write a group file for a metacyclic target")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--r", type=int)
    c.add_argument("--name")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct_d)

    c = sub.add_parser("check-chain", help="normal-subgroup chain report for a group file")
    c.add_argument("file")
    c.add_argument("--p", type=int, required=True)
    c.set_defaults(func=cmd_check_chain)

    c = sub.add_parser("find-section", help="brute-force section search")
    c.add_argument("--d", required=True)
    c.add_argument("--in", dest="host", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_find_section)

    c = sub.add_parser("run-pipeline", help="run the descent pipeline on a configuration")
    c.add_argument("--x", required=True)
    c.add_argument("--y", required=True)
    c.add_argument("--g", required=True)
    c.add_argument("--h", required=True)
    c.add_argument("--d", required=True)
    c.add_argument("--witness-out")
    c.add_argument("--trace-out")
    c.set_defaults(func=cmd_run_pipeline)

    c = sub.add_parser("verify-witness", help="re-check a witness file")
    c.add_argument("--witness", required=True)
    c.add_argument("--in", dest="host", required=True)
    c.add_argument("--d", required=True)
    c.set_defaults(func=cmd_verify_witness)

    c = sub.add_parser("sweep", help="exhaustive pipeline-vs-oracle sweep over a catalog")
    c.add_argument("--catalog-max", type=int, required=True)
    c.add_argument("--spec", required=True, help="p,n,q or p,n,q,r")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--config-limit", type=int, default=25)
    c.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP_ERROR
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SectionKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
