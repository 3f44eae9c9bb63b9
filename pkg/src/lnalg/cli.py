"""Command line interface: ``lnalg {build,invariants,distinguish,verify,structure}``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _coeff_list(text: str) -> list[int]:
    try:
        return [int(c) for c in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a coefficient list: {text!r}") from exc


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_build(args) -> int:
    from .algebra import DeformationPoly, build_algebra
    from .exactla import is_prime

    if not is_prime(args.char):
        raise UsageError(f"--char must be prime, got {args.char}")
    if args.p_coeffs is not None and args.j is not None:
        raise UsageError("give either --j or --p-coeffs, not both")
    if args.p_coeffs is not None:
        p = DeformationPoly(tuple(args.p_coeffs))
    elif args.j is not None:
        p = DeformationPoly.monomial(args.j)
    else:
        raise UsageError("one of --j or --p-coeffs is required")
    a = build_algebra(args.n, p, args.char)
    _emit(a.to_json(), args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    from .report import invariant_table

    t = invariant_table(args.n, args.i_max, args.full_algebra_max, args.workers)
    _emit(t.to_csv() if args.format == "csv" else json.dumps(t.to_dict(), indent=2))
    return EXIT_OK


def cmd_distinguish(args) -> int:
    from .report import distinguish

    if args.n < 2:
        raise UsageError("distinguish needs --n >= 2")
    r = distinguish(args.n, args.i_max, args.full_algebra_max)
    if args.format == "csv":
        _emit(r.to_csv())
    else:
        _emit(json.dumps(r.to_dict(), indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .report import verify_suite

    s = verify_suite(args.n_max, args.full_algebra_max)
    if args.format == "json":
        _emit(json.dumps(s.to_dict(), indent=2))
    else:
        for r in s.results:
            where = f"n={r.n}" + ("" if r.j is None else f" j={r.j}")
            mark = "PASS" if r.passed else "FAIL"
            extra = f"  {r.detail}" if r.detail else ""
            print(f"{mark} {r.name:<28} {where:<10} {r.seconds:8.3f}s{extra}")
        total = len(s.results)
        print(f"{total - len(s.failures())}/{total} checks passed in {s.seconds:.1f}s")
    return EXIT_OK if s.passed else EXIT_FAIL


def cmd_structure(args) -> int:
    from .structure import structure_for

    _emit(structure_for(args.n, args.j, args.char).to_json(indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lnalg", description="Deformed preprojective algebras of type L_n.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit the algebra descriptor as JSON")
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--j", type=_nonneg, help="deformation p = X^(2j)")
    b.add_argument("--char", type=_positive, default=2)
    b.add_argument("--p-coeffs", type=_coeff_list, help="coefficients of p, lowest degree first")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    inv = sub.add_parser("invariants", help="table of dim T_i - dim [A,A]")
    inv.add_argument("--n", type=_positive, required=True)
    inv.add_argument("--i-max", type=_positive, default=5)
    inv.add_argument("--format", choices=("csv", "json"), default="csv")
    inv.add_argument("--full-algebra-max", type=_nonneg, default=6)
    inv.add_argument("--workers", type=_positive)
    inv.set_defaults(func=cmd_invariants)

    d = sub.add_parser("distinguish", help="which deformations the invariants separate")
    d.add_argument("--n", type=_positive, required=True)
    d.add_argument("--i-max", type=_positive)
    d.add_argument("--format", choices=("csv", "json"), default="json")
    d.add_argument("--full-algebra-max", type=_nonneg, default=6)
    d.set_defaults(func=cmd_distinguish)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--n-max", type=_positive, required=True)
    v.add_argument("--full-algebra-max", type=_nonneg, default=6)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("structure", help="dimensions and structural checks")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--j", type=_nonneg, required=True)
    s.add_argument("--char", type=_positive, default=2)
    s.set_defaults(func=cmd_structure)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lnalg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"lnalg: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
