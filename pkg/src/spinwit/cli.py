"""Command-line client for the operator, negativity, and witness toolkit.

Thin by design: each subcommand parses arguments, calls the library, and
prints a stable line-oriented rendering. Exit codes: 0 success, 1 domain
rejection (bad state, bad spin, malformed file), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .io_formats import (
    FormatError,
    coeff_table,
    format_coeff_table,
    format_float,
    parse_alpha_file,
    parse_density_file,
)
from .numerics import ValidationError
from .spin_ops import SpinLabel
from .su2_states import (
    alpha_from_density,
    density_from_alpha,
    negativity_brute,
    negativity_formula,
    twirl,
)
from .verify import run_verification
from .wigner import six_j, theta_matrix
from .witnesses import (
    Permutation,
    hamiltonian_witness,
    permutation_witness,
    singlet_witness,
    swap_witness,
)


def _twice_j(text: str) -> int:
    try:
        value = Fraction(text) * 2
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse angular momentum {text!r}") from exc
    if value.denominator != 1 or value < 0:
        raise ValidationError(f"angular momentum must be a nonnegative integer or half-integer, got {text!r}")
    return int(value)


def _print_report(report) -> None:
    print(f"kind {report.witness_kind}")
    if report.sites:
        print("sites " + " ".join(str(x) for x in report.sites))
    print(f"expectation {format_float(report.expectation)}")
    print(f"threshold {format_float(report.threshold)}")
    print(f"verdict {report.verdict}")


def _cmd_coeffs(args) -> int:
    s = SpinLabel.parse(args.spin)
    table = coeff_table(s, args.operator, args.channel)
    print(format_coeff_table(table), end="")
    return 0


def _cmd_sixj(args) -> int:
    tj = [_twice_j(x) for x in args.j]
    print(f"value {format_float(six_j(*tj))}")
    return 0


def _cmd_theta(args) -> int:
    s = SpinLabel.parse(args.spin)
    theta = theta_matrix(s)
    print(f"twice_spin {s.twice_spin}")
    for row in theta:
        print(" ".join(format_float(float(x)) for x in row))
    return 0


def _load_alpha(args, s):
    if not args.alpha and not args.density:
        raise ValidationError("provide --alpha or --density")
    if args.alpha:
        alpha = parse_alpha_file(args.alpha)
        if alpha.twice_spin != s.twice_spin:
            raise ValidationError(
                f"file carries twice_spin {alpha.twice_spin}, --spin says {s.twice_spin}"
            )
        return alpha
    rho = parse_density_file(args.density)
    drift = abs(twirl(rho, s).matrix - rho.matrix).max()
    if drift > 1e-8:
        raise ValidationError(
            f"density is not rotation invariant (twirl moves it by {drift:.3e}); "
            "the coefficient-map route needs an invariant state"
        )
    return alpha_from_density(rho, s)


def _cmd_negativity(args) -> int:
    s = SpinLabel.parse(args.spin)
    methods = ("formula", "brute") if args.method == "both" else (args.method,)
    if "formula" in methods or args.density is None:
        alpha = _load_alpha(args, s)
    else:
        alpha = None
    for method in methods:
        if method == "formula":
            result = negativity_formula(alpha)
        else:
            if args.density:
                rho = parse_density_file(args.density)
            else:
                rho = density_from_alpha(alpha)
            result = negativity_brute(rho, s.dim, s.dim)
        print(f"method {result.method}")
        print(f"value {format_float(result.value)}")
        for k, term in enumerate(result.per_channel):
            print(f"channel {k} {format_float(term)}")
    return 0


def _cmd_witness(args) -> int:
    s = SpinLabel.parse(args.spin)
    rho = parse_density_file(args.density)
    if args.kind == "permutation":
        if not args.perm:
            raise ValidationError("permutation witness needs --perm with an image list")
        report = permutation_witness(rho, Permutation(tuple(args.perm)), s)
    else:
        if not args.sites:
            raise ValidationError(f"{args.kind} witness needs --sites I J")
        fn = swap_witness if args.kind == "swap" else singlet_witness
        report = fn(rho, s, tuple(args.sites))
    _print_report(report)
    return 0


def _cmd_chain(args) -> int:
    s = SpinLabel.parse(args.spin)
    report = hamiltonian_witness(s, args.length, args.model, args.coupling, args.boundary)
    _print_report(report)
    return 0


def _cmd_verify(args) -> int:
    items = None
    if args.items:
        items = [int(x) for x in args.items.split(",")]
    results = run_verification(items=items, seed=args.seed)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{res.index:2d}] {status}  {res.name}")
        print(f"      {res.detail}")
        failed += 0 if res.passed else 1
    print(f"verify: {len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("spinwit.api:app", host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwit",
        description="Spin-s swap/singlet entanglement witnesses, exact operator polynomials, and negativity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="exact expansion of an operator in dot-product powers")
    p.add_argument("--spin", required=True, help='spin value, e.g. "1/2" or "2"')
    p.add_argument("--operator", required=True, choices=["swap", "singlet", "projector"])
    p.add_argument("--channel", type=int, default=None, help="total spin F for projector tables")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("sixj", help="evaluate a single 6-j symbol")
    p.add_argument("j", nargs=6, help='six angular momenta, e.g. 1/2 1/2 0 1/2 1/2 1')
    p.set_defaults(func=_cmd_sixj)

    p = sub.add_parser("theta", help="coefficient map of the partial transpose")
    p.add_argument("--spin", required=True)
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("negativity", help="negativity of an invariant two-site state")
    p.add_argument("--spin", required=True)
    p.add_argument("--alpha", help="channel coefficient file")
    p.add_argument("--density", help="density matrix file")
    p.add_argument("--method", choices=["formula", "brute", "both"], default="both")
    p.set_defaults(func=_cmd_negativity)

    p = sub.add_parser("witness", help="evaluate a witness on a stored state")
    p.add_argument("--kind", required=True, choices=["swap", "singlet", "permutation"])
    p.add_argument("--spin", required=True)
    p.add_argument("--density", required=True)
    p.add_argument("--sites", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--perm", type=int, nargs="+", help="permutation image list, e.g. 1 0 3 2")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("chain", help="ground-state witness of a nearest-neighbor chain")
    p.add_argument("--spin", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--model", choices=["swap", "singlet"], default="swap")
    p.add_argument("--coupling", type=float, default=1.0)
    p.add_argument("--boundary", choices=["open", "periodic"], default="open")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("verify", help="run the full self-check suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--items", help="comma-separated check numbers (default: all)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
