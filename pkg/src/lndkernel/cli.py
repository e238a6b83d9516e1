"""Command-line front end.

Exit codes: 0 success (for ``verify``: every check passed), 1 ``verify``
finished with failures, 2 parse or usage error, 3 internal invariant
violation, 4 ``obstruct`` found the target representable.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .derivations import Derivation, NotLocallyNilpotentError
from .kernel import (
    InvariantError,
    kernel_basis,
    kernel_membership_via_coordinates,
    obstruction_certificate,
)
from .paper_case import build_paper_instance, make_instance, run_full_verification
from .parser import ParseError, parse_element
from .rings import ExtRingSpec

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_REPRESENTABLE = 4


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _pos_int(text: str) -> int:
    n = _nonneg_int(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", metavar="PATH", help="write output here instead of stdout")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument(
        "--derivation",
        nargs=4,
        metavar=("DT", "DX", "DY", "DZ"),
        help="images of T, X, Y, z (default: 0, T^3, -T^2, 0)",
    )
    instance.add_argument(
        "--relation", metavar="EXPR", help="polynomial q with z^2 = q (default: T^8*P^2 + 1)"
    )

    ap = argparse.ArgumentParser(
        prog="lndkernel",
        description="Exact checks for the derivation T^3 d/dX - T^2 d/dY on Q[T^2,T^3][X,Y,z].",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common, instance], help="run every check")
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--report", metavar="PATH", help="write the JSON report here")
    p.add_argument("--modulus", type=_pos_int, default=4)
    p.add_argument("--max-iter", type=_pos_int, default=10)

    p = sub.add_parser("apply", parents=[common, instance], help="print D^N(E)")
    p.add_argument("--expr", required=True)
    p.add_argument("--times", type=_nonneg_int, default=1)

    p = sub.add_parser("exp", parents=[common, instance], help="print exp(D)(E)")
    p.add_argument("--expr", required=True)
    p.add_argument("--max-iter", type=_pos_int, default=64)

    p = sub.add_parser("member", parents=[common, instance], help="subring and kernel membership")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("kernel-basis", parents=[common], help="list kernel monomials of S")
    p.add_argument("--xy-degree", type=_nonneg_int, required=True)
    p.add_argument("--t-degree", type=_nonneg_int, required=True)

    p = sub.add_parser("obstruct", parents=[common], help="emit an obstruction certificate")
    p.add_argument("--d", type=_pos_int, required=True)
    p.add_argument("--modulus", type=_pos_int, default=4)
    p.add_argument("--target", metavar="EXPR", help="replace the default target T^2*P^(d+1)")
    return ap


_EXPR_FLAGS = {"--expr": 1, "--relation": 1, "--target": 1, "--derivation": 4}


def _protect_expressions(argv: Sequence[str]) -> list[str]:
    """Let expression values start with '-' (``--expr -X``).

    argparse would read ``-X`` as an option; a leading space hides it from
    argparse and is ignored by the expression parser.
    """
    out = list(argv)
    i = 0
    while i < len(out):
        n = _EXPR_FLAGS.get(out[i], 0)
        for j in range(i + 1, min(i + 1 + n, len(out))):
            if out[j].startswith("-") and out[j] not in _EXPR_FLAGS:
                out[j] = " " + out[j]
        i += 1 + n
    return out


def _instance(args, strict_derivation: bool):
    if args.derivation is None and args.relation is None:
        return build_paper_instance()
    base = make_instance()
    q = base.ring.q
    if args.relation is not None:
        rel = parse_element(args.relation, base.ring)
        if rel.f1:
            raise UsageError("the relation must not involve z")
        q = rel.f0
    images = None
    if args.derivation is not None:
        ring = ExtRingSpec(q)
        images = {
            name: parse_element(text, ring)
            for name, text in zip(("T", "X", "Y", "z"), args.derivation)
        }
    inst = make_instance(q, images)
    if strict_derivation and not inst.D.check_well_defined():
        raise UsageError("the derivation does not preserve z^2 = q (2*z*D(z) != D(q))")
    return inst


def _cmd_verify(args):
    inst = _instance(args, strict_derivation=False)
    report = run_full_verification(
        args.seed, instance=inst, modulus=args.modulus, max_iter=args.max_iter
    )
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    text = report.to_json() if args.format == "json" else report.to_text()
    return text, EXIT_OK if report.passed else EXIT_CHECKS_FAILED


def _cmd_apply(args):
    inst = _instance(args, strict_derivation=True)
    x = parse_element(args.expr, inst.ring)
    y = x
    for _ in range(args.times):
        y = inst.D.apply(y)
    doc = {"input": str(x), "times": args.times, "result": str(y)}
    return doc, str(y)


def _cmd_exp(args):
    inst = _instance(args, strict_derivation=True)
    x = parse_element(args.expr, inst.ring)
    report = inst.D.nilpotency_index(x, args.max_iter)
    try:
        y = inst.D.exp(x, args.max_iter)
    except NotLocallyNilpotentError as exc:
        raise UsageError(str(exc)) from None
    doc = {"input": str(x), "nilpotency_index": report.index, "result": str(y)}
    return doc, str(y)


def _cmd_member(args):
    inst = _instance(args, strict_derivation=True)
    x = parse_element(args.expr, inst.ring)
    doc = {
        "input": str(x),
        "in_S": inst.sub.contains(x),
        "in_kernel": inst.D.in_kernel(x),
        "in_kernel_coords": kernel_membership_via_coordinates(x),
    }
    text = "\n".join(f"{k}={str(doc[k]).lower()}" for k in ("in_S", "in_kernel", "in_kernel_coords"))
    return doc, text


def _cmd_kernel_basis(args):
    inst = build_paper_instance()
    basis = kernel_basis(inst.sub, args.xy_degree, args.t_degree, inst.D)
    rows = [
        {"m": mono.m, "k": mono.k, "e": mono.e, "label": str(mono), "expanded": str(mono.expand(inst.ring))}
        for mono in basis.monomials
    ]
    doc = {"xy_degree": args.xy_degree, "t_degree": args.t_degree, "monomials": rows}
    text = "\n".join(f"{r['label']}\t{r['expanded']}" for r in rows)
    return doc, text


def _cmd_obstruct(args):
    inst = build_paper_instance()
    target = parse_element(args.target, inst.ring) if args.target else None
    cert = obstruction_certificate(args.d, args.modulus, target=target, D=inst.D, sub=inst.sub)
    doc = cert.to_dict()
    lines = [
        f"d: {cert.d}",
        f"modulus: T^{cert.modulus}",
        f"target: {cert.target}",
        f"generators ({len(cert.generators)}): {', '.join(map(str, cert.generators))}",
        f"system: {len(cert.row_labels)} rows x {len(cert.col_labels)} columns, rank {cert.result.rank}",
        f"verdict: {cert.verdict}",
    ]
    if cert.witness is not None:
        support = [f"{v} * [{cert.row_labels[i]}]" for i, v in enumerate(cert.witness) if v]
        lines.append("witness: y^T A = 0, y^T b != 0 with y = " + " + ".join(support))
    else:
        support = [f"{v} * [{cert.col_labels[j]}]" for j, v in enumerate(cert.solution) if v]
        lines.append("solution: " + (" + ".join(support) or "0"))
    lines.append(f"validated: {str(cert.validate()).lower()}")
    code = EXIT_OK if cert.verdict == "infeasible" else EXIT_REPRESENTABLE
    return doc, "\n".join(lines), code


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(_protect_expressions(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "verify":
            text, code = _cmd_verify(args)
            _emit(args, text)
            return code
        handler = {
            "apply": _cmd_apply,
            "exp": _cmd_exp,
            "member": _cmd_member,
            "kernel-basis": _cmd_kernel_basis,
            "obstruct": _cmd_obstruct,
        }[args.command]
        out = handler(args)
        doc, text = out[0], out[1]
        code = out[2] if len(out) > 2 else EXIT_OK
        if args.format == "json":
            doc = {"command": args.command, "schema_version": SCHEMA_VERSION, **doc}
            text = json.dumps(doc, indent=2)
        _emit(args, text)
        return code
    except (ParseError, UsageError, ValueError) as exc:
        print(f"lndkernel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"lndkernel: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
