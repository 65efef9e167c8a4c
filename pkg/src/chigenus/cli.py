"""Command-line surface: chi tables, Schur generators, certificates, and
corpus sign audits, in line-stable text or canonical JSON.

Exit codes: 0 success/certified, 1 infeasible or failed audit, 2 usage or
malformed input.  JSON output is a single line with sorted keys and exact
'a/b' rationals, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .cone import (
    Certificate,
    DEFAULT_CERTIFY_MAX_DIM,
    certify,
    certify_chi_signs,
    generators,
)
from .hrr import ChernFunctional, chi_p, chi_table, euler_functional, top_part
from .poly import GradedPoly, ParseError
from .symchern import (
    BasisConvention,
    parse_partition,
    partition_label,
    partitions_of,
    schur,
)
from .varieties import (
    DEFAULT_MAX_DIM,
    Surface,
    SignAudit,
    check_signs,
    chi_values,
    descriptor_from_token,
    evaluate,
    load_corpus,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

CONFIG_ENV = "CHIGENUS_CONFIG"


class UsageError(Exception):
    pass


def _load_config() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(config, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")
    return config


def _resolve_max_dim(args, key: str, fallback: int) -> int:
    if getattr(args, "max_dim", None) is not None:
        return args.max_dim
    value = _load_config().get(key, fallback)
    if not isinstance(value, int) or value < 0:
        raise UsageError(f"config key {key!r} must be a non-negative integer")
    return value


def _emit_json(command: str, dimension: int, convention: str, payload: dict) -> None:
    envelope = {
        "command": command,
        "convention": convention,
        "dimension": dimension,
        "payload": payload,
        "toolVersion": __version__,
    }
    sys.stdout.write(json.dumps(envelope, sort_keys=True, separators=(",", ":")) + "\n")


def _parse_mode(text: str) -> str:
    mode = text.replace("-", "_")
    if mode not in ("nef_cotangent", "nef_tangent"):
        raise UsageError(f"unknown mode {text!r} (use nef-cotangent or nef-tangent)")
    return mode


def _parse_assumptions(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    tags = tuple(tok.strip() for tok in text.split(",") if tok.strip())
    for tag in tags:
        if tag not in ("my2", "my4", "c1top"):
            raise UsageError(f"unknown assumption {tag!r} (use my2, my4, c1top)")
    return tags


# -- chi ---------------------------------------------------------------------


def _cmd_chi(args) -> int:
    max_dim = _resolve_max_dim(args, "max_dim", DEFAULT_MAX_DIM)
    n = args.dim
    if n < 0 or n > max_dim:
        raise UsageError(f"--dim must be within 0..{max_dim}")
    convention = BasisConvention(args.convention)
    table = chi_table(n)
    if convention == BasisConvention.TANGENT:
        table = table.flipped()
    if args.json:
        _emit_json("chi", n, convention.value, table.to_json_dict())
        return EXIT_OK
    print(f"chi table (dim {n}, {convention.value})")
    for p, row in enumerate(table.rows):
        print(f"chi^{p} = {row.to_text()}")
    return EXIT_OK


# -- schur -------------------------------------------------------------------


def _cmd_schur(args) -> int:
    max_dim = _resolve_max_dim(args, "max_dim", DEFAULT_MAX_DIM)
    n = args.dim
    if n < 0 or n > max_dim:
        raise UsageError(f"--dim must be within 0..{max_dim}")
    if args.partition is not None:
        parts = [parse_partition(args.partition, n)]
    else:
        parts = list(partitions_of(n))
    rows = [(partition_label(a), schur(a, n)) for a in parts]
    if args.json:
        payload = {
            "generators": [
                {"name": name, "poly": poly.to_json_dict()} for name, poly in rows
            ]
        }
        _emit_json("schur", n, "any", payload)
        return EXIT_OK
    if args.partition is None:
        print(f"schur generators (dim {n})")
    for name, poly in rows:
        print(f"{name} = {poly.to_text()}")
    return EXIT_OK


# -- certify -----------------------------------------------------------------


def _signed_chi_target(n: int, p: int, mode: str) -> tuple[ChernFunctional, int, int]:
    functional = chi_p(n, p)
    if mode == "nef_tangent":
        functional = functional.flipped()
        sign = (-1) ** p
    else:
        sign = (-1) ** (n - p)
    target, scale = functional.scaled(sign).clear_denominators()
    return target, sign, scale


def _signed_euler_target(n: int, mode: str) -> tuple[ChernFunctional, int, int]:
    functional = euler_functional(n)
    if mode == "nef_tangent":
        functional = functional.flipped()
        sign = 1
    else:
        sign = (-1) ** n
    target, scale = functional.scaled(sign).clear_denominators()
    return target, sign, scale


def _parse_target(args, n: int, mode: str, convention: BasisConvention):
    spec = args.target
    if spec.startswith("chi:"):
        try:
            p = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad chi target {spec!r}") from exc
        if not 0 <= p <= n:
            raise UsageError(f"chi target p={p} outside 0..{n}")
        return _signed_chi_target(n, p, mode)
    if spec == "euler":
        return _signed_euler_target(n, mode)
    try:
        poly = GradedPoly.from_text(n, spec)
    except ParseError as exc:
        raise UsageError(f"bad target polynomial: {exc}") from exc
    if poly.graded_part(n) != poly:
        raise UsageError("inline target must be homogeneous of top weight")
    return top_part(poly, convention), 1, 1


def _render_certificate_text(cert: Certificate) -> list[str]:
    lines = ["status = certified"]
    for name, coef in cert.named_coefficients():
        lines.append(f"  {coef} * {name}")
    lines.append(f"residual = {cert.residual.to_text()}")
    return lines


def _cmd_certify(args) -> int:
    max_dim = _resolve_max_dim(args, "certify_max_dim", DEFAULT_CERTIFY_MAX_DIM)
    n = args.dim
    if n < 1 or n > max_dim:
        raise UsageError(f"--dim must be within 1..{max_dim}")
    mode = _parse_mode(args.mode)
    convention = (
        BasisConvention.COTANGENT if mode == "nef_cotangent" else BasisConvention.TANGENT
    )
    assume = _parse_assumptions(args.assume)
    try:
        tags = ("schur",) + assume
        gens = generators(n, tags, convention)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    if args.all_p:
        report = certify_chi_signs(n, mode, tags, max_dim=max_dim)
        if args.json:
            _emit_json("certify", n, convention.value, report.to_json_dict())
        else:
            print(
                f"chi sign report (dim {n}, mode {mode}, "
                f"assume {','.join(report.assumptions)})"
            )
            for row in report.rows:
                print(f"p={row.p} scale={row.scale} {row.status}")
            print(f"verdict: {'certified' if report.all_certified else 'open'}")
        return EXIT_OK if report.all_certified else EXIT_NEGATIVE

    target, sign, scale = _parse_target(args, n, mode, convention)
    result = certify(target, gens)
    certified = isinstance(result, Certificate)
    if args.json:
        payload = {
            "assumptions": list(tags),
            "mode": mode,
            "scale": scale,
            "sign": sign,
            "status": "certified" if certified else "infeasible",
            "target": target.as_poly().to_json_dict(),
        }
        if certified:
            payload["certificate"] = result.to_json_dict()
        else:
            payload["infeasibility"] = result.to_json_dict()
        _emit_json("certify", n, convention.value, payload)
    else:
        print(f"certify (dim {n}, {convention.value})")
        print(f"target = {target.to_text()} (sign {sign}, scale {scale})")
        if certified:
            for line in _render_certificate_text(result):
                print(line)
        else:
            print("status = infeasible")
            print(f"witness = {result.witness.to_text()}")
    return EXIT_OK if certified else EXIT_NEGATIVE


# -- check -------------------------------------------------------------------


def _audit_text(audit: SignAudit) -> list[str]:
    lines = [f"sign audit: {audit.variety} (dim {audit.dimension}, mode {audit.mode})"]
    for row in audit.rows:
        verdict = "ok" if row.ok else "FAIL"
        lines.append(
            f"p={row.p} chi={row.value} signed={row.signed_value} {verdict}"
        )
    lines.append(f"euler = {audit.euler}")
    lines.append(f"verdict: {'pass' if audit.passed else 'fail'}")
    return lines


def _cmd_check(args) -> int:
    max_dim = _resolve_max_dim(args, "max_dim", DEFAULT_MAX_DIM)
    mode = _parse_mode(args.mode)
    audits: list[SignAudit] = []
    if args.target == "surface":
        if args.c1sq is None or args.c2 is None:
            raise UsageError("surface check needs --c1sq and --c2")
        descriptors = [Surface(args.c1sq, args.c2)]
    elif os.path.exists(args.target):
        try:
            descriptors = [entry.descriptor for entry in load_corpus(args.target)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        try:
            descriptors = [descriptor_from_token(args.target)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    for descriptor in descriptors:
        if descriptor.dimension > max_dim:
            raise UsageError(
                f"descriptor {descriptor.name()} exceeds maximum dimension {max_dim}"
            )
        audits.append(check_signs(descriptor, mode))
    passed = all(a.passed for a in audits)
    if args.json:
        payload = {"audits": [a.to_json_dict() for a in audits], "pass": passed}
        dim = audits[0].dimension if len(audits) == 1 else 0
        _emit_json("check", dim, "cotangent", payload)
    else:
        for audit in audits:
            for line in _audit_text(audit):
                print(line)
    return EXIT_OK if passed else EXIT_NEGATIVE


# -- variety -----------------------------------------------------------------


def _cmd_variety_eval(args) -> int:
    max_dim = _resolve_max_dim(args, "max_dim", DEFAULT_MAX_DIM)
    try:
        descriptor = descriptor_from_token(args.descriptor)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    n = descriptor.dimension
    if n > max_dim:
        raise UsageError(f"descriptor dimension {n} exceeds maximum {max_dim}")
    values = chi_values(descriptor)
    euler = evaluate(euler_functional(n), descriptor)
    if args.target is not None:
        if args.target.startswith("chi:"):
            p = int(args.target.split(":", 1)[1])
            if not 0 <= p <= n:
                raise UsageError(f"chi target p={p} outside 0..{n}")
            value = values[p]
            label = f"chi^{p}"
        elif args.target == "euler":
            value = euler
            label = "euler"
        else:
            raise UsageError(f"unknown eval target {args.target!r}")
        if args.json:
            payload = {
                "descriptor": descriptor.to_json_dict(),
                "target": label,
                "value": str(value),
            }
            _emit_json("variety-eval", n, "cotangent", payload)
        else:
            print(f"{label} = {value}")
        return EXIT_OK
    if args.json:
        payload = {
            "chi": [str(v) for v in values],
            "descriptor": descriptor.to_json_dict(),
            "euler": str(euler),
        }
        _emit_json("variety-eval", n, "cotangent", payload)
    else:
        print(f"variety {descriptor.name()} (dim {n})")
        for p, value in enumerate(values):
            print(f"chi^{p} = {value}")
        print(f"euler = {euler}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chigenus",
        description=(
            "Exact chi^p genus polynomials, Schur positivity generators, and "
            "rational cone certificates for Chern-number sign theorems."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    chi = sub.add_parser("chi", help="print the chi^p polynomial table")
    chi.add_argument("--dim", type=int, required=True)
    chi.add_argument("--json", action="store_true")
    chi.add_argument(
        "--convention", choices=["tangent", "cotangent"], default="cotangent"
    )
    chi.add_argument("--max-dim", type=int, default=None)
    chi.set_defaults(func=_cmd_chi)

    schur_cmd = sub.add_parser("schur", help="print Schur positivity generators")
    schur_cmd.add_argument("--dim", type=int, required=True)
    schur_cmd.add_argument("--partition", default=None, help="e.g. 2,1")
    schur_cmd.add_argument("--json", action="store_true")
    schur_cmd.add_argument("--max-dim", type=int, default=None)
    schur_cmd.set_defaults(func=_cmd_schur)

    cert = sub.add_parser("certify", help="search/verify a positivity certificate")
    cert.add_argument("--dim", type=int, required=True)
    cert.add_argument(
        "--target",
        default=None,
        help="chi:p, euler, or an inline weight-n polynomial",
    )
    cert.add_argument("--assume", default=None, help="comma list of my2,my4,c1top")
    cert.add_argument(
        "--mode", default="nef-cotangent", help="nef-cotangent or nef-tangent"
    )
    cert.add_argument("--all-p", action="store_true", help="run every chi^p row")
    cert.add_argument("--json", action="store_true")
    cert.add_argument("--max-dim", type=int, default=None)
    cert.set_defaults(func=_cmd_certify)

    check = sub.add_parser("check", help="sign audit of a variety or corpus file")
    check.add_argument(
        "target", help="builtin token (pn:3, curve:2, ...), 'surface', or corpus path"
    )
    check.add_argument(
        "--mode", default="nef-cotangent", help="nef-cotangent or nef-tangent"
    )
    check.add_argument("--c1sq", type=int, default=None)
    check.add_argument("--c2", type=int, default=None)
    check.add_argument("--json", action="store_true")
    check.add_argument("--max-dim", type=int, default=None)
    check.set_defaults(func=_cmd_check)

    variety = sub.add_parser("variety", help="variety computations")
    variety_sub = variety.add_subparsers(dest="variety_command", required=True)
    veval = variety_sub.add_parser("eval", help="evaluate chi^p values of a variety")
    veval.add_argument("descriptor", help="builtin token, e.g. pn:3 or curve:2")
    veval.add_argument("--target", default=None, help="chi:p or euler")
    veval.add_argument("--json", action="store_true")
    veval.add_argument("--max-dim", type=int, default=None)
    veval.set_defaults(func=_cmd_variety_eval)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "certify" and not args.all_p and args.target is None:
        parser.error("certify needs --target or --all-p")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
