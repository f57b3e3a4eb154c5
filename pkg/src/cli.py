# src/cli.py — command-line entry point for the symmetric F-nef certifier
"""Usage:
  python symfnef.py check-fnef divisor.json
  python symfnef.py certify divisor.json --mode all -o cert.json
  python symfnef.py verify cert.json
  python symfnef.py rays --n 6 -o rays.json
  python symfnef.py pullback divisor.json --lambda 4,3,2,1 --certify
  python symfnef.py bound --k 7
  python symfnef.py sample --n 10 --seed 3

Exit codes: 0 success, 1 mathematical failure (report on stdout), 2 input error
(message on stderr). Logs go to stderr so stdout stays machine-readable.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import certify_config
from .certificate_io import (
    InputError,
    dump_json,
    emit_certificate,
    emit_divisor,
    emit_rays,
    parse_certificate,
    parse_divisor,
)
from .combinatorics import Partition
from .cone import extremal_rays, sample_fnef
from .divisor_model import MAX_TABULATED_M, SymmetricDivisor, f_from_symmetric, is_fnef
from .effective_boundary import is_effective_boundary
from .pipeline import NefCertificate, certify, conjecture_bound, verify
from .pullback import DegenerateStratum, pullback, pullback_table
from .report_render import (
    audit_payload,
    certify_payload,
    fnef_payload,
    pullback_payload,
    rays_report_payload,
    render_text,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_INPUT_ERROR = 2

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc
    logger.info("wrote %s (%d bytes)", path, len(data))


def _emit(args: argparse.Namespace, payload: Dict[str, Any], divisor: Optional[SymmetricDivisor] = None) -> None:
    if args.format == "text":
        sys.stdout.write(render_text(payload, divisor) + "\n")
    else:
        sys.stdout.write(dump_json(payload).decode("utf-8"))


def cmd_check_fnef(args: argparse.Namespace) -> int:
    divisor = parse_divisor(_read(args.divisor))
    result = is_fnef(divisor)
    _emit(args, fnef_payload(divisor, result), divisor)
    return EXIT_OK if result.ok else EXIT_MATH_FAILURE


def cmd_certify(args: argparse.Namespace) -> int:
    divisor = parse_divisor(_read(args.divisor))
    outcome = certify(divisor, args.mode, exhaustive=args.exhaustive)
    if isinstance(outcome, NefCertificate) and args.output:
        _write(args.output, emit_certificate(outcome))
    _emit(args, certify_payload(outcome), divisor)
    return EXIT_OK if isinstance(outcome, NefCertificate) else EXIT_MATH_FAILURE


def cmd_verify(args: argparse.Namespace) -> int:
    cert = parse_certificate(_read(args.certificate))
    report = verify(cert)
    _emit(args, audit_payload(cert, report), cert.divisor)
    return EXIT_OK if report.ok else EXIT_MATH_FAILURE


def cmd_rays(args: argparse.Namespace) -> int:
    try:
        cone = extremal_rays(args.n)
    except ValueError as exc:
        raise InputError(str(exc), field="n") from exc
    if args.output:
        _write(args.output, emit_rays(cone))
    _emit(args, rays_report_payload(cone))
    return EXIT_OK


def cmd_pullback(args: argparse.Namespace) -> int:
    divisor = parse_divisor(_read(args.divisor))
    try:
        lam = Partition.parse(args.partition)
    except ValueError as exc:
        raise InputError(str(exc), field="lambda") from exc
    if lam.n != divisor.n:
        raise InputError(f"({lam}) is a partition of {lam.n}, divisor has n={divisor.n}", field="lambda")
    if lam.length > MAX_TABULATED_M:
        raise InputError(
            f"({lam}) has {lam.length} parts; pullback tables stop at {MAX_TABULATED_M} markers", field="lambda"
        )
    f = f_from_symmetric(divisor)
    result = pullback(f, lam)
    if isinstance(result, DegenerateStratum):
        _emit(args, pullback_payload(lam, None), divisor)
        return EXIT_OK
    effective = is_effective_boundary(result) if args.certify else None
    _emit(args, pullback_payload(lam, pullback_table(f, lam), effective), divisor)
    return EXIT_MATH_FAILURE if effective is False else EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    try:
        bound = conjecture_bound(args.k)
    except ValueError as exc:
        raise InputError(str(exc), field="k") from exc
    _emit(args, {"command": "bound", "k": args.k, "n_max": bound})
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    try:
        divisor = sample_fnef(args.n, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc), field="n") from exc
    data = emit_divisor(divisor)
    if args.output:
        _write(args.output, data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="report format on stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    parser = argparse.ArgumentParser(
        prog="symfnef", description="Exact nefness certificates for symmetric divisors on M_{0,n}."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-fnef", parents=[common], help="check every F-inequality")
    p.add_argument("divisor")
    p.set_defaults(handler=cmd_check_fnef)

    p = sub.add_parser("certify", parents=[common], help="build a nefness certificate")
    p.add_argument("divisor")
    p.add_argument("--mode", choices=("strict", "all"), default="strict")
    p.add_argument("--exhaustive", action="store_true", help="report every failing partition")
    p.add_argument("-o", "--output", help="certificate file to write")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="audit a certificate file")
    p.add_argument("certificate")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("rays", parents=[common], help="extremal rays of the symmetric F-nef cone")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", help="rays file to write")
    p.set_defaults(handler=cmd_rays)

    p = sub.add_parser("pullback", parents=[common], help="boundary expression of one stratum pullback")
    p.add_argument("divisor")
    p.add_argument("--lambda", dest="partition", required=True, help='parts, e.g. "4,3,2,1"')
    p.add_argument("--certify", action="store_true", help="also decide effective-boundary status")
    p.set_defaults(handler=cmd_pullback)

    p = sub.add_parser("bound", parents=[common], help="n covered by the strong F-conjecture up to m = k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("sample", parents=[common], help="random F-nef divisor from the extremal rays")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", help="divisor file to write")
    p.set_defaults(handler=cmd_sample)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else getattr(logging, certify_config.log_level())
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


def run(argv: Optional[List[str]] = None) -> None:
    sys.exit(main(argv))
