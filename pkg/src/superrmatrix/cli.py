"""Command-line front end.

Subcommands:
  rmatrix  compute the R-operator and export it (JSON or CSV)
  verify   run the verification suite; exit 0 only if every check passes
  roots    dump the normally ordered positive roots with parities and
           closed-form monomial data

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import os
import sys

import numpy as np

from .cartanweyl import real_root_monomial
from .reps import EvaluationRep, GradingVector
from .rfactors import build_rfactors, r_operator
from .rootdata import SuperRank, bilinear, classify, parity, positive_roots, root_label
from .scalars import QContext
from .verify import VerifyConfig, run_suite

OUTPUT_DIR_ENV = "SUPERRMATRIX_OUTDIR"


class ConfigError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Accept '1.2', '1.2+0.3j', or '1.2,0.3'."""
    text = text.strip()
    if "," in text:
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    try:
        return complex(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def parse_grading(text: str, expected_len: int) -> GradingVector:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse grading {text!r}") from exc
    if len(parts) != expected_len:
        raise ConfigError(f"grading needs {expected_len} integers, got {len(parts)}")
    if sum(parts) == 0:
        raise ConfigError("total grade must be nonzero")
    return GradingVector(parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superrmatrix",
        description="Trigonometric R-operators for the q-deformed loop "
                    "superalgebra of sl(M|N)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--q-re", type=float, default=1.1)
        p.add_argument("--q-im", type=float, default=0.2)
        p.add_argument("--q-mod", type=float, default=None,
                       help="modulus of q (overrides --q-re/--q-im)")
        p.add_argument("--q-arg", type=float, default=None,
                       help="phase of q in radians (with --q-mod)")
        p.add_argument("--zeta1", type=parse_complex, default=0.6 + 0j)
        p.add_argument("--zeta2", type=parse_complex, default=1.0 + 0j)
        p.add_argument("--zeta3", type=parse_complex, default=1.7 + 0j)
        p.add_argument("--grading", type=str, default=None,
                       help='comma-separated integers s_0..s_L, e.g. "1,1,1"')
        p.add_argument("--nmax", type=int, default=4)
        p.add_argument("--order", type=int, default=40)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", type=str, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p_rm = sub.add_parser("rmatrix", help="compute and export the R-operator")
    common(p_rm)
    p_rm.add_argument("--mode", choices=("closed", "pipeline"), default="closed")

    p_v = sub.add_parser("verify", help="run the verification suite")
    common(p_v)
    p_v.add_argument("--checks", type=str, default=None,
                     help="comma-separated subset of check names")

    p_r = sub.add_parser("roots", help="dump the ordered positive roots")
    common(p_r)
    return parser


def _resolve_q(args) -> complex:
    if args.q_mod is not None:
        return args.q_mod * cmath.exp(1j * (args.q_arg or 0.0))
    return complex(args.q_re, args.q_im)


def _resolve_setup(args):
    try:
        rank = SuperRank(args.m, args.n)
    except ValueError as exc:
        raise ConfigError(f"M and N must differ (and be >= 1): {exc}") from exc
    q = _resolve_q(args)
    try:
        ctx = QContext(q=q, series_order=args.order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.grading is not None:
        grading = parse_grading(args.grading, rank.L + 1)
    else:
        grading = GradingVector.ones(rank)
    return rank, ctx, grading


def _output_path(args, default_name: str) -> str | None:
    if args.output:
        return args.output
    outdir = os.environ.get(OUTPUT_DIR_ENV)
    if outdir:
        return os.path.join(outdir, default_name)
    return None


def _complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_payload(rank, ctx, args, grading, matrix, mode, metadata) -> dict:
    return {
        "m": rank.m,
        "n": rank.n,
        "q": _complex_pair(ctx.q),
        "zeta1": _complex_pair(args.zeta1),
        "zeta2": _complex_pair(args.zeta2),
        "grading": list(grading.s),
        "mode": mode,
        "rows": matrix.shape[0],
        "cols": matrix.shape[1],
        "entries": [_complex_pair(v) for v in matrix.reshape(-1)],
        "metadata": metadata,
    }


def load_matrix(payload: dict) -> np.ndarray:
    entries = np.array([complex(re, im) for re, im in payload["entries"]])
    return entries.reshape(payload["rows"], payload["cols"])


def _write_csv(matrix: np.ndarray, stream) -> None:
    for row in matrix:
        cells = []
        for v in row:
            cells.append(repr(float(v.real)))
            cells.append(repr(float(v.imag)))
        stream.write(",".join(cells) + "\n")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_rmatrix(args) -> int:
    rank, ctx, grading = _resolve_setup(args)
    try:
        if args.mode == "pipeline":
            factors = build_rfactors(rank, ctx, args.zeta1, args.zeta2, grading,
                                     n_max_product=max(args.nmax, 60),
                                     n_max_sim=min(40, args.order))
            matrix = factors.r_total
            residual = factors.cross_mode_residual
        else:
            matrix = r_operator(rank, ctx, args.zeta1, args.zeta2, grading, mode="closed")
            try:
                factors = build_rfactors(rank, ctx, args.zeta1, args.zeta2, grading,
                                         n_max_product=max(args.nmax, 60),
                                         n_max_sim=min(40, args.order))
                residual = factors.cross_mode_residual
            except ValueError:
                # outside the series disc only the closed form is available
                residual = None
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    meta = {"cross_mode_residual": residual, "nmax": args.nmax, "order": args.order}
    path = _output_path(args, "rmatrix.json" if args.format == "json" else "rmatrix.csv")
    if args.format == "json":
        _emit(json.dumps(matrix_payload(rank, ctx, args, grading, matrix,
                                        args.mode, meta)), path)
    else:
        import io

        buf = io.StringIO()
        _write_csv(matrix, buf)
        _emit(buf.getvalue(), path)
    return 0


def cmd_verify(args) -> int:
    rank, ctx, grading = _resolve_setup(args)
    checks = tuple(args.checks.split(",")) if args.checks else None
    cfg = VerifyConfig(rank=rank, q=ctx.q, zeta1=args.zeta1, zeta2=args.zeta2,
                       zeta3=args.zeta3, grading=grading, n_max=args.nmax,
                       series_order=args.order, seed=args.seed,
                       tol_override=args.tol, checks=checks)
    try:
        report = run_suite(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    path = _output_path(args, "verify.json")
    if path is not None:
        with open(path, "w") as fh:
            fh.write(report.to_json())
    print(report.render())
    return 0 if report.all_passed else 1


def cmd_roots(args) -> int:
    rank, ctx, grading = _resolve_setup(args)
    rep = EvaluationRep(rank, ctx, args.zeta1, grading)
    entries = []
    for root in positive_roots(rank, args.nmax):
        kind = classify(rank, root)
        item = {
            "label": root_label(rank, root),
            "kind": kind[0],
            "coefficients": list(root.coeffs),
            "parity": parity(rank, root),
            "self_pairing": bilinear(rank, root, root),
        }
        if kind[0] in ("real_plus", "real_wrap"):
            for which in ("e", "f"):
                zp, sgn, qp, unit = real_root_monomial(rep, root, which)
                item[which] = {"zeta_power": zp, "sign": sgn, "q_power": qp,
                               "unit": list(unit)}
        else:
            item["attach"] = kind[2]
        entries.append(item)
    payload = {"m": rank.m, "n": rank.n, "grading": list(grading.s),
               "n_max": args.nmax, "roots": entries}
    path = _output_path(args, "roots.json")
    _emit(json.dumps(payload, indent=2), path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rmatrix":
            return cmd_rmatrix(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "roots":
            return cmd_roots(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
