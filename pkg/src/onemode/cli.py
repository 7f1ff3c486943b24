"""Command-line interface.

Exit codes: 0 success, 2 invalid input or failed validity, 3 internal
invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .canonical import CanonicalForm, ChannelClass, build_canonical, classify, decomposition_residuals
from .channels import GaussianChannel, GaussianState, apply_to_state, require_valid
from .dilation import channel_from_dilation, dilation_of, environment_channel_from_dilation
from .entropy import (
    EntropyConfig,
    b2_scan,
    c_channel_capacity,
    degradability_report,
    gaussian_entropy,
    scan_grid,
)
from .exceptions import InvalidChannelError, InvariantError
from .fock import default_kernel_points, gaussian_kernel_check, oracle_report
from .symplectic import DEFAULT_TOL

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _load_document(arg: str):
    """Parse a JSON/TOML file path, or an inline JSON literal."""
    if arg == "-":
        text, suffix = sys.stdin.read(), ".json"
    else:
        path = Path(arg)
        if path.is_file():
            text, suffix = path.read_text(), path.suffix.lower()
        else:
            text, suffix = arg, ".json"
    try:
        if suffix == ".toml":
            import tomli

            return tomli.loads(text)
        return json.loads(text)
    except Exception as exc:  # noqa: BLE001 - parser errors vary by backend
        raise InvalidChannelError(f"cannot parse {arg!r}: {exc}") from None


def load_channel(arg: str, tol: float) -> GaussianChannel:
    data = _load_document(arg)
    if not isinstance(data, dict):
        raise InvalidChannelError("channel spec must be an object with keys 'K' and 'alpha'")
    ch = GaussianChannel.from_dict(data)
    if ch.K.shape != (2, 2):
        raise InvalidChannelError(f"channel spec must be one-mode (2x2 K and alpha), got K {ch.K.shape}")
    return require_valid(ch, tol)


def load_state(arg: str, tol: float) -> GaussianState:
    data = _load_document(arg)
    if isinstance(data, dict):
        data = data.get("cov")
    s = GaussianState.from_cov(data)
    if np.max(np.abs(s.cov - s.cov.T)) > 1e-12:
        raise InvalidChannelError("state covariance must be symmetric")
    if not s.is_legal(tol):
        raise InvalidChannelError(
            f"state covariance violates the uncertainty relation (margin {s.uncertainty_margin():.3g})"
        )
    return s


def _form_from_args(args) -> CanonicalForm:
    tag = ChannelClass(args.cls)
    kw = {}
    if tag in (ChannelClass.A1, ChannelClass.A2, ChannelClass.C, ChannelClass.D):
        kw["N0"] = args.n0 if args.n0 is not None else 0.0
    if tag is ChannelClass.B2:
        kw["Nc"] = args.nc if args.nc is not None else 0.0
    if tag in (ChannelClass.C, ChannelClass.D):
        if args.k is None:
            raise InvalidChannelError(f"class {tag.value} needs --k")
        kw["k"] = args.k
    return CanonicalForm(tag, **kw)


def _config(args) -> dict:
    return {
        "tol": args.tol,
        "log_base": "e" if args.log_base == "e" else 2,
        "format": args.format,
        "seed": args.seed,
    }


def _check_finite(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            _check_finite(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _check_finite(v)
    elif isinstance(obj, float) and not math.isfinite(obj):
        raise InvariantError("non-finite number in output")


def _emit(payload: dict, args, out):
    _check_finite(payload)
    if args.format == "json":
        json.dump({"config": _config(args), **payload}, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    print(json.dumps({"config": _config(args)}), file=sys.stderr)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["key", "value"])
    for key, value in _flatten(payload):
        w.writerow([key, _num(value) if isinstance(value, float) else value])


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def cmd_classify(args, cfg, out):
    ch = load_channel(args.spec, args.tol)
    dec = classify(ch, args.tol)
    res = decomposition_residuals(ch, dec)
    return {
        "class": dec.form.tag.value,
        **dec.form.params,
        "params": dec.form.params,
        "T1": dec.T1.tolist(),
        "T2": dec.T2.tolist(),
        "residuals": res,
    }


def cmd_canonical(args, cfg, out):
    form = _form_from_args(args)
    ch = require_valid(build_canonical(form), args.tol)
    return {"class": form.tag.value, "params": form.params, **ch.to_dict()}


def cmd_evolve(args, cfg, out):
    ch = load_channel(args.spec, args.tol)
    s = load_state(args.state, args.tol)
    result = apply_to_state(ch, s)
    if not result.is_legal(args.tol):
        raise InvariantError("output of a valid channel violates the uncertainty relation")
    return {"cov": result.cov.tolist(), "mean": result.mean.tolist()}


def cmd_entropy(args, cfg, out):
    s = load_state(args.state, args.tol)
    return {"entropy": gaussian_entropy(s, cfg, args.tol), "symplectic_eigenvalues": s.symplectic_eigenvalues().tolist()}


def cmd_scan_f(args, cfg, out):
    grid = scan_grid(args.n_max, args.points, args.n_min)
    rows = b2_scan(args.nc, grid, cfg)
    if args.format == "json":
        return {"Nc": args.nc, "rows": [[p.N, p.H_out, p.H_exch, p.F] for p in rows]}
    print(json.dumps({"config": _config(args), "Nc": args.nc}), file=sys.stderr)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["N", "H_out", "H_exch", "F"])
    for p in rows:
        vals = (p.N, p.H_out, p.H_exch, p.F)
        if not all(math.isfinite(v) for v in vals):
            raise InvariantError("non-finite value in scan")
        w.writerow([_num(v) for v in vals])
    return None


def cmd_capacity(args, cfg, out):
    return {"k": args.k, "capacity": c_channel_capacity(args.k, cfg)}


def cmd_degradability(args, cfg, out):
    form = _form_from_args(args)
    d = dilation_of(form)
    ch, comp = channel_from_dilation(d), environment_channel_from_dilation(d, args.tol)
    rep = degradability_report(ch, comp, args.tol)
    return {
        "class": form.tag.value,
        "params": form.params,
        "verdict": rep.verdict.value,
        "complementary": bool(comp.complementary),
        "J_min": rep.J_min,
        "J_max": rep.J_max,
    }


def cmd_oracle(args, cfg, out):
    rep = oracle_report(args.n, args.nc, args.cutoff, cfg)
    pts = default_kernel_points(seed=args.seed)
    rep["kernel_max_error"] = gaussian_kernel_check(rep["kernel_N"], pts, min(args.cutoff, 50))
    return rep


def _positive(x: str) -> float:
    v = float(x)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return v


def _nonneg(x: str) -> float:
    v = float(x)
    if not (math.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {x}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="onemode", description="One-mode Gaussian channel toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--tol", type=_positive, default=DEFAULT_TOL)
    p.add_argument("--log-base", choices=["2", "e"], default="2")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--seed", type=int, default=7)
    sub = p.add_subparsers(dest="command", required=True)

    def form_args(sp):
        sp.add_argument("cls", choices=[c.value for c in ChannelClass], metavar="class")
        sp.add_argument("--n0", type=_nonneg)
        sp.add_argument("--nc", type=_nonneg)
        sp.add_argument("--k", type=_positive)

    sp = sub.add_parser("classify", help="reduce a channel to canonical form")
    sp.add_argument("spec")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("canonical", help="print the canonical (K, alpha) of a class")
    form_args(sp)
    sp.set_defaults(func=cmd_canonical)

    sp = sub.add_parser("evolve", help="apply a channel to a state covariance")
    sp.add_argument("spec")
    sp.add_argument("--state", required=True)
    sp.set_defaults(func=cmd_evolve)

    sp = sub.add_parser("entropy", help="entropy of a Gaussian state")
    sp.add_argument("--state", required=True)
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("scan-f", help="coherent information F(N) of the additive noise channel")
    sp.add_argument("--nc", type=_positive, required=True)
    sp.add_argument("--n-max", type=_positive, default=1e6)
    sp.add_argument("--n-min", type=_positive, default=1e-3)
    sp.add_argument("--points", type=int, default=200)
    sp.set_defaults(func=cmd_scan_f, default_format="csv")

    sp = sub.add_parser("capacity", help="quantum capacity of the attenuator/amplifier with N0 = 0")
    sp.add_argument("--k", type=_positive, required=True)
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("degradability", help="degradability verdict for a canonical class")
    form_args(sp)
    sp.set_defaults(func=cmd_degradability)

    sp = sub.add_parser("oracle", help="Fock-space cross-check of the additive noise channel")
    sp.add_argument("--cutoff", type=int, default=60)
    sp.add_argument("--nc", type=_positive, default=0.5)
    sp.add_argument("--n", type=_nonneg, default=0.3)
    sp.set_defaults(func=cmd_oracle)
    return p


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    cfg = EntropyConfig("e" if args.log_base == "e" else 2.0)
    try:
        if args.command == "scan-f" and args.points < 2:
            raise InvalidChannelError("--points must be >= 2")
        payload = args.func(args, cfg, out)
        if payload is not None:
            _emit(payload, args, out)
    except InvariantError as exc:
        print(f"error: internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InvalidChannelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main():
    sys.exit(run_cli())
