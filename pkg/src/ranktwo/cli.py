"""Command-line interface.

Subcommands mirror the library: concurrence, entanglement, holevo,
geometry, verify.  All results go to stdout as JSON with sorted keys, so
identical inputs (and seeds) give byte-identical output.  Exit codes:
0 success, 1 property failure, 2 malformed input, 3 math-domain error.
Set CONC_LOG=debug (or info, warning) for progress logging on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .entanglement import capacity_grid, entanglement, holevo_capacity, holevo_star
from . import geometry
from ._kernels import backend_name
from .channel import RankTwoChannel, load_channel
from .concurrence import concurrence, lower_bound, max_concurrence, separable_vectors
from .errors import RankTwoError, SpecFormatError
from .linalg import ensure_hermitian, state_from_bloch
from .verify import run_battery

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_BAD_INPUT = 2
EXIT_DOMAIN = 3

log = logging.getLogger("ranktwo.cli")


def _parse_base(text: str) -> float:
    if text == "2":
        return 2.0
    if text == "e":
        return float(np.e)
    raise SpecFormatError("--base must be 2 or e")


def parse_state(spec: str) -> np.ndarray:
    """State argument: either a Bloch triple 'rx,ry,rz' or a full set of
    matrix entries, row-major, as Python complex literals."""
    parts = [p.strip() for p in spec.split(",") if p.strip() != ""]
    if len(parts) == 3:
        try:
            r = np.array([float(p) for p in parts])
        except ValueError as exc:
            raise SpecFormatError(f"bad Bloch entry: {exc}") from None
        return state_from_bloch(r)
    d = int(round(np.sqrt(len(parts))))
    if d * d != len(parts) or d < 2:
        raise SpecFormatError(
            "state must be a Bloch triple or d*d matrix entries, row-major"
        )
    try:
        vals = [complex(p) for p in parts]
    except ValueError as exc:
        raise SpecFormatError(f"bad matrix entry: {exc}") from None
    return ensure_hermitian(np.array(vals, dtype=complex).reshape(d, d))


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return [_jsonable(complex(v)) for v in x.ravel()]
        return [float(v) for v in x.ravel()]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load(path: str) -> RankTwoChannel:
    try:
        return load_channel(path)
    except FileNotFoundError:
        raise SpecFormatError(f"channel file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"channel file is not valid JSON: {exc}") from None


def cmd_concurrence(args) -> int:
    ch = _load(args.channel)
    x = parse_state(args.state)
    if ch.length == 2:
        rep = concurrence(ch, x)
        payload = {
            "C": rep.value,
            "method": rep.method,
            "degenerate": rep.degenerate,
            "c_complex": _jsonable(rep.c_complex) if rep.c_complex is not None else None,
            "l1": rep.l1,
            "l2": rep.l2,
        }
        if ch.dim_in == 2 and not rep.degenerate:
            v1, v2 = separable_vectors(ch)
            payload["separable_vectors"] = [_jsonable(v1), _jsonable(v2)]
        else:
            payload["separable_vectors"] = None
    else:
        bnd = lower_bound(ch, x)
        payload = {
            "C_lower_bound": bnd.value,
            "closed_form_bound": bnd.closed_form,
            "method": "lower_bound",
            "sub_values": list(bnd.sub_values),
        }
    _emit(payload)
    return EXIT_OK


def cmd_entanglement(args) -> int:
    ch = _load(args.channel)
    x = parse_state(args.state)
    rep = entanglement(ch, x, base=args.base)
    _emit(
        {
            "E": rep.value,
            "y_plus": rep.y_plus,
            "y_minus": rep.y_minus,
            "C": rep.concurrence,
            "trace_out": rep.trace_out,
            "base": rep.base,
        }
    )
    return EXIT_OK


def cmd_holevo(args) -> int:
    ch = _load(args.channel)
    if args.state is not None:
        x = parse_state(args.state)
        value = holevo_star(ch, x, base=args.base)
        _emit({"chi_star": value, "base": args.base, "method": "state"})
        return EXIT_OK
    res = holevo_capacity(ch, base=args.base)
    payload = {
        "chi_star": res.value,
        "argmax_bloch": _jsonable(res.bloch),
        "method": res.method,
        "base": args.base,
    }
    if args.verify:
        oracle = capacity_grid(ch, resolution=args.resolution, base=args.base)
        payload["grid_value"] = oracle.value
        payload["difference"] = abs(res.value - oracle.value)
        if payload["difference"] > 1e-6:
            _emit(payload)
            return EXIT_PROPERTY
    _emit(payload)
    return EXIT_OK


def cmd_geometry(args) -> int:
    ch = _load(args.channel)
    cmax = max_concurrence(ch)
    if args.levels:
        try:
            levels = [float(p) for p in args.levels.split(",") if p.strip() != ""]
        except ValueError as exc:
            raise SpecFormatError(f"bad level: {exc}") from None
    else:
        levels = [0.0, 0.35 * cmax, 0.7 * cmax]
    os.makedirs(args.out, exist_ok=True)
    entries = []
    for i, level in enumerate(levels):
        points, meta = geometry.cylinder_samples(
            ch, level, n_angles=args.angles, n_sweeps=args.sweeps
        )
        fname = f"level_{i}_{level:.6f}.csv"
        geometry.write_samples_csv(os.path.join(args.out, fname), points)
        entries.append(
            {
                "level": level,
                "file": fname,
                "points": int(len(points)),
                "kind": meta["kind"],
            }
        )
    payload = {
        "levels": entries,
        "max_concurrence": cmax,
        "degenerate": ch.is_degenerate(),
    }
    if ch.is_degenerate():
        payload["separable_vectors"] = None
        payload["line_direction_bloch"] = None
    else:
        v1, v2 = separable_vectors(ch)
        line = geometry.constant_line(ch, np.eye(2) / 2.0)
        payload["separable_vectors"] = [_jsonable(v1), _jsonable(v2)]
        payload["line_direction_bloch"] = _jsonable(line.bloch_direction)
    _emit(payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_battery(seed=args.seed, scale=args.scale, base=args.base)
    payload = report.to_dict()
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK if report.passed else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranktwo",
        description="Concurrence, entanglement and Holevo capacity of rank-two channels",
    )
    parser.add_argument(
        "--version", action="version", version=f"ranktwo ({backend_name()} kernels)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concurrence", help="channel concurrence of a state")
    p.add_argument("--channel", required=True, help="channel JSON file")
    p.add_argument("--state", required=True, help="Bloch triple or matrix entries")
    p.set_defaults(fn=cmd_concurrence)

    p = sub.add_parser("entanglement", help="closed-form entanglement of a state")
    p.add_argument("--channel", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--base", type=_parse_base, default=2.0)
    p.set_defaults(fn=cmd_entanglement)

    p = sub.add_parser("holevo", help="Holevo quantity / capacity")
    p.add_argument("--channel", required=True)
    p.add_argument("--state", help="report chi* of this state instead of maximizing")
    p.add_argument("--base", type=_parse_base, default=2.0)
    p.add_argument("--verify", action="store_true", help="cross-check against the lattice scan")
    p.add_argument("--resolution", type=int, default=200)
    p.set_defaults(fn=cmd_holevo)

    p = sub.add_parser("geometry", help="sample constant-concurrence sets to CSV")
    p.add_argument("--channel", required=True)
    p.add_argument("--levels", help="comma-separated concurrence levels")
    p.add_argument("--out", required=True, help="output directory for CSV files")
    p.add_argument("--angles", type=int, default=24)
    p.add_argument("--sweeps", type=int, default=9)
    p.set_defaults(fn=cmd_geometry)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--scale", type=float, default=1.0, help="scale all instance counts")
    p.add_argument("--base", type=_parse_base, default=2.0)
    p.add_argument("--out", help="also write the JSON report to this file")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("CONC_LOG", "").strip().upper()
    if level:
        logging.basicConfig(
            stream=sys.stderr,
            level=getattr(logging, level, logging.INFO),
            format="%(name)s %(levelname)s %(message)s",
        )
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SpecFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ArithmeticError as exc:
        print(f"property failure: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except RankTwoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
