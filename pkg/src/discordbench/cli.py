"""Command-line entry points.

Subcommands
-----------
state       density matrix and correlation measures for a source state
homdip      two-photon coincidence rate versus relative delay (CSV)
delay-scan  purity and discord of the incoherent state versus delay (CSV)
tomography  simulate counts, reconstruct, bootstrap error bars (JSON)
error-curve multi-pair error fraction versus mean photon number (CSV)

Exit codes: 0 success, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .linalg import BASIS_1Q, BASIS_2Q, DensityMatrix, fidelity, partial_trace, purity
from .measures import concurrence, discord
from .multiphoton import error_fraction
from .optics import (
    SourceParams,
    coherence_length,
    coherent_output,
    delayed_incoherent_output,
    hom_dip,
    incoherent_output,
)
from . import tomography as tomo


def _fmt(x: float) -> str:
    return "%.12g" % float(x)


def _round12(x: float) -> float:
    # 12 significant digits, so JSON output is stable across platforms.
    return float(_fmt(x))


def _matrix_obj(rho) -> dict:
    mat = np.asarray(rho)
    basis = BASIS_2Q if mat.shape[0] == 4 else BASIS_1Q
    return {
        "dim": mat.shape[0],
        "basis": list(basis),
        "re": [[_round12(v) for v in row] for row in mat.real],
        "im": [[_round12(v) for v in row] for row in mat.imag],
    }


def _provenance(command: str, args: argparse.Namespace, fields: list[str]) -> str:
    flags = " ".join(
        f"--{name.replace('_', '-')}={getattr(args, name)}" for name in fields
    )
    return f"# generated-by discordbench {command} {flags}".rstrip()


def _write(path: str, text: str) -> int:
    if path == "-":
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 1
    return 0


def _csv(comments: list[str], header: list[str], rows) -> str:
    lines = list(comments)
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _state_flags(args) -> list[str]:
    flags = []
    if args.kind == "coherent":
        flags.append("phi")
    if args.kind == "delayed":
        flags.append("delta")
    return flags + ["mu", "lambda0", "fwhm_lambda", "measure"]


def _cmd_state(args) -> int:
    if args.phi is not None and args.kind != "coherent":
        raise _Usage("--phi only applies to the coherent state")
    if args.delta is not None and args.kind != "delayed":
        raise _Usage("--delta only applies to the delayed state")
    if args.phi is None:
        args.phi = 0.0
    if args.delta is None:
        args.delta = 0.0
    params = SourceParams(mu=args.mu, phi=args.phi, lambda0=args.lambda0,
                          fwhm_lambda=args.fwhm_lambda)
    if args.kind == "coherent":
        rho = coherent_output(params)
    elif args.kind == "incoherent":
        rho = incoherent_output(params)
    else:
        rho = delayed_incoherent_output(params, args.delta)
    res = discord(rho, measured=args.measure)
    report = {
        "command": "state",
        "kind": args.kind,
        "phi": _round12(args.phi),
        "delta_um": _round12(args.delta),
        "measured": args.measure,
        "state": _matrix_obj(rho),
        "reduced_a": _matrix_obj(partial_trace(rho, "A")),
        "reduced_b": _matrix_obj(partial_trace(rho, "B")),
        "purity": _round12(purity(rho)),
        "concurrence": _round12(concurrence(rho)),
        "mutual_information": _round12(res.mutual_information),
        "classical_correlation": _round12(res.classical_correlation),
        "discord": _round12(res.discord),
    }
    if args.format == "json":
        return _write(args.output, json.dumps(report, indent=2) + "\n")
    rows = [(k, report[k]) for k in
            ("purity", "concurrence", "mutual_information",
             "classical_correlation", "discord")]
    mat = np.asarray(rho)
    for i, bi in enumerate(BASIS_2Q):
        for j, bj in enumerate(BASIS_2Q):
            rows.append((f"rho_{bi}_{bj}_re", mat[i, j].real))
            rows.append((f"rho_{bi}_{bj}_im", mat[i, j].imag))
    return _write(args.output, "\n".join(
        [_provenance(f"state {args.kind}", args, _state_flags(args)),
         "quantity,value"]
        + [f"{k},{_fmt(v)}" for k, v in rows]
    ) + "\n")


def _cmd_homdip(args) -> int:
    if args.points < 2:
        raise _Usage("--points must be >= 2")
    params = SourceParams(lambda0=args.lambda0, fwhm_lambda=args.fwhm_lambda)
    deltas = np.linspace(-args.delta_max, args.delta_max, args.points)
    curve = hom_dip(params, deltas)
    lc = coherence_length(args.lambda0, args.fwhm_lambda)
    comments = [
        _provenance("homdip", args, ["lambda0", "fwhm_lambda", "delta_max", "points"]),
        f"# visibility {_fmt(0.5)}",
        f"# fwhm_um {_fmt(lc)}",
    ]
    return _write(args.output, _csv(comments, ["delta_um", "coincidence_norm"], curve))


def _cmd_delay_scan(args) -> int:
    if args.points < 2:
        raise _Usage("--points must be >= 2")
    if args.delta_max <= 0:
        raise _Usage("--delta-max must be positive")
    params = SourceParams(mu=args.mu, lambda0=args.lambda0,
                          fwhm_lambda=args.fwhm_lambda)
    rows = []
    for delta in np.linspace(0.0, args.delta_max, args.points):
        rho = delayed_incoherent_output(params, delta)
        rows.append((delta, purity(rho), discord(rho).discord))
    comments = [_provenance("delay-scan", args,
                            ["mu", "lambda0", "fwhm_lambda", "delta_max", "points"])]
    return _write(args.output, _csv(comments, ["delta_um", "purity", "discord"], rows))


def _cmd_tomography(args) -> int:
    if args.resamples < 2:
        raise _Usage("--resamples must be >= 2")
    params = SourceParams(mu=args.mu, phi=args.phi)
    if args.true_state == "coherent":
        rho_true = coherent_output(params)
    else:
        rho_true = incoherent_output(params)
    settings = tomo.standard_settings()
    records = tomo.simulate_counts(rho_true, settings, args.mean_total, args.seed)
    rec = tomo.mle_reconstruct(records, max_iter=args.max_iter)
    if not rec.converged:
        print("error: maximum-likelihood reconstruction did not converge",
              file=sys.stderr)
        return 3
    boot_d = tomo.bootstrap_uncertainty(records, args.resamples, args.seed, "discord")
    boot_c = tomo.bootstrap_uncertainty(records, args.resamples, args.seed, "concurrence")
    res = discord(rec.rho)
    report = {
        "command": "tomography",
        "true_state": args.true_state,
        "mean_total": _round12(args.mean_total),
        "seed": args.seed,
        "counts": {r.setting.label: r.count for r in records},
        "true": _matrix_obj(rho_true),
        "reconstructed": _matrix_obj(rec.rho),
        "fidelity_to_true": _round12(fidelity(rec.rho, rho_true)),
        "log_likelihood": _round12(rec.log_likelihood),
        "iterations": rec.iterations,
        "discord": _round12(res.discord),
        "discord_std": _round12(boot_d.std),
        "concurrence": _round12(concurrence(rec.rho)),
        "concurrence_std": _round12(boot_c.std),
        "bootstrap_resamples": args.resamples,
        "bootstrap_failures": boot_d.n_failed + boot_c.n_failed,
        "note": ("counts are idealized Poisson draws; finite statistics bias "
                 "the reconstructed discord, so compare to measured values "
                 "qualitatively, not digit by digit"),
    }
    return _write(args.output, json.dumps(report, indent=2) + "\n")


def _cmd_error_curve(args) -> int:
    if not 0 < args.mu_min < args.mu_max:
        raise _Usage("need 0 < --mu-min < --mu-max")
    if args.points < 2:
        raise _Usage("--points must be >= 2")
    mus = np.linspace(args.mu_min, args.mu_max, args.points)
    rows = [(mu, error_fraction(mu, n_cut=args.n_cut)) for mu in mus]
    comments = [_provenance("error-curve", args,
                            ["mu_min", "mu_max", "points", "n_cut"])]
    return _write(args.output, _csv(comments, ["mu", "error_fraction"], rows))


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discordbench",
        description="Quantum discord benchmarks for a beamsplitter photon-pair source.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", default="-", metavar="PATH",
                       help="output file, or - for stdout (default)")

    def add_source(p, mu=True):
        if mu:
            p.add_argument("--mu", type=float, default=0.1,
                           help="mean photon number per pulse (default 0.1)")
        p.add_argument("--lambda0", type=float, default=785.0,
                       help="center wavelength in nm (default 785)")
        p.add_argument("--fwhm-lambda", type=float, default=3.0,
                       help="filter bandwidth FWHM in nm (default 3)")

    p = sub.add_parser("state", help="density matrix and correlation measures")
    p.add_argument("kind", choices=["coherent", "incoherent", "delayed"])
    p.add_argument("--phi", type=float, default=None,
                   help="pump phase in radians (coherent state only)")
    p.add_argument("--delta", type=float, default=None,
                   help="relative delay in um (delayed state only)")
    add_source(p)
    p.add_argument("--measure", choices=["A", "B"], default="B",
                   help="measured subsystem for discord (default B)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    add_output(p)
    p.set_defaults(func=_cmd_state)

    p = sub.add_parser("homdip", help="coincidence rate versus delay")
    add_source(p, mu=False)
    p.add_argument("--delta-max", type=float, default=400.0,
                   help="scan half-range in um (default 400)")
    p.add_argument("--points", type=int, default=161)
    add_output(p)
    p.set_defaults(func=_cmd_homdip)

    p = sub.add_parser("delay-scan", help="purity and discord versus delay")
    add_source(p)
    p.add_argument("--delta-max", type=float, default=500.0,
                   help="maximum delay in um (default 500)")
    p.add_argument("--points", type=int, default=51)
    add_output(p)
    p.set_defaults(func=_cmd_delay_scan)

    p = sub.add_parser("tomography", help="simulate, reconstruct, bootstrap")
    p.add_argument("--true-state", choices=["coherent", "incoherent"],
                   default="coherent")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.1)
    p.add_argument("--mean-total", type=float, default=1e4,
                   help="expected counts at unit probability (default 1e4)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resamples", type=int, default=50,
                   help="bootstrap resamples (default 50)")
    p.add_argument("--max-iter", type=int, default=5000)
    add_output(p)
    p.set_defaults(func=_cmd_tomography)

    p = sub.add_parser("error-curve", help="multi-pair error fraction versus mu")
    p.add_argument("--mu-min", type=float, default=0.01)
    p.add_argument("--mu-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--n-cut", type=int, default=100,
                   help="total photon-number cutoff (default 100)")
    add_output(p)
    p.set_defaults(func=_cmd_error_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))  # exits 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
