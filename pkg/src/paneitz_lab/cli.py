"""``paneitz-lab``: spectra tables, oracle checks, tau* search, scans, energies, bounds.

Data goes to standard output (or ``--output``); diagnostics and summaries go
to standard error. Exit codes: 0 success, 2 invalid arguments or parameters
out of range, 3 numerical failure (including a failed verification).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from typing import Sequence

import numpy as np

from .errors import DomainError, NumericalFailure
from .geometry import (
    AnnulusModel,
    BallModel,
    CylinderModel,
    ModeIndex,
    alpha_from_volume_ratio,
    multiplicity_s3,
    vol_s3,
)
from .hersch import (
    ball_bound_constant,
    cylinder_moebius_energy,
    hersch_bound_search,
    sphere_coordinate_energy_sum,
)
from .numerics import QuadratureSpec, RootSpec
from .oracle import oracle_eigenvalues
from .spectra import (
    TAU_STAR_GRID,
    annulus_bound_constant,
    annulus_eigenvalues,
    ball_eigenvalue,
    cylinder_eigenvalue,
    cylinder_static_eigenvalue,
    find_tau_star,
    gap_ratio,
    scan_monotonicity,
    zero_mode_eigenvalue,
)

SCHEMA_VERSION = 1
VERIFY_TOLERANCE = 1e-8
DEFAULT_LMAX = 20
SCAN_LMAX = 10
SCAN_TAU_GRID = (0.05, 5.0, 20)
ENERGY_DELTA_GRID = (0.05, 1.0, 20)
COMMANDS = ("spectrum", "verify", "tau-star", "scan", "energy", "bounds")


class UsageError(DomainError):
    pass


def _grid(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        out = float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}") from None
    if not (math.isfinite(out[0]) and math.isfinite(out[1]) and out[2] >= 1):
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paneitz-lab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--model", choices=("ball", "annulus", "cylinder", "sphere"))
    p.add_argument("--tau", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--ratio", type=float)
    p.add_argument("--period", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta0", type=float)
    p.add_argument("--lmax", type=int)
    d = p.add_mutually_exclusive_group()
    d.add_argument("--delta", type=float)
    d.add_argument("--delta-grid", type=_grid, metavar="a:b:n")
    p.add_argument("--tau-grid", type=_grid, metavar="a:b:n")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--rel-tol", type=float)
    return p


# ---------------------------------------------------------------------------
# formatting


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.16e" % float(v)
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def render(command: str, params: dict, columns: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": {k: _json_value(v) for k, v in params.items()},
        "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# argument resolution


class Config:
    """Resolved command-line parameters with tolerance overrides applied."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.quad = QuadratureSpec()
        self.root = RootSpec()
        if args.rel_tol is not None:
            if not (math.isfinite(args.rel_tol) and 0 < args.rel_tol < 1):
                raise UsageError(f"--rel-tol must lie in (0, 1), got {args.rel_tol}")
            self.quad = replace(self.quad, rel_tol=args.rel_tol)
            self.root = replace(self.root, rel_tol=args.rel_tol)
        self.params: dict = {}
        # set by commands that still emit their table but must exit nonzero
        self.failure: NumericalFailure | None = None

    def lmax(self, default: int = DEFAULT_LMAX, minimum: int = 0) -> int:
        v = default if self.args.lmax is None else self.args.lmax
        if v < minimum:
            raise UsageError(f"--lmax must be at least {minimum}, got {v}")
        self.params["lmax"] = v
        return v

    def model_name(self, allowed: Sequence[str]) -> str:
        m = self.args.model
        if m is None:
            raise UsageError(f"--model is required ({'|'.join(allowed)})")
        if m not in allowed:
            raise UsageError(f"--model {m} is not supported here ({'|'.join(allowed)})")
        self.params["model"] = m
        return m

    def annulus(self) -> AnnulusModel:
        a = self.args
        if (a.tau is None) == (a.rho is None):
            raise UsageError("the annulus needs exactly one of --tau, --rho")
        if (a.alpha is None) == (a.ratio is None):
            raise UsageError("the annulus needs exactly one of --alpha, --ratio")
        alpha = a.alpha if a.alpha is not None else alpha_from_volume_ratio(a.ratio)
        model = AnnulusModel(a.tau, alpha) if a.tau is not None else AnnulusModel.from_rho(a.rho, alpha)
        self.params.update(tau=model.tau, alpha=model.alpha)
        return model

    def cylinder(self, default_period: float | None = None) -> CylinderModel:
        period = self.args.period if self.args.period is not None else default_period
        if period is None:
            raise UsageError("the cylinder needs --period")
        model = CylinderModel(period)
        self.params["period"] = model.period
        return model


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# commands; each returns (columns, rows)


def cmd_spectrum(cfg: Config):
    name = cfg.model_name(("ball", "annulus", "cylinder"))
    lmax = cfg.lmax()
    rows = []
    if name == "ball":
        for ell in range(lmax + 1):
            branch = "zero" if ell == 0 else "plus"
            rows.append(("ball", ell, branch, ball_eigenvalue(ell), multiplicity_s3(ell)))
    elif name == "annulus":
        model = cfg.annulus()
        rows.append(("annulus", 0, "zero", 0.0, 1))
        rows.append(("annulus", 0, "plus", zero_mode_eigenvalue(model), 1))
        for ell in range(1, lmax + 1):
            lo, hi = annulus_eigenvalues(ell, model)
            m = multiplicity_s3(ell)
            rows.append(("annulus", ell, "minus", lo, m))
            rows.append(("annulus", ell, "plus", hi, m))
    else:
        model = cfg.cylinder()
        for ell in range(lmax + 1):
            rows.append(("cylinder", ell, "cylinder", cylinder_eigenvalue(ell, model), 2 * multiplicity_s3(ell)))
        for ell in range(1, lmax + 1):
            rows.append(("cylinder", ell, "static", cylinder_static_eigenvalue(ell), multiplicity_s3(ell)))
    rows.sort(key=lambda r: (r[3], r[1]))
    return ("model", "ell", "branch", "eigenvalue", "multiplicity"), rows


SEARCH_CAP = 1e12


def _oracle_roots(mode, model, top: float, spec: RootSpec) -> list[float]:
    # widen the window until the oracle sees at least one root
    search_max = 4.0 * top
    while True:
        roots = list(oracle_eigenvalues(mode, model, search_max, spec=spec))
        if roots or search_max >= SEARCH_CAP:
            return roots
        search_max *= 8.0


def _nearest(roots, target):
    if not roots:
        raise NumericalFailure(f"oracle found no root below {SEARCH_CAP:g}", estimate=target)
    return min(roots, key=lambda r: abs(r - target))


def cmd_verify(cfg: Config, tolerance: float = VERIFY_TOLERANCE):
    name = cfg.model_name(("ball", "annulus"))
    lmax = cfg.lmax(minimum=1 if name == "ball" else 0)
    checks = []
    if name == "ball":
        model = BallModel()
        for ell in range(1, lmax + 1):
            checks.append((ell, "plus", ball_eigenvalue(ell), ModeIndex(ell)))
    else:
        model = cfg.annulus()
        checks.append((0, "plus", zero_mode_eigenvalue(model), ModeIndex(0)))
        for ell in range(1, lmax + 1):
            lo, hi = annulus_eigenvalues(ell, model)
            checks.append((ell, "minus", lo, ModeIndex(ell)))
            checks.append((ell, "plus", hi, ModeIndex(ell)))
    cache: dict[int, list[float]] = {}
    rows = []
    for ell, branch, closed, mode in checks:
        if ell not in cache:
            top = max(c for e, _, c, _ in checks if e == ell)
            cache[ell] = _oracle_roots(mode, model, top, cfg.root)
        found = _nearest(cache[ell], closed)
        dev = abs(found - closed) / abs(closed)
        rows.append((name, ell, branch, closed, found, dev, int(dev <= tolerance)))
    worst = max(r[5] for r in rows)
    cfg.params["tolerance"] = tolerance
    _log(f"verify: {len(rows)} checks, max relative deviation {worst:.3e}")
    failed = [r for r in rows if not r[6]]
    columns = ("model", "ell", "branch", "closed_form", "oracle", "rel_deviation", "pass")
    if failed:
        cfg.failure = NumericalFailure(
            f"{len(failed)} of {len(rows)} checks exceed tolerance {tolerance:g}; "
            f"max deviation {worst:.3e}",
            estimate=worst,
        )
    return columns, rows


def cmd_tau_star(cfg: Config):
    beta = cfg.args.beta
    if beta is None:
        raise UsageError("tau-star needs --beta")
    lo, hi, n = cfg.args.tau_grid or TAU_STAR_GRID
    cfg.params.update(beta=beta, tau_lo=lo, tau_hi=hi, points=n)
    result = find_tau_star(beta, lo=lo, hi=hi, points=n, spec=cfg.root)
    residual = gap_ratio(beta, result.tau_star) - 1.0
    return ("beta", "tau_star", "crossing_count", "f_residual"), [
        (beta, result.tau_star, result.crossing_count, residual)
    ]


def cmd_scan(cfg: Config):
    lmax = cfg.lmax(default=SCAN_LMAX, minimum=2)
    alpha = 0.5 if cfg.args.alpha is None else cfg.args.alpha
    lo, hi, n = cfg.args.tau_grid or SCAN_TAU_GRID
    cfg.params.update(alpha=alpha, tau_lo=lo, tau_hi=hi, points=n)
    rows = []
    violations = []
    for tau in np.geomspace(lo, hi, n):
        report = scan_monotonicity(AnnulusModel(float(tau), alpha), lmax)
        bad = {l2 for _, l2 in report.violations}
        violations += [(float(tau), l2) for l2 in sorted(bad)]
        for ell, value in report.values:
            rows.append((float(tau), ell, value, report.zero_mode, int(ell in bad)))
    summary = f"scan: {len(rows)} rows, {len(violations)} monotonicity violations"
    if violations:
        summary += "; at (tau, ell): " + ", ".join(f"({t:.6g}, {l})" for t, l in violations)
    _log(summary)
    return ("tau", "ell", "lambda_minus", "lambda0_plus", "violation"), rows


def cmd_energy(cfg: Config):
    model = cfg.cylinder(default_period=1.0)
    if cfg.args.delta is not None:
        deltas = [cfg.args.delta]
        cfg.params["delta"] = cfg.args.delta
    else:
        a, b, n = cfg.args.delta_grid or ENERGY_DELTA_GRID
        deltas = [float(d) for d in np.linspace(a, b, n)]
        cfg.params.update(delta_lo=a, delta_hi=b, points=n)
    rows = []
    for d in deltas:
        e = cylinder_moebius_energy(d, model, cfg.quad)
        rows.append((d, e.value, e.value * d / (math.pi * model.period)))
    return ("delta", "energy", "energy_delta_over_pi_period"), rows


def cmd_bounds(cfg: Config):
    name = cfg.model_name(("ball", "annulus", "cylinder", "sphere"))
    if name == "ball":
        rows = [("ball", ball_bound_constant())]
    elif name == "sphere":
        rows = [("sphere", sphere_coordinate_energy_sum(cfg.quad))]
    elif name == "annulus":
        a = cfg.args
        if a.rho is None or a.ratio is None:
            raise UsageError("annulus bounds need --rho and --ratio")
        cfg.params.update(rho=a.rho, ratio=a.ratio)
        rows = [("annulus", annulus_bound_constant(a.rho, a.ratio))]
    else:
        model = cfg.cylinder(default_period=1.0)
        eps = 0.5 if cfg.args.epsilon is None else cfg.args.epsilon
        delta0 = 0.5 if cfg.args.delta0 is None else cfg.args.delta0
        cfg.params.update(epsilon=eps, delta0=delta0)
        limit = cylinder_moebius_energy(1.0, model, cfg.quad).value
        found = hersch_bound_search(eps, delta0, model, spec=cfg.quad)
        rows = [
            ("cylinder_limit", limit),
            ("cylinder_hersch", found.value * model.period),
            ("cylinder_hersch_delta", found.delta),
        ]
    return ("constant", "value"), rows


HANDLERS = {
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "tau-star": cmd_tau_star,
    "scan": cmd_scan,
    "energy": cmd_energy,
    "bounds": cmd_bounds,
}


def main(argv: Sequence[str] | None = None, *, verify_tolerance: float = VERIFY_TOLERANCE) -> int:
    """Run one command; returns the process exit code.

    ``verify_tolerance`` exists so tests can force the verification failure path.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config(args)
        handler = HANDLERS[args.command]
        if args.command == "verify":
            columns, rows = handler(cfg, verify_tolerance)
        else:
            columns, rows = handler(cfg)
        text = render(args.command, cfg.params, columns, rows, args.format)
    except DomainError as exc:
        _log(f"paneitz-lab: error: {exc}")
        return 2
    except NumericalFailure as exc:
        _log(f"paneitz-lab: numerical failure: {exc}")
        return 3
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    if cfg.failure is not None:
        _log(f"paneitz-lab: numerical failure: {cfg.failure}")
        return 3
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
