"""Batch experiment driver.

Every computation is a subcommand taking flags and an optional JSON
config file (flags win).  Primary payloads go to stdout or --out;
JSON uses stable key order and CSV uses 17-significant-digit floats,
so identical configs give byte-identical outputs.

Exit codes: 0 success, 2 config error, 3 computation error,
4 non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from .centering import (TracelessHermitian, center, eigenbasis_potential,
                        gauge_potential, zero_potential)
from .conversion import (conversion_polynomials, fs_monomial_integral,
                         polynomiality_criterion, admissible_eigenvalue_scan,
                         variation_series_eigen)
from .density import (RadialMetric, RadialProfile, bergman_density, first_variation,
                      section_norms)
from .errors import ComputationError, NonConvergenceError
from .fitting import fit_expansion, load_samples_csv, vanishing_report
from .projective import first_eigenbasis
from .quadrature import monomial_kernel_quadrature
from .ratpoly import InverseMSeries


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _series_dict(s: InverseMSeries) -> dict:
    return {"lead": s.lead, "coeffs": [_frac_str(c) for c in s.coeffs]}


def _poly_dict(p) -> dict:
    return {"coeffs": [_frac_str(p.coefficient(k)) for k in range(p.degree + 1)]}


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _write_payload(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_payload(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _parse_floats(text: str):
    values = [float(tok) for tok in str(text).split(",") if tok.strip() != ""]
    if not values:
        raise ValueError(f"expected a comma separated list of numbers, got {text!r}")
    return values


def _parse_ints(text: str):
    values = [int(tok) for tok in str(text).split(",") if tok.strip() != ""]
    if not values:
        raise ValueError(f"expected a comma separated list of integers, got {text!r}")
    return values


def _profile_from(family: str, eps, coeffs) -> RadialProfile:
    if family == "fs" or family == "zero":
        return RadialProfile.zero()
    if family == "eigenfunction-bump":
        return RadialProfile.eigenfunction_bump(float(_need(eps, "eps")))
    if family == "rational-bump":
        return RadialProfile.rational_bump(float(_need(eps, "eps")))
    if family == "phi1-poly":
        return RadialProfile.from_phi1_poly(_parse_floats(_need(coeffs, "coeffs")))
    raise ValueError(f"unknown profile family {family!r}")


def _need(value, name):
    if value is None:
        raise ValueError(f"missing required parameter {name!r}")
    return value


# ------------------------------------------------------------------ commands

def _cmd_convert_poly(cfg) -> str:
    table = conversion_polynomials(int(cfg["n"]), int(cfg["K"]))
    return _json_payload(table.to_json_dict())


def _cmd_variation(cfg) -> str:
    n = int(cfg["n"])
    J = int(cfg["J"]) if cfg["J"] is not None else n + 4
    lam = Fraction(str(cfg["lam"]))
    series = variation_series_eigen(n, lam, J,
                                    centered=bool(cfg["centered"]),
                                    normalized=not bool(cfg["unnormalized"]))
    k_max = int(cfg["k_max"])
    scan = admissible_eigenvalue_scan(n, k_max, J)
    payload = {
        "n": n,
        "lambda": _frac_str(lam),
        "J": J,
        "centered": bool(cfg["centered"]),
        "series": _series_dict(series),
        "scan": {"k_max": k_max, "admissible": sorted(scan)},
    }
    return _json_payload(payload)


def _cmd_polynomiality(cfg) -> str:
    n = int(cfg["n"])
    rows = []
    for k0 in range(1, int(cfg["k0_max"]) + 1):
        ok, remainder = polynomiality_criterion(n, k0)
        rows.append({
            "k0": k0,
            "polynomial": bool(ok),
            "remainder": _poly_dict(remainder),
        })
    return _json_payload({"n": n, "k0_max": int(cfg["k0_max"]), "table": rows})


def _cmd_fs_check(cfg) -> str:
    n = int(cfg["n"])
    m_max = int(cfg["m_max"])
    if n == 1:
        grid = [0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e4]
        fs = RadialMetric.fubini_study()
        worst_density = 0.0
        worst_norm = 0.0
        for m in range(m_max + 1):
            res = bergman_density(fs, m, grid, tol=1e-13)
            worst_density = max(worst_density, float(np.max(np.abs(res.values - (m + 1)))))
            exact = np.array([
                math.factorial(j) * math.factorial(m - j) / math.factorial(m + 1)
                for j in range(m + 1)
            ])
            worst_norm = max(worst_norm, float(np.max(np.abs(res.norms / exact - 1.0))))
        payload = {
            "n": 1,
            "m_max": m_max,
            "max_density_deviation": worst_density,
            "density_tol": 1e-9,
            "max_norm_rel_error": worst_norm,
            "norm_rtol": 1e-10,
            "pass": bool(worst_density < 1e-9 and worst_norm < 1e-10),
        }
        return _json_payload(payload)
    if n == 2:
        worst = 0.0
        for m in range(min(m_max, 6) + 1):
            for p1 in range(m + 1):
                for p2 in range(m - p1 + 1):
                    got = monomial_kernel_quadrature(2, m, (p1, p2), rtol=1e-10)
                    want = float(fs_monomial_integral(2, m, (p1, p2)))
                    worst = max(worst, abs(got / want - 1.0))
        payload = {
            "n": 2,
            "m_max": min(m_max, 6),
            "max_rel_error": worst,
            "tol": 1e-8,
            "pass": bool(worst < 1e-8),
        }
        return _json_payload(payload)
    raise ValueError("fs-check supports n = 1 (density) and n = 2 (monomial integrals)")


def _cmd_density(cfg) -> str:
    metric = RadialMetric(_profile_from(cfg["metric"], cfg["eps"], cfg["coeffs"]))
    ms = _parse_ints(_need(cfg["m_list"], "m_list"))
    grid = _parse_floats(_need(cfg["grid"], "grid"))
    tol = float(cfg["tol"])
    results = [bergman_density(metric, m, grid, tol=tol) for m in ms]
    header = ["s"] + [f"Pi_m{m}" for m in ms]
    rows = [[s] + [res.values[i] for res in results] for i, s in enumerate(grid)]
    return _csv_text(header, rows)


def _cmd_fit(cfg) -> str:
    path = _need(cfg["samples"], "samples")
    if cfg["at_s"] is not None:
        samples = _density_csv_samples(path, float(cfg["at_s"]))
    else:
        samples = load_samples_csv(path)
    fit = fit_expansion(samples, int(cfg["n"]), int(cfg["K"]))
    payload = fit.to_json_dict()
    if cfg["vanishing_tol"] is not None:
        payload["vanishing"] = vanishing_report(
            fit, int(cfg["n"]), float(cfg["vanishing_tol"])
        ).to_json_dict()
    return _json_payload(payload)


def _density_csv_samples(path, at_s: float):
    """Pull (m, value) pairs for one grid point out of a density CSV."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if not header or header[0] != "s":
            raise ValueError("expected a density CSV with header s,Pi_m...")
        ms = []
        for col in header[1:]:
            if not col.startswith("Pi_m"):
                raise ValueError(f"unexpected column {col!r}")
            ms.append(int(col[len("Pi_m"):]))
        best = None
        for line in fh:
            if not line.strip():
                continue
            cells = [float(c) for c in line.strip().split(",")]
            gap = abs(cells[0] - at_s)
            if best is None or gap < best[0]:
                best = (gap, cells)
    if best is None:
        raise ValueError("density CSV has no data rows")
    if best[0] > 1e-9:
        raise ValueError(f"no grid row at s = {at_s} (closest is {best[1][0]})")
    return list(zip(ms, best[1][1:]))


def _cmd_first_variation(cfg) -> str:
    metric = RadialMetric.fubini_study()
    phi = _profile_from(_need(cfg["phi"], "phi"), cfg["eps"], cfg["coeffs"])
    res = first_variation(metric, phi, int(cfg["m"]), s=float(cfg["s"]),
                          t=float(cfg["step"]))
    payload = {
        "m": res.m,
        "s": res.s,
        "step": res.step,
        "formula_value": res.formula_value,
        "fd_value": res.fd_value,
        "rel_diff": res.rel_diff,
    }
    return _json_payload(payload)


def _cmd_center(cfg) -> str:
    kind = cfg["potential"]
    scale = float(cfg["scale"])
    if kind == "zero":
        phi = zero_potential
    elif kind == "eigenbasis-diag":
        diag = [f for f in first_eigenbasis(1) if f.kind == "diag"][0]
        phi = eigenbasis_potential(diag, scale)
    elif kind == "gauge-diag":
        b = scale / math.sqrt(2.0)
        phi = gauge_potential(TracelessHermitian([[b, 0.0], [0.0, -b]]))
    else:
        raise ValueError(f"unknown potential {kind!r}")
    state = center(phi, tol=float(cfg["tol"]), max_iter=int(cfg["max_iter"]),
                   eta=float(cfg["eta"]), damping=float(cfg["damping"]))
    if cfg["trace_out"]:
        rows = [(str(k), _fmt(sn), _fmt(rn)) for k, sn, rn in state.trace]
        text = _csv_text(["iteration", "step_norm", "residual_norm"], rows)
        with open(cfg["trace_out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    payload = {
        "potential": kind,
        "scale": scale,
        "iterations": state.iteration,
        "converged": state.converged,
        "residual_norm": state.residual_norm,
        "step_norm": state.step_norm,
        "A_re": [[float(x) for x in row] for row in state.A.matrix.real],
        "A_im": [[float(x) for x in row] for row in state.A.matrix.imag],
    }
    return _json_payload(payload)


_COMMANDS = {
    "convert-poly": (_cmd_convert_poly, {"n": 1, "K": 3}),
    "variation": (_cmd_variation,
                  {"n": 1, "lam": "2", "J": None, "centered": None,
                   "unnormalized": None, "k_max": 6}),
    "polynomiality": (_cmd_polynomiality, {"n": 1, "k0_max": 5}),
    "fs-check": (_cmd_fs_check, {"n": 1, "m_max": 30}),
    "density": (_cmd_density,
                {"metric": "fs", "eps": None, "coeffs": None, "m_list": None,
                 "grid": None, "tol": 1e-12}),
    "fit": (_cmd_fit,
            {"samples": None, "n": 1, "K": 2, "at_s": None, "vanishing_tol": None}),
    "first-variation": (_cmd_first_variation,
                        {"phi": None, "eps": None, "coeffs": None, "m": 20,
                         "s": 0.0, "step": 1e-5}),
    "center": (_cmd_center,
               {"potential": "zero", "scale": 0.05, "tol": 1e-8, "max_iter": 50,
                "eta": 0.1, "damping": 0.5, "trace_out": None}),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpnbergman",
        description="Bergman density experiments on complex projective space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *specs):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None)
        p.add_argument("--out", default=None)
        for flag, kwargs in specs:
            p.add_argument(flag, **kwargs)
        return p

    add("convert-poly", ("--n", {}), ("--K", {}))
    add("variation", ("--n", {}), ("--lambda", {"dest": "lam"}), ("--J", {}),
        ("--centered", {"action": "store_true", "default": None}),
        ("--unnormalized", {"action": "store_true", "default": None}),
        ("--k-max", {"dest": "k_max"}))
    add("polynomiality", ("--n", {}), ("--k0-max", {"dest": "k0_max"}))
    add("fs-check", ("--n", {}), ("--m-max", {"dest": "m_max"}))
    add("density", ("--metric", {}), ("--eps", {}), ("--coeffs", {}),
        ("--m-list", {"dest": "m_list"}), ("--grid", {}), ("--tol", {}))
    add("fit", ("--samples", {}), ("--n", {}), ("--K", {}),
        ("--at-s", {"dest": "at_s"}), ("--vanishing-tol", {"dest": "vanishing_tol"}))
    add("first-variation", ("--phi", {}), ("--eps", {}), ("--coeffs", {}),
        ("--m", {}), ("--s", {}), ("--step", {}))
    add("center", ("--potential", {}), ("--scale", {}), ("--tol", {}),
        ("--max-iter", {"dest": "max_iter"}), ("--eta", {}), ("--damping", {}),
        ("--trace-out", {"dest": "trace_out"}))
    return parser


def _effective_config(ns: argparse.Namespace, defaults: dict) -> dict:
    cfg = dict(defaults)
    if ns.config:
        with open(ns.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if key not in cfg:
                raise ValueError(f"unknown config key {key!r}")
            cfg[key] = value
    for key in cfg:
        flag_value = getattr(ns, key, None)
        if flag_value is not None:
            cfg[key] = flag_value
    return cfg


def _error_payload(exc: Exception, command: str, cfg: dict) -> str:
    params = {k: (v if isinstance(v, (int, float, bool, str, type(None))) else str(v))
              for k, v in (cfg or {}).items()}
    detail = {
        "type": type(exc).__name__,
        "operation": command,
        "params": params,
        "message": str(exc),
    }
    state = getattr(exc, "state", None)
    if state is not None:
        detail["iterations"] = state.iteration
        detail["residual_norm"] = state.residual_norm
    return _json_payload({"error": detail})


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    runner, defaults = _COMMANDS[ns.command]
    cfg = None
    try:
        cfg = _effective_config(ns, defaults)
        payload = runner(cfg)
    except NonConvergenceError as exc:
        sys.stdout.write(_error_payload(exc, ns.command, cfg))
        return 4
    except ComputationError as exc:
        sys.stdout.write(_error_payload(exc, ns.command, cfg))
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stdout.write(_error_payload(exc, ns.command, cfg))
        return 2
    _write_payload(payload, ns.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
