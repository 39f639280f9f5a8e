"""Command-line front end: ``hyperlp {regions,weyl,ode,middle,kernels,check-all}``.

Every command is a pure :func:`render` of a :class:`RunConfig` into
``{filename: text}``; :func:`main` only parses, renders and writes.  Each
command writes ``<command>.json`` with the effective configuration in its
header.  With ``--format csv`` tabular data also goes to CSV files; with
``--format json`` it is embedded in the JSON under ``"data"``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import halfspace as hs
from . import kernels, middle, radial, regions
from .report import CheckReport, dumps_csv, dumps_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    """Invalid parameters; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: str = "hyperlp_out"
    fmt: str = "json"
    seed: int = 0

    def header(self) -> dict:
        return {"command": self.command, "params": dict(sorted(self.params.items())), "out": self.out,
                "format": self.fmt, "seed": self.seed, "version": __version__}


@dataclass
class Rendered:
    files: dict
    passed: bool = True
    summary: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# parameter parsing


def _float(text) -> float:
    v = str(text).strip().lower()
    if v in ("inf", "infinity"):
        return math.inf
    return float(v)


def _float_list(text) -> list:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [_float(v) for v in str(text).split(",") if v.strip()]


def _int_list(text) -> list:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).split(",") if v.strip()]


KERNEL_CHECKS = ("heat", "resolvent", "gaussian", "impo", "schur", "volume", "wave", "taylor", "fourier", "symbol")

# name: (type, default, help) per command; flags are --name with '_' as '-'
PARAMS = {
    "regions": {
        "N": (int, 3, "dimension parameter, H^{N+1}"),
        "k": (int, 0, "form degree"),
        "p": (_float, 1.0, "exponent (inf allowed)"),
        "s_max": (float, 5.0, "parabola parameter range [-s_max, s_max]"),
        "s_num": (int, 201, "number of boundary samples"),
        "raster": (int, 0, "membership raster size per axis (0 = off)"),
    },
    "weyl": {
        "N": (int, 3, "dimension parameter"),
        "k": (int, 0, "form degree"),
        "p": (_float, 1.0, "exponent, at most 2"),
        "s": (_float_list, [0.0], "comma-separated s values"),
        "n_list": (_int_list, [4, 8, 16, 32], "comma-separated ascending n values"),
    },
    "ode": {
        "N": (int, 3, "dimension parameter"),
        "k": (int, 1, "form degree"),
        "lambda": (float, 4.0, "sphere eigenvalue"),
        "Lre": (float, 0.0, "real part of Lambda"),
        "Lim": (float, 0.0, "imaginary part of Lambda"),
        "R": (float, 0.0, "integration end (0 = end of the fit window)"),
        "tol": (float, 1e-10, "relative tolerance"),
        "dr": (float, 0.02, "output spacing"),
    },
    "middle": {
        "N": (int, 3, "odd dimension parameter"),
        "p_list": (_float_list, [1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0], "exponents to tabulate"),
        "R": (float, 40.0, "tail radius"),
        "xtol": (float, 1e-4, "bisection tolerance"),
    },
    "kernels": {
        "check": (str, "all", "all or a comma-separated subset of " + ",".join(KERNEL_CHECKS)),
        "wave_h": (float, 1e-3, "finest wave mesh width"),
    },
    "check-all": {
        "only": (_int_list, [], "comma-separated criterion numbers (default all)"),
    },
}


def _coerce(command: str, raw: dict) -> dict:
    spec = PARAMS[command]
    out = {}
    for name, (typ, default, _) in spec.items():
        val = raw.get(name, default)
        try:
            out[name] = typ(val)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {name}: {val!r}") from exc
    unknown = set(raw) - set(spec)
    if unknown:
        raise UsageError(f"unknown parameter(s) for {command}: {', '.join(sorted(unknown))}")
    return out


def read_config(path) -> dict:
    """``key=value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


# ---------------------------------------------------------------------------
# renderers


def _emit(cfg: RunConfig, payload: dict, tables: dict, passed: bool = True, summary=None) -> Rendered:
    """Attach tables as CSV files or embed them, and prepend the config header."""
    doc = {"config": cfg.header(), **payload}
    files = {}
    if cfg.fmt == "csv":
        for name, (header, rows) in tables.items():
            files[f"{cfg.command}_{name}.csv"] = dumps_csv(header, rows)
    else:
        doc["data"] = {name: [dict(zip(header, row)) for row in rows] for name, (header, rows) in tables.items()}
    doc["pass"] = passed
    files[f"{cfg.command}.json"] = dumps_json(doc)
    return Rendered(files, passed, summary or [])


def render_regions(cfg: RunConfig) -> Rendered:
    P = cfg.params
    if P["s_max"] <= 0 or P["s_num"] < 2 or P["raster"] < 0:
        raise UsageError("need s_max > 0, s_num >= 2, raster >= 0")
    spec = regions.RegionSpec(P["N"], P["k"], P["p"])
    g = spec.geometry
    s = np.linspace(-P["s_max"], P["s_max"], P["s_num"])
    pts = regions.boundary_points(spec, s)
    tables = {"boundary": (["s", "re", "im"], [[a, z.real, z.imag] for a, z in zip(s, pts)])}
    middle_deg = spec.N % 2 == 1 and 2 * spec.reduced_degree == spec.N + 1
    meta = {
        "reduced_degree": spec.reduced_degree,
        "dual_exponent": regions.dual_exponent(spec.p),
        "vertex": g.vertex_v,
        "half_width": g.half_width_d,
        "degenerate_ray": g.half_width_d == 0,
        "bottom_values": list(regions.bottom_values(spec.N, spec.k)),
        "isolated_zero": bool(middle_deg and not regions.contains(spec, 0.0)),
    }
    if P["raster"]:
        n = P["raster"]
        w = max(g.half_width_d, 1.0)
        xs = np.linspace(g.vertex_v - 2 * w * w - 1, g.vertex_v + 4 * w * w + 4, n)
        ys = np.linspace(-4 * w * w - 2, 4 * w * w + 2, n)
        rows = []
        for y in ys:
            for x in xs:
                lam = complex(x, y)
                rows.append([x, y, regions.spectrum_contains(spec, lam), regions.is_lp_eigenvalue(spec, lam)])
        tables["raster"] = (["x", "y", "in_region", "is_eigenvalue"], rows)
    return _emit(cfg, {"region": meta}, tables)


def render_weyl(cfg: RunConfig) -> Rendered:
    P = cfg.params
    ns = P["n_list"]
    if len(ns) < 2 or any(b <= a for a, b in zip(ns[:-1], ns[1:])) or ns[0] < 2:
        raise UsageError("n_list must be ascending, at least two values, each >= 2")
    if P["p"] > 2:
        raise UsageError("approximate eigenforms are built for p <= 2")
    spec = regions.RegionSpec(P["N"], P["k"], P["p"])
    rows, fits, ok = [], {}, True
    for s in P["s"]:
        with warnings.catch_warnings():
            warnings.simplefilter("error", hs.GridCoverageWarning)
            qs = [hs.weyl_quotient(n, spec, s) for n in ns]
        slope = float(np.polyfit(np.log(ns), np.log(qs), 1)[0])
        mono = all(b < a for a, b in zip(qs[:-1], qs[1:]))
        fits[str(s)] = {"fitted_exponent": slope, "monotone": mono, "eigenvalue": hs.weyl_eigenvalue(spec, s)}
        ok = ok and mono and slope <= -0.8
        rows += [[s, n, q] if len(P["s"]) > 1 else [n, q] for n, q in zip(ns, qs)]
    header = ["s", "n", "quotient"] if len(P["s"]) > 1 else ["n", "quotient"]
    rep = CheckReport.bound("weyl_decay", max(f["fitted_exponent"] for f in fits.values()), -0.8,
                            "approximate eigenforms for the boundary parabola")
    rep.passed = ok
    return _emit(cfg, {"fits": fits, "checks": [rep.to_dict()]}, {"quotients": (header, rows)}, ok, [rep])


def render_ode(cfg: RunConfig) -> Rendered:
    P = cfg.params
    prob = radial.RadialProblem(P["N"], P["k"], P["lambda"], complex(P["Lre"], P["Lim"]))
    frob = radial.frobenius_index(prob.N, prob.k, prob.sphere_eig, prob.spectral)
    growth = radial.measure_growth(prob, tol=P["tol"])
    predicted = radial.predicted_slope(prob)
    R = P["R"] or growth.fit_window[1]
    profile = radial.integrate(prob, R=R, tol=P["tol"], dr=P["dr"])
    rep = CheckReport.close("ode_growth", growth.fitted_slope, predicted, 1e-2, "growth of order exp((-m+a) r)")
    payload = {
        "frobenius_alpha": frob.alpha,
        "lambda_o": {"a": growth.a, "b": growth.b},
        "fit_window": list(growth.fit_window),
        "fit_residual": growth.fit_residual,
        "checks": [rep.to_dict()],
    }
    rows = profile.rows().tolist()
    return _emit(cfg, payload, {"profile": (["r", "abs_phi", "arg_phi"], rows)}, rep.passed, [rep])


def render_middle(cfg: RunConfig) -> Rendered:
    P = cfg.params
    N = P["N"]
    expected = middle.threshold(N)
    found = middle.detect_threshold(N, xtol=P["xtol"], R=P["R"])
    rows = []
    for p in P["p_list"]:
        fam = middle.MiddleFamily.lowest(N, p)
        meas = middle.measured_exponent(fam, P["R"])
        rows.append([p, meas, middle.exponent(N, p), meas < 0])
    rep = CheckReport.close("middle_threshold", found, expected, 0.02, "L^p harmonic middle forms exist iff p > 2N/(N+1)")
    return _emit(cfg, {"threshold": {"measured": found, "expected": expected}, "checks": [rep.to_dict()]},
                 {"exponents": (["p", "measured_exponent", "exponent_law", "converges"], rows)}, rep.passed, [rep])


def _kernel_reports(names, seed: int, wave_h: float):
    out, tables = [], {}
    if "heat" in names:
        ts = [0.1, 0.3, 1.0, 3.0, 10.0]
        masses = [kernels.heat_mass(t) for t in ts]
        err = max(abs(m - 1) for m in masses)
        out.append(CheckReport.close("heat_mass", 1 + err, 1.0, 1e-6, "stochastic completeness of H^3",
                                     masses={str(t): m for t, m in zip(ts, masses)}))
        tables["heat_mass"] = (["t", "mass"], [[t, m] for t, m in zip(ts, masses)])
    if "resolvent" in names:
        errs = {f"m={m},xi={xi}": kernels.resolvent_mass(m, xi) - xi ** (-2 * m) for m in (0.5, 1.0, 2.0) for xi in (1.0, 2.0, 4.0)}
        out.append(CheckReport.bound("resolvent_mass", max(abs(v) for v in errs.values()), 1e-6,
                                     "resolvent mass equals xi^(-2m)", errors=errs))
    if "gaussian" in names:
        out.append(kernels.gaussian_bound_check())
    if "impo" in names:
        out.append(kernels.impo_check(100_000, seed))
    if "schur" in names:
        out.append(kernels.schur_bound_check(100, seed=seed))
    if "volume" in names:
        rows = []
        for N in (1, 2, 3, 5):
            out.append(kernels.volume_growth(N))
            rows += [[N, R, kernels.log_ball_volume(N, R) / R] for R in np.linspace(5.0, 40.0, 8)]
        tables["volume"] = (["N", "R", "log_vol_over_R"], rows)
    if "wave" in names:
        rep = kernels.wave_cone_check(h=wave_h)
        out.append(rep)
        tables["wave"] = (["h", "outside_fraction"], list(zip(rep.details["h"], rep.details["fractions"])))
    if "taylor" in names:
        out.append(kernels.taylor_remainder_check())
    if "fourier" in names:
        out.append(kernels.fourier_decay_check())
    if "symbol" in names:
        out.append(kernels.symbol_decay_check())
    return out, tables


def render_kernels(cfg: RunConfig) -> Rendered:
    P = cfg.params
    names = KERNEL_CHECKS if P["check"] == "all" else tuple(v.strip() for v in P["check"].split(","))
    bad = set(names) - set(KERNEL_CHECKS)
    if bad:
        raise UsageError(f"unknown kernel check(s): {', '.join(sorted(bad))}")
    if P["wave_h"] <= 0:
        raise UsageError("wave_h must be positive")
    reps, tables = _kernel_reports(names, cfg.seed, P["wave_h"])
    ok = all(r.passed for r in reps)
    return _emit(cfg, {"checks": [r.to_dict() for r in reps]}, tables, ok, reps)


def render_check_all(cfg: RunConfig) -> Rendered:
    from . import acceptance

    only = cfg.params["only"] or sorted(acceptance.CRITERIA)
    bad = [n for n in only if n not in acceptance.CRITERIA]
    if bad:
        raise UsageError(f"unknown criterion number(s): {bad}")
    reps = acceptance.run_all(cfg.seed, only)
    ok = all(r.passed for r in reps)
    return _emit(cfg, {"checks": [r.to_dict() for r in reps]}, {}, ok, reps)


RENDERERS = {
    "regions": render_regions,
    "weyl": render_weyl,
    "ode": render_ode,
    "middle": render_middle,
    "kernels": render_kernels,
    "check-all": render_check_all,
}


def render(cfg: RunConfig) -> dict:
    """``{filename: text}`` for a configuration; deterministic in ``cfg``."""
    return run(cfg).files


def run(cfg: RunConfig) -> Rendered:
    if cfg.command not in RENDERERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    if cfg.fmt not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    params = _coerce(cfg.command, cfg.params)
    cfg = RunConfig(cfg.command, params, cfg.out, cfg.fmt, cfg.seed)
    try:
        return RENDERERS[cfg.command](cfg)
    except UsageError:
        raise
    except ValueError as exc:
        # constructors reject out-of-range parameters with ValueError
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperlp", description="L^p spectra of the Hodge Laplacian on hyperbolic space.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, spec in PARAMS.items():
        sp = sub.add_parser(command)
        sp.add_argument("--out", default=None, help="output directory (default hyperlp_out)")
        sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--config", default=None, help="key=value file; flags override it")
        for name, (_, default, help_) in spec.items():
            sp.add_argument("--" + name.replace("_", "-"), dest=name, default=None, help=f"{help_} (default {default})")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    file_vals = read_config(ns.config) if ns.config else {}
    common = {"out": "hyperlp_out", "fmt": "json", "seed": "0"}
    for key in ("out", "seed"):
        common[key] = file_vals.pop(key, common[key])
    common["fmt"] = file_vals.pop("format", common["fmt"])
    for key in ("out", "fmt", "seed"):
        if getattr(ns, key) is not None:
            common[key] = getattr(ns, key)
    params = dict(file_vals)
    for name in PARAMS[ns.command]:
        val = getattr(ns, name)
        if val is not None:
            params[name] = val
    try:
        seed = int(common["seed"])
    except ValueError as exc:
        raise UsageError(f"bad seed {common['seed']!r}") from exc
    return RunConfig(ns.command, params, str(common["out"]), str(common["fmt"]), seed)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        result = run(cfg)
    except UsageError as exc:
        print(f"hyperlp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except hs.GridCoverageWarning as exc:
        print(f"hyperlp: grid coverage failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in result.files.items():
        (out / name).write_text(text)
    for rep in result.summary:
        print(rep.line())
    print(f"wrote {len(result.files)} file(s) to {out}")
    return EXIT_OK if result.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
