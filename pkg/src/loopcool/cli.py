"""Command-line interface: single-point reports, sweeps, and spectrum scans."""

import concurrent.futures
import datetime
import json
import math
import os
import re
import sys
import warnings

import click
import numpy as np

from . import __version__, limits, modes, spectra, steadystate
from .config import parse_spec, spec_to_dict
from .errors import ConfigError, DomainError, LoopcoolError, Unstable
from .model import CouplingApprox, build_drift, to_linearized
from .presets import get_preset

EXIT_CONFIG = 2
EXIT_UNSTABLE = 3


def _fmt(x):
    """Shortest round-trip float formatting; NaN spelled 'nan'."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def _provenance(approx):
    return {
        "tool_version": __version__,
        "optomechanical": approx.optomechanical,
        "mechanical": approx.mechanical,
        "lambda_normalizer": "resonant analytic maximum (reused at all probe frequencies)",
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _emit_json(payload):
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _load_spec(config, preset):
    if (config is None) == (preset is None):
        raise ConfigError("provide exactly one of --config or --preset")
    if config is not None:
        spec = parse_spec(config)
    else:
        spec = get_preset(preset)
    return to_linearized(spec)


def _approx(om_rwa, mech_full):
    return CouplingApprox(optomechanical="rwa" if om_rwa else "full",
                          mechanical="full" if mech_full else "rwa")


def _spec_options(fn):
    fn = click.option("--config", type=click.Path(), default=None,
                      help="INI config file (see README for the grammar).")(fn)
    fn = click.option("--preset", default=None,
                      help="Named parameter preset (fig2, fig3, fig4, ...).")(fn)
    fn = click.option("--om-rwa/--om-full", "om_rwa", default=False,
                      help="Drop/keep cavity-mechanics counter-rotating terms.")(fn)
    fn = click.option("--mech-rwa/--mech-full", "mech_rwa", default=True,
                      help="Drop/keep phonon-exchange counter-rotating terms.")(fn)
    return fn


def _fail_config(exc):
    click.echo("config error: %s" % exc, err=True)
    sys.exit(EXIT_CONFIG)


@click.group()
@click.version_option(__version__)
def main():
    """Steady-state cooling and nonreciprocal phonon transport calculations."""


@main.command()
@_spec_options
def cool(config, preset, om_rwa, mech_rwa):
    """Steady-state phonon occupations for a single parameter point."""
    try:
        spec = _load_spec(config, preset)
    except ConfigError as exc:
        _fail_config(exc)
    approx = _approx(om_rwa, not mech_rwa)
    drift = build_drift(spec, approx)
    report = steadystate.cool_or_flag(drift)
    payload = {
        "spec": spec_to_dict(spec),
        "n_f": [None if math.isnan(x) else x for x in report.n_f],
        "n_cav": None if math.isnan(report.n_cav) else report.n_cav,
        "stable": report.stable,
        "spectral_abscissa": report.spectral_abscissa,
        "residual": None if math.isnan(report.residual) else report.residual,
        "provenance": _provenance(approx),
    }
    if spec.n_mech == 2 and report.stable:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            eff = limits.effective_model(spec)
            n1s, n2s = limits.cooling_limit_simplified(eff, spec)
        payload["limits"] = {"simplified": [n1s, n2s],
                             "warnings": [str(w.message) for w in caught]}
    _emit_json(payload)
    if not report.stable:
        sys.exit(EXIT_UNSTABLE)


@main.command()
@_spec_options
def stability(config, preset, om_rwa, mech_rwa):
    """Stability verdict (spectral abscissa of the drift matrix)."""
    try:
        spec = _load_spec(config, preset)
    except ConfigError as exc:
        _fail_config(exc)
    approx = _approx(om_rwa, not mech_rwa)
    drift = build_drift(spec, approx)
    stable, abscissa = steadystate.stability_check(drift)
    _emit_json({"stable": stable, "spectral_abscissa": abscissa,
                "provenance": _provenance(approx)})


# ---------------------------------------------------------------------------
# sweeps

_PATH_RE = re.compile(r"^(drive\.)?([a-z_]+)(?:\[(\d+)\])?$")


def set_param(spec, path, value):
    """Return a copy of spec with the parameter at `path` replaced.

    Paths: kappa, eta[0], theta[0], omega_m[1], gamma[0], nbar[0],
    drive.delta, drive.g_lin[0].
    """
    m = _PATH_RE.match(path)
    if not m:
        raise ConfigError("bad parameter path %r" % path)
    on_drive, name, idx = m.group(1), m.group(2), m.group(3)
    target = spec.drive if on_drive else spec
    if not hasattr(target, name):
        raise ConfigError("unknown parameter %r" % path)
    cur = getattr(target, name)
    if isinstance(cur, tuple):
        if idx is None:
            raise ConfigError("%s is a list; use %s[i]" % (path, path))
        i = int(idx)
        if not 0 <= i < len(cur):
            raise ConfigError("index out of range in %r" % path)
        new = cur[:i] + (value,) + cur[i + 1:]
    else:
        if idx is not None:
            raise ConfigError("%s is scalar; drop the index" % path)
        new = value
    if on_drive:
        drive = type(spec.drive)(**{**spec.drive.__dict__, name: new})
        return spec.with_(drive=drive)
    return spec.with_(**{name: new})


def parse_axis(raw):
    """Parse 'path=start:stop:points' into (path, grid array)."""
    m = re.match(r"^([^=]+)=([^:]+):([^:]+):(\d+)$", raw)
    if not m:
        raise ConfigError("bad axis %r (want path=start:stop:points)" % raw)
    path = m.group(1).strip()
    try:
        start, stop = float(m.group(2)), float(m.group(3))
        points = int(m.group(4))
    except ValueError:
        raise ConfigError("bad axis numbers in %r" % raw)
    if points < 2:
        raise ConfigError("axis needs at least 2 points")
    return path, np.linspace(start, stop, points)


def _sweep_eval(task):
    """One grid point; module-level so process pools can pickle it."""
    spec, approx, overrides = task
    for path, value in overrides:
        spec = set_param(spec, path, value)
    drift = build_drift(spec, approx)
    report = steadystate.cool_or_flag(drift)
    return report


def _write_metadata(fh, spec, approx):
    meta = {"spec": spec_to_dict(spec), "provenance": _provenance(approx)}
    for line in json.dumps(meta, indent=2, sort_keys=True).splitlines():
        fh.write("# %s\n" % line)


@main.command()
@_spec_options
@click.option("--axis", "axes", multiple=True, required=True,
              help="Sweep axis as path=start:stop:points (repeat for a 2-D grid).")
@click.option("--out", type=click.Path(), required=True, help="Output CSV path.")
@click.option("--workers", type=int, default=1, show_default=True,
              help="Parallel worker processes.")
def sweep(config, preset, om_rwa, mech_rwa, axes, out, workers):
    """1-D or 2-D parameter sweep of the steady-state occupations (CSV)."""
    try:
        spec = _load_spec(config, preset)
        if len(axes) > 2:
            raise ConfigError("at most two --axis options")
        parsed = [parse_axis(a) for a in axes]
        for path, grid in parsed:  # validate paths before launching workers
            set_param(spec, path, float(grid[0]))
    except ConfigError as exc:
        _fail_config(exc)
    approx = _approx(om_rwa, not mech_rwa)

    if len(parsed) == 1:
        points = [((v,), [(parsed[0][0], float(v))]) for v in parsed[0][1]]
    else:
        points = [((v1, v2), [(parsed[0][0], float(v1)), (parsed[1][0], float(v2))])
                  for v1 in parsed[0][1] for v2 in parsed[1][1]]
    tasks = [(spec, approx, overrides) for _, overrides in points]

    try:
        if workers > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(_sweep_eval, tasks, chunksize=8))
        else:
            reports = [_sweep_eval(t) for t in tasks]

        axis_names = [p for p, _ in parsed]
        n = spec.n_mech
        cols = axis_names + ["n_f_%d" % (j + 1) for j in range(n)] + \
            ["n_cav", "stable", "spectral_abscissa"]
        with open(out, "w") as fh:
            _write_metadata(fh, spec, approx)
            fh.write(",".join(cols) + "\n")
            for (vals, _), rep in zip(points, reports):
                row = [_fmt(v) for v in vals]
                if rep.stable:
                    row += [_fmt(x) for x in rep.n_f] + [_fmt(rep.n_cav)]
                else:
                    row += [""] * (n + 1)  # unstable: empty observable cells
                row += ["true" if rep.stable else "false", _fmt(rep.spectral_abscissa)]
                fh.write(",".join(row) + "\n")
    except LoopcoolError as exc:
        if os.path.exists(out):
            os.remove(out)  # never leave partial output behind
        _fail_config(exc)
    click.echo("wrote %d rows to %s" % (len(points), out))


@main.command()
@_spec_options
@click.option("--omega-min", type=float, default=0.9, show_default=True)
@click.option("--omega-max", type=float, default=1.1, show_default=True)
@click.option("--points", type=int, default=801, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="Output CSV path.")
def spectrum(config, preset, om_rwa, mech_rwa, omega_min, omega_max, points, out):
    """Probe-frequency scan of transmittances and relative scattering rates."""
    try:
        spec = _load_spec(config, preset)
        if points < 2:
            raise ConfigError("need at least 2 frequency points")
        if spec.n_mech != 2:
            raise ConfigError("spectrum scan is defined for n_mech = 2")
    except ConfigError as exc:
        _fail_config(exc)
    approx = _approx(om_rwa, not mech_rwa)
    drift = build_drift(spec, approx)
    coop = spectra.Cooperativities.from_spec(spec)
    lam_res = spectra.lambda_analytic(coop, spec.theta[0])
    labels = ["a", "b1", "b2"]
    tcols = ["T_%s%s" % (v, w) for v in labels for w in labels]
    with open(out, "w") as fh:
        _write_metadata(fh, spec, approx)
        fh.write(",".join(["omega"] + tcols +
                          ["Lambda_b2b1", "Lambda_b1b2", "Lambda_analytic_resonant"]) + "\n")
        for w in np.linspace(omega_min, omega_max, points):
            pt = spectra.scan_point(drift, float(w), coop)
            row = [_fmt(w)] + [_fmt(x) for x in pt.t.reshape(-1)]
            row += [_fmt(pt.lambda_rel[2, 1]), _fmt(pt.lambda_rel[1, 2]), _fmt(lam_res)]
            fh.write(",".join(row) + "\n")
    click.echo("wrote %d rows to %s" % (points, out))


@main.command("modes")
@_spec_options
def modes_cmd(config, preset, om_rwa, mech_rwa):
    """Mode-structure report: bright/dark, hybrid transform, normal modes."""
    try:
        spec = _load_spec(config, preset)
    except ConfigError as exc:
        _fail_config(exc)
    approx = _approx(om_rwa, not mech_rwa)
    payload = {"spec": spec_to_dict(spec), "provenance": _provenance(approx)}
    if spec.n_mech == 2:
        if spec.eta[0] == 0.0:
            bd = modes.bright_dark(spec)
            payload["bright_dark"] = {
                "omega_plus": bd.omega_plus, "omega_minus": bd.omega_minus,
                "zeta": bd.zeta, "g_plus": bd.g_plus,
                "weights": list(bd.weights),
                "dark_mode_exists": bd.dark_mode_exists,
            }
        else:
            hy = modes.hybrid_transform(spec)
            payload["hybrid"] = {
                "omega_tilde_plus": hy.omega_tilde_plus,
                "omega_tilde_minus": hy.omega_tilde_minus,
                "f": hy.f, "h": hy.h,
                "g_tilde_plus": [hy.g_tilde_plus.real, hy.g_tilde_plus.imag],
                "g_tilde_minus": [hy.g_tilde_minus.real, hy.g_tilde_minus.imag],
                "darkness": hy.darkness,
            }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            nm = modes.normal_modes(spec)
            payload["normal_modes"] = {
                "omega_k": [float(x) for x in nm.omega_k],
                "coupling_abs": [abs(c) for c in nm.coupling_k],
                "dark_count": int(nm.dark_flags.sum()),
                "predicted_uncooled": nm.predicted_uncooled,
                "closed_form": nm.closed_form,
            }
        except DomainError:
            pass
    _emit_json(payload)


@main.command("lambda")
@click.option("--eta", type=float, required=True,
              help="Ratio of the lower-level coupling to the transition amplitude.")
@click.option("--theta", type=float, required=True, help="Loop phase (radians).")
def lambda_cmd(eta, theta):
    """Eigensystem of the loop-coupled Lambda three-level configuration."""
    sys_ = modes.LambdaSystem(omega1=1.0, omega2=1.0, omega_b=eta, theta=theta)
    eig = modes.lambda_eigensystem(sys_)
    _emit_json({
        "eta": eta, "theta": theta,
        "lambdas": [float(x) for x in eig.lambdas],
        "p_e": [float(x) for x in eig.p_e],
        "dark_index": eig.dark_index,
        "analytic": eig.analytic,
    })


@main.command("limits")
@_spec_options
def limits_cmd(config, preset, om_rwa, mech_rwa):
    """Adiabatic-elimination effective model and analytic cooling limits."""
    try:
        spec = _load_spec(config, preset)
        if spec.n_mech != 2:
            raise ConfigError("cooling limits are defined for n_mech = 2")
    except ConfigError as exc:
        _fail_config(exc)
    approx = _approx(om_rwa, not mech_rwa)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        eff = limits.effective_model(spec)
        simple = limits.cooling_limit_simplified(eff, spec)
        full = limits.cooling_limit_full(eff, spec)
    _emit_json({
        "spec": spec_to_dict(spec),
        "effective": {
            "xi1": [eff.xi1.real, eff.xi1.imag],
            "xi2": [eff.xi2.real, eff.xi2.imag],
            "gamma_eff": list(eff.gamma_eff),
            "omega_eff": list(eff.omega_eff),
            "chi1": eff.chi1, "chi2": eff.chi2,
            "chi_plus": eff.chi_plus, "chi_minus": eff.chi_minus,
            "n_opt": eff.n_opt,
        },
        "simplified": list(simple),
        "full": list(full),
        "warnings": sorted({str(w.message) for w in caught}),
        "provenance": _provenance(approx),
    })


if __name__ == "__main__":
    main()
