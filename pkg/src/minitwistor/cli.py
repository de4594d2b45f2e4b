"""Command line front end.

Every subcommand reads an optional JSON config, lets flags override it,
prints a JSON summary on standard output and optionally writes a JSON or CSV
artifact.  Exit codes: 0 success, 1 invalid configuration, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import jsonschema
import numpy as np

from .errors import ConfigError, NumericalError
from .hyperelliptic_curve import G2, BranchConfig

COMMANDS = ("periods", "seifert", "line", "geodesic", "metric", "zoll", "foliation", "ale", "export")

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "branch_points": {"type": "array", "items": {"type": "number"}, "minItems": 4},
        "genus": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 1},
        "theta": {"type": "number"},
        "u": {"type": "number"},
        "v": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": math.pi},
        "trials": {"type": "integer", "minimum": 1},
        "grid": {"type": "integer", "minimum": 2},
        "steps": {"type": "integer", "minimum": 8},
        "seed": {"type": "integer", "minimum": 0},
        "anchor": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "xi_angle": {"type": "number"},
        "samples": {"type": "integer", "minimum": 1},
        "ale": {
            "type": "object",
            "additionalProperties": False,
            "required": ["l", "a"],
            "properties": {
                "l": {"type": "integer", "minimum": 1},
                "a": {"type": "array", "items": {"type": "number"}, "minItems": 2},
                "beta": {"type": "number"},
            },
        },
        "out": {"type": "string"},
    },
}

DEFAULTS = {
    "k": 1,
    "theta": 0.0,
    "u": 1.0,
    "v": 1.2,
    "trials": 20,
    "grid": 64,
    "steps": 512,
    "seed": 0,
    "anchor": [1.5, 0.0],
    "xi_angle": 0.3,
    "samples": 1000,
}


# --- output -------------------------------------------------------------------


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj) -> str:
    """Deterministic JSON: insertion ordered keys, floats at 17 significant digits."""
    out = io.StringIO()

    def emit(x, indent):
        pad = "  " * indent
        if isinstance(x, dict):
            if not x:
                out.write("{}")
                return
            out.write("{\n")
            for n, (k, v) in enumerate(x.items()):
                out.write(pad + "  " + json.dumps(k) + ": ")
                emit(v, indent + 1)
                out.write(",\n" if n < len(x) - 1 else "\n")
            out.write(pad + "}")
        elif isinstance(x, list):
            if not x or all(not isinstance(v, (dict, list)) for v in x):
                out.write("[" + ", ".join(_scalar(v) for v in x) + "]")
                return
            out.write("[\n")
            for n, v in enumerate(x):
                out.write(pad + "  ")
                emit(v, indent + 1)
                out.write(",\n" if n < len(x) - 1 else "\n")
            out.write(pad + "]")
        else:
            out.write(_scalar(x))

    emit(_plain(obj), 0)
    out.write("\n")
    return out.getvalue()


def _scalar(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return _fmt_float(v)
    return json.dumps(v)


def atomic_write(path: str, text: str) -> None:
    """Write through a temporary file in the target directory and rename."""
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_float(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


# --- configuration ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minitwistor", description="Real minitwistor lines and Einstein-Weyl spaces of hyperelliptic curves.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--k", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="artifact path (JSON, or CSV for export)")
    return p


def load_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    for key in ("k", "theta", "trials", "grid", "seed", "out"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    merged = dict(DEFAULTS)
    merged.update(cfg)
    if "branch_points" in merged:
        curve = BranchConfig.from_points(merged["branch_points"])
        if "genus" in merged and merged["genus"] != curve.genus:
            raise ConfigError("genus does not match the number of branch points")
    else:
        curve = G2
    merged["curve"] = curve
    n = 2 ** (curve.genus - 1)
    if not 1 <= merged["k"] <= n:
        raise ConfigError(f"k must lie in 1..{n}")
    return merged


# --- commands -----------------------------------------------------------------


def _solver(conf):
    from .seifert import SeifertSolver

    return SeifertSolver(conf["curve"])


def _kd(conf):
    from .seifert import BoundaryData

    return BoundaryData.from_k(conf["curve"].genus, conf["k"])


def cmd_periods(conf):
    from .jacobian import half_period_table, period_lattice

    cfg = conf["curve"]
    g = cfg.genus
    lat = period_lattice(cfg)
    table = half_period_table(cfg, lat)
    return {
        "command": "periods",
        "branch_points": list(cfg.branch_points),
        "genus": g,
        "real_block": lat.real_block,
        "imag_block": lat.imag_block,
        "outer_period": lat.outer_period,
        "reality": {"circle": list(lat.split_residual[:g]), "gap": list(lat.split_residual[g:])},
        "condition_numbers": list(lat.condition_numbers()),
        "half_periods": {f"{kind}{i + 1}": {"re": v.re_array, "im": v.im_array} for (kind, i), v in table.items()},
    }


def cmd_seifert(conf):
    from .seifert import enumerate_seifert

    surfaces = enumerate_seifert(_solver(conf), conf["grid"])
    rows = []
    for s in surfaces:
        ok = s.success
        rows.append(
            {
                "k": s.k.k,
                "choices": list(s.k.choices),
                "origin": s.origin.re_array,
                "origin_prime": s.origin_prime.re_array,
                "success_rate": s.success_rate,
                "min_gap_ratio": float(np.min(s.gap[ok])) if ok.any() else None,
                "max_residual": float(np.max(s.residual[ok])) if ok.any() else None,
            }
        )
    return {"command": "seifert", "genus": conf["curve"].genus, "grid": conf["grid"], "count": len(surfaces), "surfaces": rows}


def _line_report(line):
    return {
        "hyperplane": list(line.hyperplane),
        "kind": line.kind,
        "k": line.k,
        "axis": line.axis,
        "chart": list(line.chart) if line.chart else None,
        "theta": line.theta,
        "arc": list(line.arc),
        "nodes": [[p.z.real, p.w.real, p.y.real] for p in line.nodes],
        "circle": line.real_circle,
    }


def cmd_line(conf):
    from .einstein_weyl import EWPoint, ew_chart
    from .minitwistor_surface import build_line

    solver = _solver(conf)
    p = EWPoint(_kd(conf), conf["u"], conf["v"], conf["theta"])
    line = build_line(conf["curve"], ew_chart(solver, p), solver, samples=32)
    return {"command": "line", **_line_report(line)}


def cmd_geodesic(conf):
    from .einstein_weyl import geodesic_spacelike

    geo = geodesic_spacelike(_solver(conf), _kd(conf), tuple(conf["anchor"]), conf["steps"])
    return {
        "command": "geodesic",
        "k": conf["k"],
        "anchor": list(geo.anchor),
        "closure_gap": geo.closure_gap,
        "simple": geo.simple,
        "crossings": geo.crossings,
        "transversality": geo.transversality,
        "min_separation": geo.min_separation,
        "u": geo.u,
        "v": geo.v,
    }


def cmd_metric(conf):
    from .einstein_weyl import EWPoint, conformal_metric

    cm = conformal_metric(_solver(conf), EWPoint(_kd(conf), conf["u"], conf["v"], conf["theta"]))
    return {
        "command": "metric",
        "k": conf["k"],
        "point": [conf["u"], conf["v"], conf["theta"]],
        "matrix": cm.matrix,
        "signature": list(cm.signature),
        "lorentzian": cm.is_lorentzian,
    }


def cmd_zoll(conf):
    from .einstein_weyl import zoll_suite

    rep = zoll_suite(_solver(conf), _kd(conf), conf["trials"], conf["seed"], conf["steps"])
    for row in rep["geodesics"]:
        row.pop("seconds")
    return {"command": "zoll", **rep}


def cmd_foliation(conf):
    from .einstein_weyl import foliation_check

    solver, kd = _solver(conf), _kd(conf)
    laps = []
    for lap in (0, 1):
        r = foliation_check(solver, kd, conf["xi_angle"], lap, grid=min(conf["grid"], 400))
        laps.append(
            {
                "lap": lap,
                "crossings": r.crossings,
                "min_separation": r.min_separation,
                "coverage": r.coverage,
                "multiple": r.multiple,
                "end_diameters": list(r.end_diameters),
                "passed": r.passed,
            }
        )
    return {"command": "foliation", "k": conf["k"], "xi_angle": conf["xi_angle"], "laps": laps}


def cmd_ale(conf):
    from .ale_bridge import (
        AleConfig,
        intertwining_error,
        map_even,
        map_odd,
        odd_target,
        random_points,
        transport_residual,
    )

    params = conf.get("ale") or {"l": 3, "a": list(conf["curve"].branch_points)}
    ale = AleConfig(params["l"], tuple(params["a"]))
    rng = np.random.default_rng(conf["seed"])
    pts = random_points(ale, conf["samples"], rng)
    if ale.l % 2:
        target = odd_target(ale)
        mapping = lambda p: map_odd(ale, p)  # noqa: E731
        extra = {}
    else:
        a = ale.points
        beta = params.get("beta", 0.5 * (a[0] + a[1]))
        em = map_even(ale, beta)
        target, mapping = em.target, em
        extra = {"beta": beta, "c": em.c}
    resid = transport_residual(target, [mapping(p) for p in pts])
    inter = intertwining_error(ale, mapping, pts)
    tol = 1e-12 if ale.l % 2 else 1e-10
    return {
        "command": "ale",
        "l": ale.l,
        "a": list(ale.a),
        **extra,
        "target_branch_points": list(target.branch_points),
        "samples": conf["samples"],
        "residual": resid,
        "intertwining": inter,
        "passed": bool(resid < tol and inter < 1e-10),
    }


def cmd_export(conf):
    from .seifert import sample_surface

    s = sample_surface(_solver(conf), _kd(conf), conf["grid"])
    g = conf["curve"].genus
    header = ["branch", "s", "t"] + [f"phi{i + 1}" for i in range(g)] + [f"c{j}" for j in range(g + 3)] + ["residual", "gap", "success"]
    rows = [
        [int(s.branch[n]), s.s[n], s.t[n], *s.phis[n], *s.coeffs[n], s.residual[n], s.gap[n], int(s.success[n])]
        for n in range(len(s.s))
    ]
    return {"command": "export", "k": conf["k"], "rows": len(rows), "_csv": csv_text(header, rows)}


HANDLERS = {
    "periods": cmd_periods,
    "seifert": cmd_seifert,
    "line": cmd_line,
    "geodesic": cmd_geodesic,
    "metric": cmd_metric,
    "zoll": cmd_zoll,
    "foliation": cmd_foliation,
    "ale": cmd_ale,
    "export": cmd_export,
}


def run(argv=None, stdout=None) -> int:
    """Parse, dispatch and write outputs; returns the exit status."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        conf = load_config(args)
        result = HANDLERS[args.command](conf)
    except ConfigError as exc:
        stdout.write(dumps({"status": "invalid_config", "error": str(exc)}))
        return 1
    except NumericalError as exc:
        stdout.write(dumps({"status": "numerical_failure", "error": type(exc).__name__, "message": str(exc)}))
        return 2
    table = result.pop("_csv", None)
    result = {"status": "ok", **result}
    text = dumps(result)
    if conf.get("out"):
        atomic_write(conf["out"], table if table is not None else text)
    stdout.write(text)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
