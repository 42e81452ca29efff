"""Command line surface.

Subcommands:

* ``compute``: run the requested phase methods on a motion and emit a
  report (text, json, or csv).
* ``trace``: emit the sampled regularized curve as CSV (plot-ready).
* ``foucault``: pendulum drift for a waypoint track file or a stationary
  latitude.
* ``examples``: list the stock motions.

Exit codes: 0 success, 2 validation error, 3 method disagreement,
4 I/O error. Output is deterministic: the Monte-Carlo seed is pinned by
the --seed flag, the GEOPHASE_SEED environment variable, or a fixed
default, in that order of precedence.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from .errors import GeophaseError, MethodDisagreement
from .motion import (GALLERY_NAMES, MotionPath, Radii, build_path,
                     example_gallery, topology_report)
from .phases import (METHOD_NAMES, Tolerances, dynamical_phase,
                     extrapolated_region_report, geometric_phase_area,
                     geometric_phase_baumkuchen, geometric_phase_curvature,
                     geometric_phase_line, _method_tolerance)
from .regions import MC_SAMPLES, default_seed
from .sphere import DEFAULT_EPSILON, regularize

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DISAGREEMENT = 3
EXIT_IO = 4

_EXAMPLE_BLURBS = {
    "i": "full lap with the rim laid flat against the fixed disc (tilt 0)",
    "ii": "full lap standing upright (tilt pi/2, equator trace)",
    "iii": "full lap flipped flat the other way (tilt pi)",
    "iv": "full lap at constant tilt beta0 (pass --beta0)",
    "v": "quarter lap laid flat, rise upright, roll back; net winding 0",
    "vi": "three-quarter lap backward laid flat, rise, return; net winding -1",
}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _add_motion_flags(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", choices=GALLERY_NAMES,
                     help="use a stock motion from the gallery")
    src.add_argument("--motion", metavar="FILE",
                     help="load a motion description (JSON) from FILE")
    p.add_argument("--beta0", type=float, default=None,
                   help="constant tilt for example iv (radians)")
    p.add_argument("--radii", default="1,1", metavar="A,B",
                   help="fixed and rolling disc radii (default 1,1)")


def _parse_radii(text: str) -> Radii:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--radii expects two comma-separated numbers, got {text!r}")
    return Radii(float(parts[0]), float(parts[1]))


def _load_motion(args) -> tuple[MotionPath, str]:
    radii = _parse_radii(args.radii)
    if args.example is not None:
        path = example_gallery(args.example, beta0=args.beta0, radii=radii)
        label = f"example {args.example}"
        if args.beta0 is not None:
            label += f" (beta0={_fmt(args.beta0)})"
        return path, label
    try:
        with open(args.motion, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read {args.motion}: {exc}") from exc
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{args.motion}: invalid JSON: {exc}") from exc
    desc.setdefault("radii", {"a": radii.a, "b": radii.b})
    return build_path(desc), f"file {args.motion}"


class _IOFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# compute


def _method_values(path, args, seed):
    """Run each requested method, catching per-method failures."""
    from .gauge import berry_holonomy, monopole_holonomy
    from .rolling import simulate_rolling

    delta_d = dynamical_phase(path)
    runners = {
        "line": lambda: geometric_phase_line(path, tol=args.tol),
        "baumkuchen": lambda: geometric_phase_baumkuchen(path, args.samples).mid,
        "area": lambda: geometric_phase_area(
            path, eps=args.epsilon, area_method=args.area_method,
            samples=args.mc_samples, seed=seed),
        "curvature": lambda: geometric_phase_curvature(path, eps=args.epsilon),
        "monopole": lambda: monopole_holonomy(path, eps=args.epsilon),
        "berry": lambda: berry_holonomy(path, eps=args.epsilon),
        "oracle": lambda: simulate_rolling(path, steps=args.steps).delta_oracle - delta_d,
    }
    records = {}
    for name in args.methods:
        try:
            records[name] = {"value": float(runners[name]())}
        except (GeophaseError, ValueError, ArithmeticError) as exc:
            records[name] = {"error": type(exc).__name__, "message": str(exc)}
    return delta_d, records


def _discrepancy_table(records, tolerances, area_method):
    ok_values = {m: r["value"] for m, r in records.items() if "value" in r}
    names = [m for m in METHOD_NAMES if m in ok_values]
    table = []
    worst = None
    for i, m1 in enumerate(names):
        for m2 in names[i + 1:]:
            diff = abs(ok_values[m1] - ok_values[m2])
            tol = max(_method_tolerance(m1, tolerances, area_method),
                      _method_tolerance(m2, tolerances, area_method))
            table.append({"first": m1, "second": m2,
                          "difference": diff, "tolerance": tol,
                          "ok": diff <= tol})
            if worst is None or diff > worst:
                worst = diff
    return table, worst


def run_compute(args) -> int:
    try:
        path, label = _load_motion(args)
        args.methods = tuple(s.strip() for s in args.methods.split(",") if s.strip())
        unknown = [m for m in args.methods if m not in METHOD_NAMES]
        if unknown or not args.methods:
            raise ValueError(f"unknown methods {unknown}; choose from {METHOD_NAMES}")
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GeophaseError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    seed = args.seed if args.seed is not None else default_seed()
    tolerances = Tolerances()
    report = topology_report(path)
    delta_d, records = _method_values(path, args, seed)

    region = None
    if any(m in records and "value" in records[m] for m in ("area", "curvature")):
        try:
            rr = extrapolated_region_report(
                path, eps=args.epsilon, area_method=args.area_method,
                samples=args.mc_samples, seed=seed)
            region = {"simple": rr.simple, "I_plus": rr.I_plus,
                      "I_minus": rr.I_minus, "A_plus": rr.A_plus,
                      "A_minus": rr.A_minus, "area_method": rr.area_method}
        except GeophaseError:
            region = None

    table, worst = _discrepancy_table(records, tolerances, args.area_method)
    warnings = [f"{row['first']}/{row['second']} differ by "
                f"{row['difference']:.3e} (tolerance {row['tolerance']:.1e})"
                for row in table if not row["ok"]]

    if "line" in records and "value" in records["line"]:
        reference = records["line"]["value"]
    else:
        reference = next((r["value"] for r in records.values() if "value" in r), None)
    delta_total = None if reference is None else delta_d + reference

    doc = {
        "input": {
            "source": label,
            "radii": {"a": _parse_radii(args.radii).a,
                      "b": _parse_radii(args.radii).b},
            "epsilon": args.epsilon,
            "beta0": args.beta0,
            "methods": list(args.methods),
            "seed": int(seed),
            "tolerances": asdict(tolerances),
            "segments": len(path.theta.segments),
        },
        "n": report.n,
        "closed": report.closed,
        "delta_d": delta_d,
        "delta_g": records,
        "delta_total": delta_total,
        "region": region,
        "discrepancies": table,
        "max_discrepancy": worst,
        "warnings": warnings,
    }
    _emit_report(doc, args.format)

    blown = [row for row in table if row["difference"] > 10.0 * row["tolerance"]]
    if blown:
        row = max(blown, key=lambda r: r["difference"])
        print(f"error: MethodDisagreement: {row['first']} vs {row['second']} "
              f"differ by {row['difference']:.3e}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _emit_report(doc, fmt: str):
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
        return
    if fmt == "csv":
        lines = ["quantity,method,value,error"]
        lines.append(f"n,,{doc['n']},")
        lines.append(f"delta_d,,{_fmt(doc['delta_d'])},")
        for name in doc["input"]["methods"]:
            rec = doc["delta_g"][name]
            if "value" in rec:
                lines.append(f"delta_g,{name},{_fmt(rec['value'])},")
            else:
                lines.append(f"delta_g,{name},,{rec['error']}")
        total = "" if doc["delta_total"] is None else _fmt(doc["delta_total"])
        lines.append(f"delta_total,,{total},")
        if doc["region"] is not None:
            for key in ("I_plus", "I_minus", "A_plus", "A_minus"):
                val = doc["region"][key]
                val = _fmt(val) if isinstance(val, float) else str(val)
                lines.append(f"{key},,{val},")
        print("\n".join(lines))
        return

    inp = doc["input"]
    print(f"motion: {inp['source']}   radii: a={_fmt(inp['radii']['a'])} "
          f"b={_fmt(inp['radii']['b'])}   epsilon={_fmt(inp['epsilon'])}")
    print(f"windings n: {doc['n']}   closed: {'yes' if doc['closed'] else 'no'}")
    print(f"delta_d     {_fmt(doc['delta_d'])}")
    width = max(len(m) for m in inp["methods"])
    for name in inp["methods"]:
        rec = doc["delta_g"][name]
        if "value" in rec:
            print(f"delta_g     {name:<{width}}  {_fmt(rec['value'])}")
        else:
            print(f"delta_g     {name:<{width}}  failed: {rec['error']}: {rec['message']}")
    if doc["delta_total"] is not None:
        print(f"delta_total {_fmt(doc['delta_total'])}")
    if doc["region"] is not None:
        r = doc["region"]
        print(f"region: I+={r['I_plus']} I-={r['I_minus']} "
              f"A+={_fmt(r['A_plus'])} A-={_fmt(r['A_minus'])} "
              f"({r['area_method']}, simple={'yes' if r['simple'] else 'no'})")
    if doc["max_discrepancy"] is not None:
        print(f"max pairwise discrepancy: {doc['max_discrepancy']:.3e}")
    for w in doc["warnings"]:
        print(f"warning: {w}")


# ---------------------------------------------------------------------------
# trace


def run_trace(args) -> int:
    try:
        path, _ = _load_motion(args)
        curve = regularize(path, eps=args.epsilon)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GeophaseError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    m = len(curve)
    if args.samples is None or args.samples >= m:
        idx = np.arange(m)
    else:
        idx = np.round(np.linspace(0, m - 1, args.samples)).astype(int)
    print("t,s,gx,gy,gz,phi,kappa_g")
    for k in idx:
        g = curve.g[k]
        print(",".join(_fmt(v) for v in
                       (curve.t[k], curve.s[k], g[0], g[1], g[2],
                        curve.phi[k], curve.kappa_g[k])))
    return EXIT_OK


# ---------------------------------------------------------------------------
# foucault


def run_foucault(args) -> int:
    from .foucault import RouteTrack, ingest_track, route_foucault

    if (args.track is None) == (args.lat is None):
        print("error: give exactly one of --track FILE or --lat DEG",
              file=sys.stderr)
        return EXIT_VALIDATION
    try:
        if args.track is not None:
            try:
                with open(args.track, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error: cannot read {args.track}: {exc}", file=sys.stderr)
                return EXIT_IO
            track = ingest_track(text)
            label = f"track {args.track}"
        else:
            phi = float(np.radians(args.lat))
            track = RouteTrack(t_days=np.array([0.0, args.days]),
                               lon=np.zeros(2), lat=np.full(2, phi))
            label = f"stationary at latitude {_fmt(args.lat)} deg for {_fmt(args.days)} days"
        result = route_foucault(track)
    except (GeophaseError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    if args.format == "json":
        doc = {"input": label,
               "delta_fou": result.delta_fou,
               "delta_fou_deg": float(np.degrees(result.delta_fou)),
               "legs": [float(x) for x in result.accumulation]}
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif args.format == "csv":
        print("leg,drift")
        for i, x in enumerate(result.accumulation):
            print(f"{i},{_fmt(x)}")
        print(f"total,{_fmt(result.delta_fou)}")
    else:
        print(f"route: {label}")
        print(f"swing-plane drift: {_fmt(result.delta_fou)} rad "
              f"({_fmt(float(np.degrees(result.delta_fou)))} deg)")
    return EXIT_OK


def run_examples(_args) -> int:
    for name in GALLERY_NAMES:
        print(f"{name:<4} {_EXAMPLE_BLURBS[name]}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geophase",
        description="rotation-angle decomposition for a disc rolling on a disc")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="run phase methods and emit a report")
    _add_motion_flags(c)
    c.add_argument("--methods", default="line,area",
                   help="comma-separated subset of " + ",".join(METHOD_NAMES))
    c.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="pole clamp parameter (default pi/16)")
    c.add_argument("--tol", type=float, default=1e-10,
                   help="line-integral tolerance")
    c.add_argument("--steps", type=int, default=100_000,
                   help="oracle integration steps")
    c.add_argument("--samples", type=int, default=1_000_000,
                   help="mesh size for the bounds method")
    c.add_argument("--mc-samples", type=int, default=MC_SAMPLES,
                   help="Monte-Carlo area sample count")
    c.add_argument("--area-method", choices=("gauss_bonnet", "monte_carlo"),
                   default="gauss_bonnet")
    c.add_argument("--seed", type=int, default=None,
                   help="Monte-Carlo seed (default: GEOPHASE_SEED or fixed)")
    c.add_argument("--format", choices=("text", "json", "csv"), default="text")
    c.set_defaults(func=run_compute)

    t = sub.add_parser("trace", help="emit the regularized curve as CSV")
    _add_motion_flags(t)
    t.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    t.add_argument("--samples", type=int, default=None,
                   help="number of rows (default: every sample)")
    t.set_defaults(func=run_trace)

    f = sub.add_parser("foucault", help="pendulum drift along a route")
    f.add_argument("--track", metavar="FILE", default=None,
                   help="waypoint CSV (t_days,lon_deg,lat_deg)")
    f.add_argument("--lat", type=float, default=None,
                   help="stationary latitude in degrees")
    f.add_argument("--days", type=float, default=1.0,
                   help="duration for --lat (sidereal days, default 1)")
    f.add_argument("--format", choices=("text", "json", "csv"), default="text")
    f.set_defaults(func=run_foucault)

    e = sub.add_parser("examples", help="list the stock motions")
    e.set_defaults(func=run_examples)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MethodDisagreement as exc:
        print(f"error: MethodDisagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
