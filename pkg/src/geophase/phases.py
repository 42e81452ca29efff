"""The rotation-angle engine.

The total rotation of the rolling disc splits into a dynamical part,
proportional to the swept center angle, and a geometric part that depends
only on the trace of the tilt vector. The geometric part is computed by
several independent routes:

* line: the time integral of cos(beta) theta' (the reference method),
* baumkuchen: rigorous lower/upper Riemann-style bounds plus a midpoint sum,
* area: left-region area minus 2 pi per enclosed pole,
* curvature: total turning decomposition (tangent angle, geodesic curvature,
  cusp angles).

Routes that work on the pole-clamped curve support the documented limit
handling: evaluate at eps and eps/2, then extrapolate linearly in
(1 - cos eps), which is exact for caps clipped by the clamp circle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, pi, sin

import numpy as np

from .errors import CurveNotClosed, MethodDisagreement, WindingInconsistent
from .motion import MotionPath, topology_report
from .sphere import DEFAULT_EPSILON, cached_regularize
from .regions import (MC_SAMPLES, RegionReport, classify_poles,
                      curvature_integral, region_areas, turning_angle_sum)

TWO_PI = 2.0 * pi

METHOD_NAMES = ("line", "baumkuchen", "area", "curvature",
                "monopole", "berry", "oracle")


@dataclass(frozen=True)
class Tolerances:
    """Reconciliation tolerances per method class."""

    analytic: float = 1e-4
    monte_carlo: float = 1e-2
    oracle: float = 1e-3


@dataclass(frozen=True)
class BaumkuchenBounds:
    N: int
    lower: float
    upper: float
    mid: float


@dataclass(frozen=True)
class PhaseResult:
    delta_d: float
    delta_g_by_method: dict
    delta_total: float
    max_discrepancy: float
    region: RegionReport | None
    n: int
    warnings: tuple = field(default=())


# ---------------------------------------------------------------------------
# dynamical phase and the line-integral geometric phase


def dynamical_phase(path: MotionPath) -> float:
    """a/b times the total swept center angle; 2 pi n a/b on closed paths."""
    th0 = path.theta.value(0.0)
    th1 = path.theta.value(1.0)
    return path.radii.a * (th1 - th0) / path.radii.b


def geometric_phase_line(path: MotionPath, tol: float = 1e-10) -> float:
    """Integral of cos(beta(t)) theta'(t) dt over the raw motion.

    Every supported schedule is piecewise affine, so each piece has the
    antiderivative theta' sin(beta)/beta' and the sum is exact; the tol
    argument is kept for schedules that would need adaptive quadrature.
    """
    del tol
    total = 0.0
    for (t0, t1, _th0, dth, b0, db) in path.affine_pieces:
        if dth == 0.0:
            continue
        if db == 0.0:
            total += cos(b0) * dth * (t1 - t0)
        else:
            b1 = b0 + db * (t1 - t0)
            total += dth * (sin(b1) - sin(b0)) / db
    return total


def geometric_phase_baumkuchen(path: MotionPath, N: int) -> BaumkuchenBounds:
    """Bracketing sums for the line integral on the refined uniform mesh.

    The uniform N-interval mesh is refined by every schedule breakpoint, so
    theta is monotone and beta affine on each interval. The mid value is the
    left-endpoint Riemann sum; lower/upper replace cos(beta) by its extreme
    values on each interval, giving certified bounds for any N.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    mesh = np.unique(np.concatenate([np.linspace(0.0, 1.0, N + 1),
                                     np.asarray(path.knots)]))
    theta = path.theta.values(mesh)
    dtheta = np.diff(theta)
    # beta is continuous, so plain value queries suffice at mesh points
    b_left = path.beta.values(mesh[:-1])
    b_right = path.beta.values(mesh[1:])
    mid = float(np.cos(b_left) @ dtheta)
    cos_hi = np.cos(np.minimum(b_left, b_right))
    cos_lo = np.cos(np.maximum(b_left, b_right))
    pos = dtheta >= 0.0
    upper = float(np.sum(np.where(pos, cos_hi, cos_lo) * dtheta))
    lower = float(np.sum(np.where(pos, cos_lo, cos_hi) * dtheta))
    return BaumkuchenBounds(N=N, lower=lower, upper=upper, mid=mid)


# ---------------------------------------------------------------------------
# clamped-curve routes with the eps -> 0 limit handling


def eps_extrapolate(eps: float, value_full: float, value_half: float) -> float:
    """Linear extrapolation to eps = 0 in the variable u = 1 - cos(eps).

    Cap areas and cap circulation integrals clipped at the clamp circle are
    affine in u, so the two-point extrapolation removes the clamp bias
    exactly for curves hugging a pole and is a no-op when the two values
    agree (no clamping happened).
    """
    u_full = 1.0 - cos(eps)
    u_half = 1.0 - cos(eps / 2.0)
    return value_half + (value_half - value_full) * u_half / (u_full - u_half)


def _closed_or_raise(path: MotionPath):
    report = topology_report(path)
    if not report.closed:
        raise CurveNotClosed("this geometric-phase method needs a closed motion")
    return report


def _curves(path: MotionPath, eps: float, extrapolate: bool):
    if extrapolate:
        return (cached_regularize(path, eps), cached_regularize(path, eps / 2.0))
    return (cached_regularize(path, eps),)


def _combine(eps: float, values, extrapolate: bool) -> float:
    if extrapolate:
        return eps_extrapolate(eps, values[0], values[1])
    return values[0]


def _consistent_classification(curves):
    """classify_poles on each curve; classifications must agree across eps."""
    results = [classify_poles(c) for c in curves]
    if len({(i_p, i_m) for i_p, i_m, _ in results}) != 1:
        raise WindingInconsistent(
            "pole classification changed between eps levels")
    return results


def geometric_phase_area(path: MotionPath, eps: float = DEFAULT_EPSILON,
                         extrapolate: bool = True,
                         area_method: str = "gauss_bonnet",
                         samples: int = MC_SAMPLES, seed=None) -> float:
    """Geometric phase as left-region area minus 2 pi per enclosed pole.

    The three algebraically equivalent forms (A+ and the pole count on the
    left, -A- with the right-region data, and their symmetrized average) are
    evaluated and must agree to rounding.
    """
    _closed_or_raise(path)
    curves = _curves(path, eps, extrapolate)
    classes = _consistent_classification(curves)
    values = []
    for curve, (i_plus, i_minus, _) in zip(curves, classes):
        a_plus, a_minus = region_areas(curve, area_method,
                                       samples=samples, seed=seed)
        form_1 = a_plus - TWO_PI * i_plus
        form_2 = -a_minus + TWO_PI * i_minus
        form_3 = 0.5 * (a_plus - a_minus) - pi * (i_plus - i_minus)
        if max(form_1, form_2, form_3) - min(form_1, form_2, form_3) > 1e-9:
            raise WindingInconsistent("area-route forms disagree beyond rounding")
        values.append(form_1)
    return _combine(eps, values, extrapolate)


def geometric_phase_curvature(path: MotionPath, eps: float = DEFAULT_EPSILON,
                              extrapolate: bool = True) -> float:
    """Geometric phase from the total-turning decomposition.

    The tangent-angle circulation of a simple closed curve is -pi (I+ - I-);
    subtracting the geodesic-curvature integral and the cusp angles leaves
    the geometric phase.
    """
    _closed_or_raise(path)
    curves = _curves(path, eps, extrapolate)
    classes = _consistent_classification(curves)
    values = []
    for curve, (i_plus, i_minus, _) in zip(curves, classes):
        circulation = -pi * (i_plus - i_minus)
        values.append(circulation - curvature_integral(curve)
                      - turning_angle_sum(curve))
    return _combine(eps, values, extrapolate)


def extrapolated_region_report(path: MotionPath, eps: float = DEFAULT_EPSILON,
                               extrapolate: bool = True,
                               area_method: str = "gauss_bonnet",
                               samples: int = MC_SAMPLES,
                               seed=None) -> RegionReport:
    """RegionReport with areas carried to the eps -> 0 limit."""
    _closed_or_raise(path)
    curves = _curves(path, eps, extrapolate)
    classes = _consistent_classification(curves)
    i_plus, i_minus, seed_point = classes[0]
    a_values = [region_areas(c, area_method, samples=samples, seed=seed)[0]
                for c in curves]
    a_plus = _combine(eps, a_values, extrapolate)
    return RegionReport(simple=True, I_plus=i_plus, I_minus=i_minus,
                        A_plus=a_plus, A_minus=4.0 * pi - a_plus,
                        area_method=area_method, seed_point=seed_point)


# ---------------------------------------------------------------------------
# reconciliation


def _method_tolerance(name: str, tol: Tolerances, area_method: str) -> float:
    if name == "oracle":
        return tol.oracle
    if name == "area" and area_method == "monte_carlo":
        return tol.monte_carlo
    return tol.analytic


def total_rotation(path: MotionPath, methods=("line", "area"),
                   tolerances: Tolerances | None = None,
                   eps: float = DEFAULT_EPSILON, extrapolate: bool = True,
                   area_method: str = "gauss_bonnet",
                   baumkuchen_n: int = 1_000_000,
                   oracle_steps: int = 100_000,
                   mc_samples: int = MC_SAMPLES, seed=None) -> PhaseResult:
    """Run the requested geometric-phase methods and reconcile them.

    The line integral is always computed and anchors delta_total. The oracle
    entry in delta_g_by_method is delta_oracle - delta_d, so every entry is
    directly comparable. Errors from individual methods propagate;
    MethodDisagreement fires when any pair differs by more than ten times
    the applicable tolerance.
    """
    tol = tolerances or Tolerances()
    methods = list(dict.fromkeys(methods))
    for name in methods:
        if name not in METHOD_NAMES:
            raise ValueError(f"unknown method {name!r}; "
                             f"choose from {', '.join(METHOD_NAMES)}")
    report = topology_report(path)
    delta_d = dynamical_phase(path)

    values = {"line": geometric_phase_line(path)}
    if "baumkuchen" in methods:
        values["baumkuchen"] = geometric_phase_baumkuchen(path, baumkuchen_n).mid
    if "area" in methods:
        values["area"] = geometric_phase_area(
            path, eps, extrapolate, area_method, samples=mc_samples, seed=seed)
    if "curvature" in methods:
        values["curvature"] = geometric_phase_curvature(path, eps, extrapolate)
    if "monopole" in methods:
        from .gauge import monopole_holonomy
        values["monopole"] = monopole_holonomy(path, eps, extrapolate=extrapolate)
    if "berry" in methods:
        from .gauge import berry_holonomy
        values["berry"] = berry_holonomy(path, eps, extrapolate=extrapolate)
    if "oracle" in methods:
        from .rolling import simulate_rolling
        trace = simulate_rolling(path, path.radii, oracle_steps)
        values["oracle"] = trace.delta_oracle - delta_d

    region = None
    if "area" in methods or "curvature" in methods:
        region = extrapolated_region_report(
            path, eps, extrapolate, area_method, samples=mc_samples, seed=seed)

    warnings = []
    max_disc = 0.0
    names = [m for m in METHOD_NAMES if m in values]
    for i, m_a in enumerate(names):
        for m_b in names[i + 1:]:
            diff = abs(values[m_a] - values[m_b])
            max_disc = max(max_disc, diff)
            allowed = max(_method_tolerance(m_a, tol, area_method),
                          _method_tolerance(m_b, tol, area_method))
            if diff > 10.0 * allowed:
                raise MethodDisagreement(
                    f"{m_a} and {m_b} differ by {diff:.3e} "
                    f"(allowed {allowed:.1e})")
            if diff > allowed:
                warnings.append(f"{m_a} vs {m_b}: discrepancy {diff:.3e} "
                                f"exceeds {allowed:.1e}")

    ordered = {m: values[m] for m in names}
    return PhaseResult(delta_d=delta_d, delta_g_by_method=ordered,
                       delta_total=delta_d + values["line"],
                       max_discrepancy=max_disc, region=region,
                       n=report.n, warnings=tuple(warnings))
