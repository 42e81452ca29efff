"""Region analysis for closed curves of the tilt vector on the sphere.

A simple closed curve splits the sphere into two faces. We call the face
lying to the left of the traversal (direction g x T) the left region. This
module decides simplicity, locates the two poles (0,0,+-1) relative to the
left region, and measures the region areas three ways: Gauss-Bonnet on the
boundary data, Monte-Carlo point classification, and the closed cap formula
for latitude circles.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import pi

import numpy as np
from scipy.spatial import cKDTree

from .errors import (CurveNotClosed, CurveNotSimple, PoleOnCurve,
                     WindingInconsistent)
from .sphere import CUSP_ANGLE_TOL, RegularizedCurve

TWO_PI = 2.0 * pi
SIMPLE_TOL = 1e-9
MC_SAMPLES = 200_000
DEFAULT_SEED = 0x5EED

NORTH = np.array([0.0, 0.0, 1.0])
SOUTH = np.array([0.0, 0.0, -1.0])

# fixed perturbation directions for degenerate crossing retries
_RETRY_DIRS = np.array([
    [1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0],
    [1, 1, 0], [-1, 1, 0], [1, 0, 1], [0, 1, 1],
], dtype=float)
_RETRY_DIRS /= np.linalg.norm(_RETRY_DIRS, axis=1, keepdims=True)


def default_seed() -> int:
    """Monte-Carlo seed: GEOPHASE_SEED env var if set, else a fixed constant."""
    raw = os.environ.get("GEOPHASE_SEED")
    if raw is None:
        return DEFAULT_SEED
    return int(raw, 0)


@dataclass(frozen=True)
class RegionReport:
    simple: bool
    I_plus: int
    I_minus: int
    A_plus: float
    A_minus: float
    area_method: str
    seed_point: np.ndarray


# ---------------------------------------------------------------------------
# segment geometry helpers


def _curve_segments(curve: RegularizedCurve):
    """Chord segments (P, Q) per smooth arc, with sequential position ids."""
    starts, ends = [], []
    for i0, i1 in curve.arcs:
        if i1 - i0 >= 2:
            starts.append(curve.g[i0:i1 - 1])
            ends.append(curve.g[i0 + 1:i1])
    if not starts:
        return np.empty((0, 3)), np.empty((0, 3))
    return np.vstack(starts), np.vstack(ends)


def _segment_pair_distance(p1, q1, p2, q2):
    """Minimum distance between 3D segment batches [p1,q1] and [p2,q2]."""
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = np.einsum("ij,ij->i", d1, d1)
    e = np.einsum("ij,ij->i", d2, d2)
    b = np.einsum("ij,ij->i", d1, d2)
    c = np.einsum("ij,ij->i", d1, r)
    f = np.einsum("ij,ij->i", d2, r)
    denom = a * e - b * b
    s = np.where(denom > 1e-30, np.clip((b * f - c * e) / np.where(denom > 1e-30, denom, 1.0), 0.0, 1.0), 0.0)
    t = (b * s + f) / np.where(e > 1e-30, e, 1.0)
    t = np.clip(t, 0.0, 1.0)
    s = np.clip((b * t - c) / np.where(a > 1e-30, a, 1.0), 0.0, 1.0)
    diff = (p1 + s[:, None] * d1) - (p2 + t[:, None] * d2)
    return np.linalg.norm(diff, axis=1)


def is_simple(curve: RegularizedCurve, tol: float = SIMPLE_TOL) -> bool:
    """True when the sampled curve never touches itself within tol.

    Non-adjacent chord pairs closer than tol count as a self-intersection;
    chords sharing an endpoint (consecutive along the curve, including the
    closure pair of a closed curve) are exempt.
    """
    key = ("simple", tol)
    if key in curve._cache:
        return curve._cache[key]
    P, Q = _curve_segments(curve)
    m = P.shape[0]
    if m < 3:
        curve._cache[key] = True
        return True
    mids = 0.5 * (P + Q)
    radius = float(np.max(np.linalg.norm(Q - P, axis=1))) + tol
    tree = cKDTree(mids)
    pairs = tree.query_pairs(r=radius, output_type="ndarray")
    simple = True
    if pairs.size:
        i, j = pairs[:, 0], pairs[:, 1]
        dpos = np.abs(i - j)
        adjacent = dpos <= 1
        if curve.closed:
            adjacent |= dpos == m - 1
        i, j = i[~adjacent], j[~adjacent]
        if i.size:
            d = _segment_pair_distance(P[i], Q[i], P[j], Q[j])
            simple = bool(np.all(d >= tol))
    curve._cache[key] = simple
    return simple


# ---------------------------------------------------------------------------
# pole classification by crossing parity


def _left_seed(curve: RegularizedCurve):
    """A point certified to lie in the left region, just off a mid-arc sample."""
    nu = curve.left_normals()
    g = curve.g
    boundary = curve._cusp_sample_indices()
    n = len(curve)
    candidates = [int(k) for k in np.linspace(0, n - 1, min(n, 64)).astype(int)
                  if int(k) not in boundary]
    # prefer samples far from the poles: more room for the sideways step
    candidates.sort(key=lambda k: -abs(np.sin(curve.beta_eps[k])))
    for delta in (1e-3, 3e-4, 1e-4):
        for k in candidates:
            seed = g[k] + delta * nu[k]
            seed /= np.linalg.norm(seed)
            dist = np.linalg.norm(g - seed, axis=1)
            near = int(np.argmin(dist))
            if dist[near] >= 0.6 * delta and abs(curve.s[near] - curve.s[k]) <= 4.0 * delta:
                return seed
    raise RuntimeError("could not certify a left-side seed point")


def _arc_crossings(curve: RegularizedCurve, a, b):
    """Transversal crossings of the short great arc a->b with the curve.

    Returns the crossing count, or None when the configuration is too close
    to degenerate (grazing or near-endpoint hits) and a retry is needed.
    """
    n = np.cross(a, b)
    nn = np.linalg.norm(n)
    if nn < 1e-9:
        return None
    n = n / nn
    s = curve.g @ n
    if np.min(np.abs(s)) < 1e-10:
        return None
    count = 0
    for i0, i1 in curve.arcs:
        si = s[i0:i1]
        flips = np.nonzero(si[:-1] * si[1:] < 0.0)[0]
        if flips.size == 0:
            continue
        p = curve.g[i0 + flips]
        q = curve.g[i0 + flips + 1]
        w = (si[flips] / (si[flips] - si[flips + 1]))[:, None]
        c = p + (q - p) * w
        c /= np.linalg.norm(c, axis=1, keepdims=True)
        u = np.cross(a, c) @ n
        v = np.cross(c, b) @ n
        if np.any(np.minimum(np.abs(u), np.abs(v)) < 1e-12):
            return None
        count += int(np.count_nonzero((u > 0.0) & (v > 0.0)))
    return count


def _pole_in_left_region(curve: RegularizedCurve, seed, pole) -> bool:
    targets = [pole] + [pole + 1e-3 * d for d in _RETRY_DIRS]
    for raw in targets:
        target = raw / np.linalg.norm(raw)
        crossings = _arc_crossings(curve, seed, target)
        if crossings is not None:
            return crossings % 2 == 0
    raise RuntimeError("pole classification stayed degenerate after retries")


def classify_poles(curve: RegularizedCurve):
    """(I_plus, I_minus, seed_point): pole counts in the left/right regions.

    I_plus counts how many of the two poles lie in the left region S+,
    I_minus in the right region; they always sum to 2. The azimuthal winding
    number of theta must be consistent with the classification (|winding| = 1
    exactly when the poles are separated), else WindingInconsistent.
    """
    key = "pole_classification"
    if key in curve._cache:
        return curve._cache[key]
    if not curve.closed:
        raise CurveNotClosed("pole classification needs a closed curve")
    if not is_simple(curve):
        raise CurveNotSimple("pole classification needs a simple curve")
    for pole in (NORTH, SOUTH):
        clearance = float(np.min(np.linalg.norm(curve.g - pole, axis=1)))
        if clearance < SIMPLE_TOL:
            raise PoleOnCurve(f"curve passes within {clearance:.2e} of a pole")
    seed = _left_seed(curve)
    north_in = _pole_in_left_region(curve, seed, NORTH)
    south_in = _pole_in_left_region(curve, seed, SOUTH)
    winding = int(round((curve.theta[-1] - curve.theta[0]) / TWO_PI))
    separated = north_in != south_in
    if separated != (abs(winding) == 1):
        raise WindingInconsistent(
            f"pole split {north_in}/{south_in} vs azimuthal winding {winding}")
    result = (int(north_in) + int(south_in),
              2 - int(north_in) - int(south_in), seed)
    curve._cache[key] = result
    curve._cache["pole_sides"] = (north_in, south_in)
    return result


def _south_in_left(curve: RegularizedCurve) -> bool:
    classify_poles(curve)
    return curve._cache["pole_sides"][1]


# ---------------------------------------------------------------------------
# areas


def curvature_integral(curve: RegularizedCurve) -> float:
    """Integral of kappa_g ds over all smooth arcs (trapezoid in s)."""
    total = 0.0
    for i0, i1 in curve.arcs:
        if i1 - i0 >= 2:
            total += float(np.trapezoid(curve.kappa_g[i0:i1], curve.s[i0:i1]))
    return total


def turning_angle_sum(curve: RegularizedCurve) -> float:
    """Sum of signed tangent jumps at all junctions above the cusp threshold."""
    return float(sum(j.alpha for j in curve.junctions
                     if abs(j.alpha) > CUSP_ANGLE_TOL))


def _monte_carlo_south_face_area(curve: RegularizedCurve, samples: int,
                                 seed) -> float:
    """Area of the face containing the south pole, by meridian-ray parity.

    Classifies uniform random sphere points: a point is in the south face
    iff the meridian arc from it down to the south pole crosses the curve an
    even number of times. Crossings are counted in closed form on the
    clamped affine pieces, so there is no sampling error beyond the
    Monte-Carlo variance itself.
    """
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    z = rng.uniform(-1.0, 1.0, samples)
    lam = rng.uniform(0.0, TWO_PI, samples)
    beta_p = np.arccos(-z)
    parity = np.zeros(samples, dtype=bool)
    for piece in curve.pieces:
        if piece.dth == 0.0 or not piece.moving:
            continue
        th_a = piece.th0
        th_b = piece.th0 + piece.dth * (piece.t1 - piece.t0)
        lo, hi = min(th_a, th_b), max(th_a, th_b)
        for k in range(int(np.floor(lo / TWO_PI)) - 1,
                       int(np.ceil(hi / TWO_PI)) + 1):
            lam_k = lam + TWO_PI * k
            inside = (lam_k > lo) & (lam_k < hi)
            if not np.any(inside):
                continue
            t_star = piece.t0 + (lam_k - piece.th0) / piece.dth
            b_star = piece.b0 + piece.db * (t_star - piece.t0)
            parity ^= inside & (b_star < beta_p)
    frac_even = float(np.count_nonzero(~parity)) / samples
    return 4.0 * pi * frac_even


def _cap_formula_area(curve: RegularizedCurve) -> float:
    if len(curve.arcs) != 1 or not curve.closed:
        raise ValueError("cap_formula needs a single closed latitude circle")
    beta = curve.beta_eps
    if float(np.ptp(beta)) > 1e-12:
        raise ValueError("cap_formula needs constant tilt along the curve")
    winding = int(round((curve.theta[-1] - curve.theta[0]) / TWO_PI))
    if abs(winding) != 1:
        raise ValueError("cap_formula needs a single full latitude loop")
    b0 = float(beta[0])
    if winding > 0:   # left side holds the north cap
        return TWO_PI * (1.0 + np.cos(b0))
    return TWO_PI * (1.0 - np.cos(b0))


def region_areas(curve: RegularizedCurve, method: str = "gauss_bonnet",
                 samples: int = MC_SAMPLES, seed=None):
    """(A_plus, A_minus) in steradians for the left and right regions."""
    if not curve.closed:
        raise CurveNotClosed("region areas need a closed curve")
    if not is_simple(curve):
        raise CurveNotSimple("region areas need a simple curve")
    if method == "gauss_bonnet":
        # boundary of the left region, Euler characteristic 1, K = 1
        a_plus = TWO_PI - curvature_integral(curve) - turning_angle_sum(curve)
    elif method == "monte_carlo":
        south_face = _monte_carlo_south_face_area(curve, samples, seed)
        a_plus = south_face if _south_in_left(curve) else 4.0 * pi - south_face
    elif method == "cap_formula":
        a_plus = _cap_formula_area(curve)
    else:
        raise ValueError(f"unknown area method {method!r}")
    return float(a_plus), float(4.0 * pi - a_plus)


def region_report(curve: RegularizedCurve, area_method: str = "gauss_bonnet",
                  samples: int = MC_SAMPLES, seed=None) -> RegionReport:
    """Full region summary of a closed simple curve at its own epsilon."""
    i_plus, i_minus, seed_point = classify_poles(curve)
    a_plus, a_minus = region_areas(curve, area_method, samples=samples, seed=seed)
    return RegionReport(simple=True, I_plus=i_plus, I_minus=i_minus,
                        A_plus=a_plus, A_minus=a_minus,
                        area_method=area_method, seed_point=seed_point)
