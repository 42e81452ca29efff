"""One phase, three guises: line integral, monopole potential, Berry phase.

The geometric part of the disc's rotation can be written as the
circulation of a magnetic-monopole vector potential around the contact
curve, or as the Berry phase of a spin-1/2 dragged along the same curve.
Neither potential patch is defined on the whole sphere; the two patches
disagree by a pure gauge whose circulation is quantized in units of
4 pi times the winding number.

Run:  python3 demos/holonomy_gallery.py
"""

import math

import numpy as np

from geophase import (MINUS_PATCH, PLUS_PATCH, berry_holonomy, curl_check,
                      example_gallery, geometric_phase_line,
                      monopole_holonomy, monopole_potential,
                      patch_circulation)

PI = math.pi

print("holonomy of the six stock motions (units of pi):")
print(f"{'motion':<7} {'line':>8} {'monopole':>9} {'berry':>8} "
      f"{'(C+ - C-)/4pi':>14}")
for name in ["i", "ii", "iii", "iv", "v", "vi"]:
    beta0 = PI / 3 if name == "iv" else None
    path = example_gallery(name, beta0=beta0)
    line = geometric_phase_line(path)
    mono = monopole_holonomy(path)
    berry = berry_holonomy(path)
    c_plus = patch_circulation(path, PLUS_PATCH)
    c_minus = patch_circulation(path, MINUS_PATCH)
    quantum = (c_plus - c_minus) / (4.0 * PI)
    print(f"{name:<7} {line / PI:8.4f} {mono / PI:9.4f} {berry / PI:8.4f} "
          f"{quantum:14.6f}")

print()
print("the last column counts the azimuthal winding; it comes out an")
print("integer because the patch difference is the gradient of the")
print("azimuth, twice over.")

print()
print("both patches have the same curl, the field of a unit monopole:")
rng = np.random.default_rng(7)
x = rng.normal(size=3)
x *= 1.3 / np.linalg.norm(x)
exact = x / np.linalg.norm(x) ** 3
for patch, label in [(PLUS_PATCH, "plus"), (MINUS_PATCH, "minus")]:
    err_h = np.linalg.norm(curl_check(patch, x, 1e-3) - exact)
    err_half = np.linalg.norm(curl_check(patch, x, 5e-4) - exact)
    print(f"  {label:>5} patch: |curl - x/r^3| = {err_h:.2e} at h=1e-3,"
          f" {err_half:.2e} at h=5e-4 (ratio {err_h / err_half:.2f})")
print("  the ratio near 4 is the signature of second-order differencing.")

print()
print("where each patch lives (potential magnitude at z = -/+ 0.95):")
for z in (-0.95, 0.95):
    p = np.array([math.sqrt(1 - z * z), 0.0, z])
    a_plus = np.linalg.norm(monopole_potential(PLUS_PATCH, p))
    a_minus = np.linalg.norm(monopole_potential(MINUS_PATCH, p))
    print(f"  z = {z:+.2f}: |A+| = {a_plus:7.3f}   |A-| = {a_minus:7.3f}")
print("each blows up near its excluded pole; holonomy routes switch to")
print("whichever patch is regular there.")
