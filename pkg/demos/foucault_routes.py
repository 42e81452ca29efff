"""Foucault precession as a route property.

The daily drift of a pendulum's swing plane is the same geometric phase
the rolling-disc problem computes, read off the track the local vertical
traces on the sphere of directions. A pendulum that sits still at
latitude phi still rides the Earth's rotation once around, so its plane
drifts by 2 pi sin(phi) per sidereal day. A pendulum carried along a
route picks up the route's own contribution on top.

Run:  python3 demos/foucault_routes.py
"""

import math

import numpy as np

from geophase import RouteTrack, route_foucault

DEG = math.pi / 180.0

print("stationary pendulum, drift per sidereal day:")
for city, lat_deg in [("Paris", 48.85), ("Rome", 41.9),
                      ("Quito", 0.0), ("Sydney", -33.87),
                      ("South Pole", -90.0)]:
    track = RouteTrack(t_days=np.array([0.0, 1.0]),
                       lon=np.array([0.0, 0.0]),
                       lat=np.array([lat_deg * DEG] * 2))
    drift = route_foucault(track).delta_fou
    law = 2.0 * math.pi * math.sin(lat_deg * DEG)
    print(f"  {city:<11} {drift / DEG:+8.2f} deg/day"
          f"   (2 pi sin lat = {law / DEG:+8.2f})")

print()
print("a slow eastward circumnavigation at 45 N over 40 days:")
t = np.linspace(0.0, 40.0, 81)
track = RouteTrack(t_days=t,
                   lon=np.linspace(0.0, 2.0 * math.pi, 81),
                   lat=np.full(81, 45.0 * DEG))
result = route_foucault(track)
stationary = 40.0 * 2.0 * math.pi * math.sin(45.0 * DEG)
print(f"  total drift       {result.delta_fou / DEG:+10.2f} deg")
print(f"  stationary share  {stationary / DEG:+10.2f} deg")
print(f"  route's own share {(result.delta_fou - stationary) / DEG:+10.2f} deg")
print("  circling the globe eastward once costs exactly one extra")
print("  stationary day's drift, however long the voyage takes")

print()
print("per-leg accumulation on a three-leg voyage (degrees):")
voyage = RouteTrack(t_days=np.array([0.0, 3.0, 7.0, 10.0]),
                    lon=np.array([0.0, 60.0, 150.0, 360.0]) * DEG,
                    lat=np.array([20.0, 55.0, 35.0, 20.0]) * DEG)
legs = route_foucault(voyage).accumulation
for i, leg in enumerate(legs):
    print(f"  leg {i + 1}: {leg / DEG:+9.2f}")
print(f"  total: {sum(legs) / DEG:+9.2f}")
