"""Exact orbit membership, and the difference between the det-1 slice and projective mode.

Run: python3 demos/orbit_membership_modes.py
"""

import time

from orbitclosure.orbit import Form, in_orbit

v = Form.parse("x1*x3*x4 + x3^3", 4)
w = Form.parse("x1^3 + x2^3 + x3^3", 4)
start = time.monotonic()
print("x1^3 + x2^3 + x3^3 from x1*x3*x4 + x3^3:", in_orbit(v, w).outcome.value,
      f"({time.monotonic() - start:.1f}s)")

u = Form.parse("x1^3 + x2^3", 2)
twice = u.scaled(2)
print("2*(x1^3 + x2^3) with det g = 1:", in_orbit(u, twice, "strict").outcome.value)
print("2*(x1^3 + x2^3) up to a scalar:", in_orbit(u, twice, "projective").outcome.value)

s = Form.parse("x1^2*x2", 2)
print("2*x1^2*x2 with det g = 1:", in_orbit(s, s.scaled(2), "strict").outcome.value,
      "(diag(2, 1/2) does it)")
