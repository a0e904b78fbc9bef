"""Certify x1^2*x2 + x1*x3*x4 + x3^3 (7B) in the closure of x1*x2^2 + x3*x4^2 (6C).

The full closure elimination in 16 matrix entries is out of reach.  The stored
plan fixes most target coefficients first and restricts rows 2 and 4 of the
matrix to columns 1 and 3, which leaves 12 unknowns.  A zero result after the
final substitution proves containment.
Run: python3 demos/rank_six_certificate.py   (about a minute)
"""

import json
import time

from orbitclosure import catalog
from orbitclosure.orbit import sub_elim_sub

rec = catalog.plan_for("7B", "6C")
v, w = rec.forms()
print("source", v, "| target", w)
print("substituted before elimination:", json.dumps({k: str(x) for k, x in rec.plan.pre.items() if x}))
print("free matrix entries:", " ".join(rec.plan.ansatz.free_names()))
start = time.monotonic()
verdict = sub_elim_sub(v, w, rec.plan)
print(verdict.outcome.value, f"in {time.monotonic() - start:.1f}s")
