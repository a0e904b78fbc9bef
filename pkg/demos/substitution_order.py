"""Why substituting before eliminating only ever certifies containment.

For I = <y + x*z>, eliminating z gives the zero ideal, so any specialization
is (0).  Setting x = 0 first leaves <y>, and then y = 1 gives the unit ideal.
Run: python3 demos/substitution_order.py
"""

from orbitclosure.groebner import Ideal, eliminate, is_trivial
from orbitclosure.orbit import elim_then_sub, sub_elim_sub_ideal
from orbitclosure.ring import PolyRing

ring = PolyRing(["z", "x", "y"])
ideal = Ideal(ring, [ring.parse("y + x*z")])
print("I ∩ Q[x, y] =", eliminate(ideal, ["z"]).text_lines() or "(0)")
K = elim_then_sub(ideal, ["z"], {"x": 0, "y": 1})
M = sub_elim_sub_ideal(ideal, {"x": 0}, ["z"], {"y": 1})
print("eliminate, then x=0, y=1:", K.text_lines() or "(0)")
print("x=0, eliminate, then y=1:", "(1)" if is_trivial(M) else M.text_lines())
