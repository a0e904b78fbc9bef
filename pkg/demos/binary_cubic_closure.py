"""A binary cubic whose orbit closure contains a non-generic cubic, and not conversely.

x1^3 + x1*x2^2 has three distinct linear factors over C, so its orbit is dense
in the space of binary cubics.  x1^2*x2 has a repeated factor and lies on the
boundary.  Run: python3 demos/binary_cubic_closure.py
"""

from orbitclosure import catalog
from orbitclosure.degeneration import limit_term
from orbitclosure.orbit import Form, build_graph_ideal, closure_ideal, in_orbit_closure

generic = Form.parse("x1^3 + x1*x2^2", 2)
double_root = Form.parse("x1^2*x2", 2)

print("graph ideal of", generic)
for g in build_graph_ideal(generic):
    print("   ", g)

J = closure_ideal(generic)
print("closure ideal after eliminating the matrix entries:", J.ideal.text_lines() or "(0)")
print("x1^2*x2 in closure of the generic cubic:", in_orbit_closure(generic, double_root).outcome.value)

J = closure_ideal(double_root)
print("closure ideal of x1^2*x2 (the discriminant hypersurface):")
for line in J.ideal.text_lines():
    print("   ", line)
print("generic cubic in closure of x1^2*x2:", in_orbit_closure(double_root, generic).outcome.value)

fx = next(f for f in catalog.fixtures() if f.name == "binary-cubic")
order, lead = limit_term(fx.family, generic)
print(f"explicit family over Q(i): lowest t-order {order}, limit {lead}")
