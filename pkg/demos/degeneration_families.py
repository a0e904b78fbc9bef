"""Walk through every stored one-parameter family and show its limit.

Run: python3 demos/degeneration_families.py
"""

from orbitclosure import catalog
from orbitclosure.degeneration import limit_term, proportionality
from orbitclosure.ring import format_scalar

for fx in catalog.fixtures():
    order, lead = limit_term(fx.family, fx.source)
    lam = proportionality(lead, fx.target)
    field = fx.family.domain.minpoly_text() or "Q"
    print(f"{fx.name:18} over {field:28} t^{order}: {lead}   (= {format_scalar(lam)} * target)")
