"""One-parameter families g(t) and exact verification of their limits.

A family certifies w in the closure of G v when the lowest-order term in t
of ``v∘g(t)`` is a nonzero multiple of w.  Matrix entries are Laurent
polynomials in t with coefficients in Q or a simple extension Q(z).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .orbit import DimensionMismatch, Form
from .ring import Domain, PolyRing, Polynomial, Scalar, format_scalar, parse_scalar, xvars

PARAM = "t"


class ZeroFamily(ValueError):
    """The family composes v to the zero polynomial."""


LaurentEntry = Dict[int, Scalar]


@dataclass
class DegenerationFamily:
    domain: Domain
    matrix: List[List[LaurentEntry]]
    source_label: str = ""
    target_label: str = ""
    note: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise DimensionMismatch("family matrix must be square")
        self.matrix = [[{int(k): self.domain.coerce(v) for k, v in entry.items() if v} for entry in row]
                       for row in self.matrix]

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_rows(cls, rows: List[List[Dict[int, object]]], domain: Optional[Domain] = None, **kw):
        return cls(domain or Domain.rational(), rows, **kw)

    @classmethod
    def from_json(cls, data: dict) -> "DegenerationFamily":
        mp = data.get("domain")
        domain = Domain.extension(mp) if mp else Domain.rational()
        matrix = [[{int(k): parse_scalar(str(v), domain) for k, v in entry.items()} for entry in row]
                  for row in data["matrix"]]
        known = {"domain", "matrix", "source_label", "target_label", "note"}
        return cls(domain, matrix, data.get("source_label", ""), data.get("target_label", ""),
                   data.get("note", ""), {k: v for k, v in data.items() if k not in known})

    @classmethod
    def load(cls, path: str) -> "DegenerationFamily":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        out = {
            "domain": self.domain.minpoly_text(),
            "matrix": [[{str(k): format_scalar(v) for k, v in sorted(entry.items())} for entry in row]
                       for row in self.matrix],
            "source_label": self.source_label,
            "target_label": self.target_label,
            "note": self.note,
        }
        out.update(self.meta)
        return out

    def min_exponent(self) -> int:
        exps = [k for row in self.matrix for entry in row for k in entry]
        return min(exps) if exps else 0


def expand_family(fam: DegenerationFamily, v: Form) -> Tuple[int, Dict[int, Polynomial]]:
    """``v∘g(t)`` as a map t-exponent -> polynomial in x over the family's domain.

    Returns ``(lowest exponent, expansion)``; the expansion omits zero parts.
    """
    if fam.n != v.n:
        raise DimensionMismatch(f"family is {fam.n}x{fam.n} but the form has {v.n} variables")
    shift = fam.min_exponent()
    ring = PolyRing(xvars(v.n) + [PARAM], fam.domain)
    t = ring.var(PARAM)
    xs = [ring.var(x) for x in xvars(v.n)]
    # clear negative exponents: g(t) = t^shift * h(t) with h polynomial
    images = []
    for row in fam.matrix:
        total = ring.zero()
        for entry, xp in zip(row, xs):
            for k, c in entry.items():
                total = total + xp * (t ** (k - shift)) * c
        images.append(total)
    p = Polynomial(ring, {e + (0,): fam.domain.coerce(c) for e, c in v.poly.coeffs.items()})
    composed = p.subs(dict(zip(xvars(v.n), images)))
    xring = PolyRing(xvars(v.n), fam.domain)
    parts: Dict[int, Dict[tuple, Scalar]] = {}
    for e, c in composed.coeffs.items():
        parts.setdefault(e[-1] + shift * v.d, {})[e[:-1]] = c
    if not parts:
        raise ZeroFamily("v composed with the family is identically zero")
    expansion = {k: Polynomial(xring, terms) for k, terms in sorted(parts.items())}
    return min(expansion), expansion


def limit_term(fam: DegenerationFamily, v: Form) -> Tuple[int, Polynomial]:
    """Lowest-order exponent and coefficient of ``v∘g(t)``."""
    k, expansion = expand_family(fam, v)
    return k, expansion[k]


def proportionality(p: Polynomial, w: Form) -> Optional[Scalar]:
    """The scalar lam with p = lam * w, or None when p is not a multiple of w."""
    if set(p.coeffs) != set(w.poly.coeffs):
        return None
    lam = None
    for e, c in w.poly.coeffs.items():
        ratio = p.coeffs[e] / c
        if lam is None:
            lam = ratio
        elif ratio != lam:
            return None
    return lam


def verify_degeneration(fam: DegenerationFamily, v: Form, w: Form) -> bool:
    """True iff the lowest t-order part of ``v∘g(t)`` is a nonzero multiple of w."""
    if (v.n, v.d) != (w.n, w.d):
        raise DimensionMismatch("source and target differ in shape")
    _, lead = limit_term(fam, v)
    return proportionality(lead, w) is not None


__all__ = [
    "DegenerationFamily",
    "ZeroFamily",
    "expand_family",
    "limit_term",
    "proportionality",
    "verify_degeneration",
]
