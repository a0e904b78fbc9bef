"""Orbit invariants: singular-locus data, orbit dimension, and the dimension pretest."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .groebner import DEFAULT_BUDGET, ComputeBudget, Ideal, hilbert_values, krull_dimension
from .orbit import Form, GroupAnsatz, Outcome, Verdict, _compose_in, graph_ring
from .ring import coefficient_system, gradient


def singular_locus(f: Form) -> Ideal:
    """Jacobian ideal of f.  For d >= 2 it contains f by Euler's identity."""
    return Ideal(f.poly.ring, gradient(f.poly))


@dataclass(frozen=True)
class SingularInvariants:
    """Affine dimension and Hilbert values of the Jacobian ideal.

    Linear substitutions preserve both, so differing bundles separate orbits.
    """

    dim: int
    hilbert: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"dim": self.dim, "hilbert": list(self.hilbert)}


def singular_invariants(f: Form, hilbert_cutoff: int = 4,
                        budget: ComputeBudget = DEFAULT_BUDGET) -> SingularInvariants:
    J = singular_locus(f)
    return SingularInvariants(krull_dimension(J, budget), tuple(hilbert_values(J, hilbert_cutoff, budget)))


def stabilizer_ideal(f: Form) -> Ideal:
    """Equations ``f∘g = f`` in the entries of a generic matrix g."""
    ansatz = GroupAnsatz.full(f.n)
    ring = graph_ring(f.n, f.d, ansatz, with_coefficients=False)
    diff = f.poly.to_ring(ring) - _compose_in(f, ring, ansatz.matrix(ring))
    return Ideal(ring.parameter_ring(), [c for _, c in coefficient_system(diff)])


def stabilizer_orbit_dimension(f: Form, budget: ComputeBudget = DEFAULT_BUDGET) -> int:
    """n^2 minus the dimension of the stabilizer variety."""
    return f.n * f.n - krull_dimension(stabilizer_ideal(f), budget)


def tangent_orbit_dimension(f: Form) -> int:
    """Rank of the Lie-algebra action at f, i.e. the span of ``x_j * df/dx_i``.

    The orbit is smooth, so this equals its dimension.  Pure linear algebra,
    no Groebner bases: a fast independent check on the stabilizer route.
    """
    ring = f.poly.ring
    grads = gradient(f.poly)
    rows: List[Dict[tuple, Fraction]] = []
    for df in grads:
        for x in ring.variables:
            rows.append(dict((df * ring.var(x)).coeffs))
    return _rank(rows)


def _rank(rows: List[Dict[tuple, Fraction]]) -> int:
    """Rank of sparse rational row vectors by Gaussian elimination."""
    pivots: Dict[tuple, Dict[tuple, Fraction]] = {}
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            lead = max(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = 1 / row[lead]
                pivots[lead] = {k: v * inv for k, v in row.items()}
                break
            c = row[lead]
            for k, v in piv.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def dimension_pretest(dim_v: int, dim_w: int, same_orbit: bool = False) -> Optional[Verdict]:
    """NotInClosure for "w in closure(G v)?" whenever dim_v <= dim_w and the orbits differ.

    The boundary of an orbit closure consists of strictly smaller orbits.
    """
    if same_orbit or dim_v > dim_w:
        return None
    return Verdict(Outcome.NOT_IN_CLOSURE, "dimension_pretest",
                   detail=f"orbit dimension {dim_v} <= {dim_w}")


__all__ = [
    "SingularInvariants",
    "dimension_pretest",
    "singular_invariants",
    "singular_locus",
    "stabilizer_ideal",
    "stabilizer_orbit_dimension",
    "tangent_orbit_dimension",
]
