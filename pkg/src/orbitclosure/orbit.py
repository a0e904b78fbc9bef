"""Orbit and orbit-closure containment for forms under linear substitution.

``v∘g`` substitutes ``x_i -> sum_j g_ij x_j``.  The graph ideal relates the
coefficient variables ``c_m`` (one per degree-d monomial m) to the entries of
``g``; eliminating ``g`` gives the ideal of the orbit closure.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .groebner import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    ComputeBudget,
    Ideal,
    eliminate,
    is_trivial,
    is_zero,
    read_basis,
    write_basis,
)
from .ring import (
    PolyRing,
    Polynomial,
    TermOrder,
    coefficient_system,
    determinant,
    generic_matrix,
    monomials_of_degree,
    xvars,
)


class DimensionMismatch(ValueError):
    pass


class PlanMismatch(ValueError):
    pass


# ---------------------------------------------------------------- forms


class Form:
    """Nonzero homogeneous polynomial of degree d in the variables x1..xn over Q."""

    __slots__ = ("poly", "n", "d", "label")

    def __init__(self, poly: Polynomial, label: Optional[str] = None):
        if not poly.ring.domain.is_rational:
            raise ValueError("forms have rational coefficients")
        if poly.is_zero():
            raise ValueError("a form must be nonzero")
        if not poly.is_homogeneous():
            raise ValueError(f"{poly} is not homogeneous")
        if list(poly.ring.variables) != xvars(poly.ring.nvars):
            raise ValueError("forms live in the ring Q[x1..xn]")
        self.poly = poly
        self.n = poly.ring.nvars
        self.d = poly.total_degree()
        self.label = label

    @classmethod
    def parse(cls, text: str, n: int, label: Optional[str] = None) -> "Form":
        return cls(form_ring(n).parse(text), label)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        tag = f"{self.label}: " if self.label else ""
        return f"Form({tag}{self.poly})"

    def __eq__(self, other):
        return isinstance(other, Form) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def scaled(self, c) -> "Form":
        return Form(self.poly * c, self.label)

    def coefficients(self) -> Dict[str, Fraction]:
        """Coefficient of every degree-d monomial, keyed by coefficient-variable name."""
        return {name: self.poly.coefficient(m) for name, m in coefficient_names(self.n, self.d)}

    def compose(self, matrix: Sequence[Sequence[object]]) -> "Polynomial":
        """``self∘g`` for a matrix of scalars or polynomials of the form ring."""
        ring = self.poly.ring
        rows = _linear_forms(ring, matrix, ring.variables)
        return self.poly.subs(dict(zip(ring.variables, rows)))

    def content_hash(self) -> str:
        return hashlib.sha256(f"n={self.n};d={self.d};{self.poly}".encode()).hexdigest()[:16]


def form_ring(n: int) -> PolyRing:
    return PolyRing(xvars(n))


def coefficient_names(n: int, d: int) -> List[Tuple[str, Tuple[int, ...]]]:
    """``c`` + exponent digits for each degree-d monomial, grevlex-descending."""
    out = []
    for m in monomials_of_degree(n, d):
        sep = "" if all(e < 10 for e in m) else "_"
        out.append(("c" + sep.join(str(e) for e in m), m))
    return out


def _linear_forms(ring: PolyRing, matrix, xs: Sequence[str]) -> List[Polynomial]:
    xpolys = [ring.var(x) for x in xs]
    rows = []
    for row in matrix:
        total = ring.zero()
        for entry, xp in zip(row, xpolys):
            if isinstance(entry, Polynomial):
                total = total + entry * xp
            elif entry:
                total = total + xp * entry
        rows.append(total)
    return rows


# ---------------------------------------------------------------- ansatz and plans

FREE = "free"


class GroupAnsatz:
    """n x n matrix pattern: each entry free (a fresh variable g_ij) or a fixed rational."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[Union[str, int, Fraction, None]]]):
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise DimensionMismatch("ansatz must be square")
            rows.append(tuple(FREE if (e is None or e == FREE) else Fraction(e) for e in row))
        self.entries = tuple(rows)

    @classmethod
    def full(cls, n: int) -> "GroupAnsatz":
        return cls([[FREE] * n for _ in range(n)])

    @classmethod
    def from_supports(cls, n: int, supports: Mapping[int, Sequence[int]]) -> "GroupAnsatz":
        """Rows given in ``supports`` (1-based row -> allowed 1-based columns) are zero elsewhere."""
        rows = []
        for i in range(1, n + 1):
            allowed = supports.get(i)
            rows.append([FREE if allowed is None or j in allowed else 0 for j in range(1, n + 1)])
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def free_names(self) -> List[str]:
        names = generic_matrix(self.n)
        return [names[i][j] for i in range(self.n) for j in range(self.n) if self.entries[i][j] == FREE]

    def matrix(self, ring: PolyRing) -> List[List[Polynomial]]:
        names = generic_matrix(self.n)
        return [
            [ring.var(names[i][j]) if e == FREE else ring.constant(e) for j, e in enumerate(row)]
            for i, row in enumerate(self.entries)
        ]

    def to_json(self):
        return [[FREE if e == FREE else _frac_text(e) for e in row] for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "GroupAnsatz":
        if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
            raise ValueError("ansatz must be a square list of rows")
        return cls([[FREE if e == FREE else Fraction(str(e)) for e in row] for row in data])

    def __eq__(self, other):
        return isinstance(other, GroupAnsatz) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_full(self) -> bool:
        return all(e == FREE for row in self.entries for e in row)


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class EliminationPlan:
    """Substitute ``pre``, eliminate the free matrix entries, substitute ``post``."""

    pre: Dict[str, Fraction]
    ansatz: GroupAnsatz
    post: Dict[str, Fraction]

    def __post_init__(self):
        self.pre = {k: Fraction(v) for k, v in self.pre.items()}
        self.post = {k: Fraction(v) for k, v in self.post.items()}
        clash = set(self.pre) & set(self.post)
        if clash:
            raise PlanMismatch(f"variables substituted twice: {sorted(clash)}")

    @classmethod
    def from_target(cls, w: Form, pre_vars: Sequence[str], ansatz: Optional[GroupAnsatz] = None):
        coeffs = w.coefficients()
        ansatz = ansatz or GroupAnsatz.full(w.n)
        pre = {v: coeffs[v] for v in pre_vars}
        post = {v: c for v, c in coeffs.items() if v not in pre}
        return cls(pre, ansatz, post)

    def to_json(self) -> dict:
        return {
            "pre": {k: _frac_text(v) for k, v in self.pre.items()},
            "ansatz": self.ansatz.to_json(),
            "post": {k: _frac_text(v) for k, v in self.post.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EliminationPlan":
        return cls(
            {k: Fraction(str(v)) for k, v in data.get("pre", {}).items()},
            GroupAnsatz.from_json(data["ansatz"]),
            {k: Fraction(str(v)) for k, v in data.get("post", {}).items()},
        )

    @classmethod
    def load(cls, path: str) -> "EliminationPlan":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def check(self, w: Form) -> None:
        names = [name for name, _ in coefficient_names(w.n, w.d)]
        covered = set(self.pre) | set(self.post)
        if covered != set(names):
            missing = sorted(set(names) - covered)
            extra = sorted(covered - set(names))
            raise PlanMismatch(f"plan must cover the target coefficients (missing {missing}, unknown {extra})")
        if self.ansatz.n != w.n:
            raise PlanMismatch("ansatz size differs from the number of variables")
        coeffs = w.coefficients()
        for part in (self.pre, self.post):
            for k, v in part.items():
                if coeffs[k] != v:
                    raise PlanMismatch(f"plan sets {k} = {v} but the target has {coeffs[k]}")


# ---------------------------------------------------------------- verdicts


class Outcome(enum.Enum):
    IN_ORBIT = "InOrbit"
    NOT_IN_ORBIT = "NotInOrbit"
    IN_CLOSURE = "InClosure"
    NOT_IN_CLOSURE = "NotInClosure"
    CONTAINMENT_PROVEN = "ContainmentProven"
    INCONCLUSIVE = "Inconclusive"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class Verdict:
    outcome: Outcome
    procedure: str
    budget: Optional[ComputeBudget] = None
    stats: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def contained(self) -> Optional[bool]:
        """True/False for a decided closure containment, None otherwise."""
        if self.outcome in (Outcome.IN_CLOSURE, Outcome.CONTAINMENT_PROVEN, Outcome.IN_ORBIT):
            return True
        if self.outcome is Outcome.NOT_IN_CLOSURE:
            return False
        return None

    def to_json(self) -> dict:
        out = {"outcome": self.outcome.value, "procedure": self.procedure}
        if self.budget is not None:
            out["budget"] = {
                "max_pairs": self.budget.max_pairs,
                "max_total_degree": self.budget.max_total_degree,
                "max_wall_seconds": self.budget.max_wall_seconds,
            }
        if self.stats:
            out["stats"] = self.stats
        if self.detail:
            out["detail"] = self.detail
        return out


# ---------------------------------------------------------------- graph ideal


def graph_ring(n: int, d: int, ansatz: GroupAnsatz, extra: Sequence[str] = (),
               with_coefficients: bool = True) -> PolyRing:
    cnames = [name for name, _ in coefficient_names(n, d)] if with_coefficients else []
    return PolyRing.with_classes(xvars(n), cnames + ansatz.free_names() + list(extra))


def _compose_in(v: Form, ring: PolyRing, gmat: List[List[Polynomial]]) -> Polynomial:
    xs = xvars(v.n)
    rows = _linear_forms(ring, gmat, xs)
    return v.poly.to_ring(ring).subs(dict(zip(xs, rows)))


def build_graph_ideal(v: Form, ansatz: Optional[GroupAnsatz] = None, det_slice: bool = False) -> Ideal:
    """Coefficients of ``sum c_m m - v∘g`` in the x variables, plus ``det g - 1`` on request.

    The ideal lives in the parameter ring (coefficient variables, then the
    free matrix entries).
    """
    ansatz = ansatz or GroupAnsatz.full(v.n)
    if ansatz.n != v.n:
        raise DimensionMismatch(f"ansatz is {ansatz.n}x{ansatz.n} but the form has {v.n} variables")
    ring = graph_ring(v.n, v.d, ansatz)
    gmat = ansatz.matrix(ring)
    generic = ring.zero()
    for name, m in coefficient_names(v.n, v.d):
        generic = generic + ring.var(name) * ring.monomial(list(m) + [0] * (ring.nvars - v.n))
    diff = generic - _compose_in(v, ring, gmat)
    params = ring.parameter_ring()
    gens = [c for _, c in coefficient_system(diff)]
    if det_slice:
        gens.append((determinant(gmat) - 1).to_ring(params))
    return Ideal(params, gens)


def _target_system(v: Form, w: Form, ansatz: GroupAnsatz, det_slice: bool, projective: bool) -> Ideal:
    """Equations ``v∘g = w`` (or ``= lam*w`` with ``lam*y = 1``) in the matrix entries."""
    extra = ["lam", "y"] if projective else []
    ring = graph_ring(v.n, v.d, ansatz, extra, with_coefficients=False)
    gmat = ansatz.matrix(ring)
    target = w.poly.to_ring(ring)
    if projective:
        target = target * ring.var("lam")
    diff = target - _compose_in(v, ring, gmat)
    params = ring.parameter_ring()
    gens = [c for _, c in coefficient_system(diff)]
    if det_slice:
        gens.append((determinant(gmat) - 1).to_ring(params))
    if projective:
        gens.append((ring.var("lam") * ring.var("y") - 1).to_ring(params))
    return Ideal(params, gens)


def _same_shape(v: Form, w: Form):
    if (v.n, v.d) != (w.n, w.d):
        raise DimensionMismatch(f"forms differ in shape: {(v.n, v.d)} vs {(w.n, w.d)}")


def in_orbit(v: Form, w: Form, mode: str = "strict", budget: ComputeBudget = DEFAULT_BUDGET) -> Verdict:
    """Is w = v∘g for some g with det g = 1 (strict) or up to a nonzero scalar (projective)?

    Strict mode is the det-1 slice exactly; projective mode adds a scalar
    ``lam`` with ``lam*y = 1`` on the target.
    """
    _same_shape(v, w)
    if mode not in ("strict", "projective"):
        raise ValueError(f"unknown mode {mode!r}")
    system = _target_system(v, w, GroupAnsatz.full(v.n), det_slice=True, projective=mode == "projective")
    proc = f"in_orbit[{mode}]"
    try:
        trivial = is_trivial(system, budget)
    except BudgetExceeded as exc:
        return Verdict(Outcome.BUDGET_EXCEEDED, proc, budget, exc.stats, exc.reason)
    return Verdict(Outcome.NOT_IN_ORBIT if trivial else Outcome.IN_ORBIT, proc, budget)


# ---------------------------------------------------------------- closure ideal and cache


@dataclass
class OrbitClosureIdeal:
    source: Form
    ansatz: GroupAnsatz
    ideal: Ideal
    stats: dict = field(default_factory=dict)
    cached: bool = False

    def specialize(self, w: Form) -> Ideal:
        _same_shape(self.source, w)
        return self.ideal.substitute(w.coefficients())


class ClosureCache:
    """Directory of eliminated closure ideals keyed by source-form content hash."""

    SUFFIX = ".closure"

    def __init__(self, directory: str):
        self.directory = directory

    def key(self, v: Form, ansatz: GroupAnsatz) -> str:
        tag = "" if ansatz.is_full() else "-" + hashlib.sha256(
            json.dumps(ansatz.to_json()).encode()).hexdigest()[:8]
        return v.content_hash() + tag

    def path(self, v: Form, ansatz: GroupAnsatz) -> str:
        return os.path.join(self.directory, self.key(v, ansatz) + self.SUFFIX)

    def get(self, v: Form, ansatz: GroupAnsatz) -> Optional[Ideal]:
        p = self.path(v, ansatz)
        if not os.path.exists(p):
            return None
        header, ring, polys = read_basis(p)
        if header.get("source-form") != str(v.poly):
            return None
        return Ideal(ring, polys)

    def put(self, v: Form, ansatz: GroupAnsatz, graph: Ideal, result: Ideal, stats: Mapping) -> str:
        p = self.path(v, ansatz)
        write_basis(p, graph, result.ring, result.generators, TermOrder.grevlex(), {
            "source-form": str(v.poly),
            "n": str(v.n),
            "d": str(v.d),
            "ansatz": json.dumps(ansatz.to_json()),
            "stats": json.dumps(dict(stats), sort_keys=True),
        })
        return p

    def entries(self) -> List[dict]:
        if not os.path.isdir(self.directory):
            return []
        out = []
        for name in sorted(os.listdir(self.directory)):
            if name.endswith(self.SUFFIX):
                header, _, polys = read_basis(os.path.join(self.directory, name))
                out.append({
                    "key": name[: -len(self.SUFFIX)],
                    "source_form": header.get("source-form"),
                    "generators": len(polys),
                })
        return out

    def purge(self) -> int:
        count = 0
        for entry in self.entries():
            os.unlink(os.path.join(self.directory, entry["key"] + self.SUFFIX))
            count += 1
        return count


def closure_ideal(v: Form, ansatz: Optional[GroupAnsatz] = None, budget: ComputeBudget = DEFAULT_BUDGET,
                  cache: Optional[ClosureCache] = None) -> OrbitClosureIdeal:
    """Eliminate the matrix entries from the graph ideal (no determinant condition)."""
    ansatz = ansatz or GroupAnsatz.full(v.n)
    if cache is not None:
        hit = cache.get(v, ansatz)
        if hit is not None:
            return OrbitClosureIdeal(v, ansatz, hit, {"cache": "hit"}, cached=True)
    graph = build_graph_ideal(v, ansatz)
    result = eliminate(graph, ansatz.free_names(), budget)
    stats = {"graph_generators": len(graph), "closure_generators": len(result)}
    if cache is not None:
        cache.put(v, ansatz, graph, result, stats)
    return OrbitClosureIdeal(v, ansatz, result, stats)


def in_orbit_closure(v: Form, w: Form, budget: ComputeBudget = DEFAULT_BUDGET,
                     cache: Optional[ClosureCache] = None) -> Verdict:
    """Specialize the closure ideal of v at the coefficients of w."""
    _same_shape(v, w)
    try:
        J = closure_ideal(v, None, budget, cache)
    except BudgetExceeded as exc:
        return Verdict(Outcome.BUDGET_EXCEEDED, "in_orbit_closure", budget, exc.stats, exc.reason)
    K = J.specialize(w)
    outcome = Outcome.IN_CLOSURE if is_zero(K) else Outcome.NOT_IN_CLOSURE
    return Verdict(outcome, "in_orbit_closure", budget, {"closure_generators": len(J.ideal),
                                                         "cache": "hit" if J.cached else "miss"})


# ---------------------------------------------------------------- sub-elim-sub


def elim_then_sub(ideal: Ideal, elim_vars: Sequence[str], values: Mapping[str, object],
                  budget: ComputeBudget = DEFAULT_BUDGET) -> Ideal:
    """Eliminate first, then substitute all values."""
    return eliminate(ideal, elim_vars, budget).substitute(values)


def sub_elim_sub_ideal(ideal: Ideal, pre: Mapping[str, object], elim_vars: Sequence[str],
                       post: Mapping[str, object], budget: ComputeBudget = DEFAULT_BUDGET) -> Ideal:
    """Substitute ``pre``, eliminate, then substitute ``post``.

    The result contains the eliminate-then-substitute ideal, so a zero
    result certifies that the latter is zero too (never the converse).
    """
    return eliminate(ideal.substitute(pre), elim_vars, budget).substitute(post)


def sub_elim_sub(v: Form, w: Form, plan: EliminationPlan, budget: ComputeBudget = DEFAULT_BUDGET) -> Verdict:
    """One-sided closure certificate: ContainmentProven or Inconclusive."""
    _same_shape(v, w)
    plan.check(w)
    graph = build_graph_ideal(v, plan.ansatz)
    proc = "sub_elim_sub"
    try:
        M = sub_elim_sub_ideal(graph, plan.pre, plan.ansatz.free_names(), plan.post, budget)
    except BudgetExceeded as exc:
        return Verdict(Outcome.BUDGET_EXCEEDED, proc, budget, exc.stats, exc.reason)
    if is_zero(M):
        return Verdict(Outcome.CONTAINMENT_PROVEN, proc, budget)
    return Verdict(Outcome.INCONCLUSIVE, proc, budget, detail="substitute-first ideal is nonzero")


__all__ = [
    "ClosureCache",
    "DimensionMismatch",
    "EliminationPlan",
    "FREE",
    "Form",
    "GroupAnsatz",
    "OrbitClosureIdeal",
    "Outcome",
    "PlanMismatch",
    "Verdict",
    "build_graph_ideal",
    "closure_ideal",
    "coefficient_names",
    "elim_then_sub",
    "form_ring",
    "in_orbit",
    "in_orbit_closure",
    "sub_elim_sub",
    "sub_elim_sub_ideal",
]
