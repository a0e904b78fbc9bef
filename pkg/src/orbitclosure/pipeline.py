"""Reproduce the containment table for the 13 normal forms.

Cells are decided in a fixed order: the diagonal, the dimension pretest
(orbit dimensions from the tangent-space rank), verified one-parameter
families, elimination plans, and finally the transitive closure of
everything decided Yes.  Cells nobody can settle stay undecided.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import catalog
from .catalog import Cell, Comparison, Expectation
from .degeneration import verify_degeneration
from .groebner import ComputeBudget
from .invariants import SingularInvariants, dimension_pretest, singular_invariants, tangent_orbit_dimension
from .orbit import ClosureCache, Outcome, Verdict, in_orbit_closure, sub_elim_sub

RANK_SIX = ("6A", "6C")


@dataclass
class CellResult:
    row: str
    col: str
    verdict: Verdict
    route: str
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"row": self.row, "col": self.col, "route": self.route, "verdict": self.verdict.to_json(),
               "expected": catalog.expected(self.row, self.col).value}
        if self.detail:
            out["detail"] = self.detail
        out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class TableReport:
    labels: List[str]
    cells: Dict[Cell, CellResult]
    orbit_dims: Dict[str, int]
    singular: Dict[str, SingularInvariants]
    comparison: Comparison
    notes: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def decided(self) -> Dict[Cell, bool]:
        out = {}
        for cell, res in self.cells.items():
            c = res.verdict.contained
            if c is not None:
                out[cell] = c
        return out

    def symbol(self, cell: Cell) -> str:
        res = self.cells[cell]
        c = res.verdict.contained
        if c is None:
            return "?"
        if catalog.expected(*cell) is Expectation.OPEN:
            return "NEW+" if c else "NEW-"
        return "Y" if c else "n"

    def matrix_text(self) -> str:
        width = 5
        lines = [" " * 4 + "".join(c.rjust(width) for c in self.labels)]
        for r in self.labels:
            lines.append(r.ljust(4) + "".join(self.symbol((r, c)).rjust(width) for c in self.labels))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "labels": self.labels,
            "matrix": {r: [self.symbol((r, c)) for c in self.labels] for r in self.labels},
            "cells": [self.cells[(r, c)].to_json() for r in self.labels for c in self.labels],
            "orbit_dims": self.orbit_dims,
            "singular_invariants": {k: v.to_json() for k, v in self.singular.items()},
            "comparison": self.comparison.to_json(),
            "rank_six_check": rank_six_witnesses(self.decided()),
            "notes": self.notes,
            "seconds": round(self.seconds, 3),
        }


def rank_six_witnesses(decided: Dict[Cell, bool]) -> Dict[str, Optional[str]]:
    """For each normal form, a rank-six form whose closure contains it (None if none is decided)."""
    out = {}
    for label in catalog.labels():
        out[label] = next((top for top in RANK_SIX if decided.get((label, top)) is True), None)
    return out


def transitive_closure(yes: Dict[Cell, str], names: List[str]) -> Dict[Cell, str]:
    """Close a set of Yes cells under composition, recording the middle label of each new cell."""
    yes = dict(yes)
    for b in names:
        for a in names:
            if (a, b) not in yes:
                continue
            for c in names:
                if (b, c) in yes and (a, c) not in yes:
                    yes[(a, c)] = b
    return yes


def _run_plan(record: catalog.PlanRecord, budget: ComputeBudget) -> Tuple[Verdict, float]:
    v, w = record.forms()
    start = time.monotonic()
    verdict = sub_elim_sub(v, w, record.plan, budget)
    return verdict, time.monotonic() - start


def _run_hard(row: str, col: str, budget: ComputeBudget, cache_dir: Optional[str]) -> Tuple[Verdict, float]:
    v, w = catalog.lookup(col).form, catalog.lookup(row).form
    start = time.monotonic()
    cache = ClosureCache(cache_dir) if cache_dir else None
    verdict = in_orbit_closure(v, w, budget, cache)
    return verdict, time.monotonic() - start


def _map(fn, jobs_args: List[tuple], jobs: int) -> List:
    if jobs <= 1 or len(jobs_args) <= 1:
        return [fn(*args) for args in jobs_args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *args) for args in jobs_args]
        return [f.result() for f in futures]


def reproduce_table(budget: Optional[ComputeBudget] = None, include_hard: bool = False, jobs: int = 1,
                    cache_dir: Optional[str] = None, hard_budget: Optional[ComputeBudget] = None,
                    use_plans: bool = True, log: Optional[Callable[[str], None]] = None) -> TableReport:
    budget = budget or ComputeBudget(max_wall_seconds=300.0)
    hard_budget = hard_budget or budget
    say = log or (lambda msg: None)
    start = time.monotonic()
    names = catalog.labels()
    cells: Dict[Cell, CellResult] = {}
    notes: List[str] = []

    # orbit dimensions and singular-locus invariants
    dims, sing = {}, {}
    for label in names:
        nf = catalog.lookup(label)
        dims[label] = tangent_orbit_dimension(nf.form)
        if dims[label] != nf.orbit_dim:
            notes.append(f"{label}: computed orbit dimension {dims[label]} differs from the registry ({nf.orbit_dim})")
        sing[label] = singular_invariants(nf.form, 4, budget)
    say("orbit dimensions: " + ", ".join(f"{k}={v}" for k, v in dims.items()))

    for a in names:
        cells[(a, a)] = CellResult(a, a, Verdict(Outcome.IN_CLOSURE, "diagonal"), "diagonal")

    # dimension pretest: row in closure(col) is impossible when dim(col) <= dim(row)
    for row in names:
        for col in names:
            if row == col:
                continue
            pre = dimension_pretest(dims[col], dims[row], same_orbit=False)
            if pre is None:
                continue
            if dims[col] != dims[row]:
                why = "orbit dimensions differ"
            elif sing[col] != sing[row]:
                why = "equal orbit dimension, singular-locus invariants differ"
            else:
                why = "equal orbit dimension, distinct normal forms"
            cells[(row, col)] = CellResult(row, col, pre, "dimension", f"dim {col} = {dims[col]}, dim {row} = {dims[row]}; {why}")

    # certified Yes cells: families, then elimination plans
    yes: Dict[Cell, str] = {cell: "diagonal" for cell in cells if cell[0] == cell[1]}
    direct: Dict[Cell, CellResult] = {}
    for fx in catalog.table_fixtures():
        t0 = time.monotonic()
        ok = verify_degeneration(fx.family, fx.source, fx.target)
        dt = time.monotonic() - t0
        if ok:
            direct[fx.cell] = CellResult(*fx.cell, Verdict(Outcome.IN_CLOSURE, "verify_degeneration"),
                                         "degeneration", f"family {fx.name}", dt)
        else:
            notes.append(f"family {fx.name} failed to verify")
    if use_plans:
        todo = [rec for rec in catalog.plans() if rec.cell not in direct]
        results = _map(_run_plan, [(rec, budget) for rec in todo], jobs)
        for rec, (verdict, dt) in zip(todo, results):
            say(f"plan {rec.row}-{rec.col}: {verdict.outcome.value} in {dt:.1f}s")
            if verdict.outcome is Outcome.CONTAINMENT_PROVEN:
                direct[rec.cell] = CellResult(rec.row, rec.col, verdict, "gb-computation", rec.note, dt)
            else:
                notes.append(f"plan {rec.row}-{rec.col} gave {verdict.outcome.value}")
    for cell in direct:
        yes.setdefault(cell, "direct")
    closed = transitive_closure(yes, names)
    for cell, how in closed.items():
        if cell in cells and cells[cell].verdict.contained is False:
            notes.append(f"conflict at {cell}: certified Yes but the pretest says No")
            continue
        if cell in cells:
            continue
        if cell in direct:
            cells[cell] = direct[cell]
        else:
            cells[cell] = CellResult(*cell, Verdict(Outcome.IN_CLOSURE, "transitivity"), "transitivity",
                                     f"{cell[0]} <= {how} <= {cell[1]}")

    # whatever is left
    rest = [(r, c) for r in names for c in names if (r, c) not in cells]
    if include_hard and rest:
        results = _map(_run_hard, [(r, c, hard_budget, cache_dir) for r, c in rest], jobs)
        for (r, c), (verdict, dt) in zip(rest, results):
            cells[(r, c)] = CellResult(r, c, verdict, "closure-elimination", "", dt)
    else:
        for r, c in rest:
            cells[(r, c)] = CellResult(r, c, Verdict(Outcome.INCONCLUSIVE, "not attempted"), "open",
                                       "needs a four-variable closure elimination (use --include-hard)")

    decided = {cell: res.verdict for cell, res in cells.items()}
    report = TableReport(names, cells, dims, sing, catalog.compare(decided), notes, time.monotonic() - start)
    return report


__all__ = ["CellResult", "TableReport", "rank_six_witnesses", "reproduce_table", "transitive_closure"]
