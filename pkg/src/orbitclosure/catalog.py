"""Registry of the 13 cubic surfaces with infinitely many singular points.

Holds the normal forms, the expected containment table, the one-parameter
families certifying containments and the elimination plans for the cells
settled by Groebner computations.  Everything is read from the JSON files
under ``data/``.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .degeneration import DegenerationFamily
from .orbit import EliminationPlan, Form, Verdict

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

Cell = Tuple[str, str]


class UnknownLabel(KeyError):
    pass


class Expectation(enum.Enum):
    YES = "Yes"
    NO = "No"
    OPEN = "Open"


@dataclass(frozen=True)
class NormalForm:
    label: str
    rank: int
    form: Form
    singularity: str
    singular_dim: int
    orbit_dim: int

    def restricted(self, n: int) -> Form:
        """The same polynomial in x1..xn (fails when it uses a dropped variable)."""
        return Form.parse(str(self.form.poly), n, self.label)


@dataclass(frozen=True)
class Entry:
    expected: Expectation
    tag: str


@dataclass
class Fixture:
    name: str
    family: DegenerationFamily
    source: Form
    target: Form
    order: int
    origin: str

    @property
    def cell(self) -> Cell:
        """(row, col) of the containment table: the target lies in the source's closure."""
        return (self.family.target_label, self.family.source_label)


@dataclass
class PlanRecord:
    row: str
    col: str
    n: int
    plan: EliminationPlan
    note: str

    @property
    def cell(self) -> Cell:
        return (self.row, self.col)

    def forms(self) -> Tuple[Form, Form]:
        """Source (column form) and target (row form) in x1..xn."""
        return lookup(self.col).restricted(self.n), lookup(self.row).restricted(self.n)


def _read(name: str):
    with open(os.path.join(DATA_DIR, name)) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _forms() -> Dict[str, NormalForm]:
    data = _read("forms.json")
    out = {}
    for item in data["forms"]:
        out[item["label"]] = NormalForm(
            item["label"], item["rank"], Form.parse(item["form"], data["n"], item["label"]),
            item["singularity"], item["singular_dim"], item["orbit_dim"])
    return out


def labels() -> List[str]:
    return list(_forms())


def normal_forms() -> List[NormalForm]:
    return list(_forms().values())


def lookup(label: str) -> NormalForm:
    try:
        return _forms()[label]
    except KeyError:
        raise UnknownLabel(label) from None


@lru_cache(maxsize=None)
def _table() -> Dict[Cell, Entry]:
    data = _read("containment.json")
    cols = data["labels"]
    out = {}
    for row, entries in data["rows"].items():
        for col, text in zip(cols, entries):
            value, _, tag = text.partition("/")
            out[(row, col)] = Entry(Expectation(value), tag)
    return out


def entry(row: str, col: str) -> Entry:
    lookup(row)
    lookup(col)
    return _table()[(row, col)]


def expected(row: str, col: str) -> Expectation:
    """Is the orbit closure of ``row`` contained in that of ``col``?"""
    return entry(row, col).expected


def expected_matrix() -> Dict[Cell, Expectation]:
    return {cell: e.expected for cell, e in _table().items()}


def open_cells() -> List[Cell]:
    return [cell for cell, e in _table().items() if e.expected is Expectation.OPEN]


@lru_cache(maxsize=None)
def _fixtures() -> Tuple[Fixture, ...]:
    folder = os.path.join(DATA_DIR, "fixtures")
    out = []
    for name in sorted(os.listdir(folder)):
        if not name.endswith(".json"):
            continue
        out.append(load_fixture(os.path.join(folder, name)))
    return tuple(out)


def load_fixture(path: str) -> Fixture:
    with open(path) as fh:
        data = json.load(fh)
    fam = DegenerationFamily.from_json(data)
    n = data.get("n", fam.n)
    src = data.get("source_form")
    tgt = data.get("target_form")
    source = Form.parse(src, n) if src else lookup(fam.source_label).restricted(n)
    target = Form.parse(tgt, n) if tgt else lookup(fam.target_label).restricted(n)
    name = os.path.splitext(os.path.basename(path))[0]
    return Fixture(name, fam, source, target, data.get("order", 0), data.get("origin", "explicit"))


def fixtures() -> List[Fixture]:
    return list(_fixtures())


def table_fixtures() -> List[Fixture]:
    """Fixtures whose endpoints are both catalog labels."""
    known = set(labels())
    return [f for f in _fixtures() if f.cell[0] in known and f.cell[1] in known
            and f.source == lookup(f.cell[1]).form and f.target == lookup(f.cell[0]).form]


@lru_cache(maxsize=None)
def _plans() -> Tuple[PlanRecord, ...]:
    folder = os.path.join(DATA_DIR, "plans")
    out = []
    for name in sorted(os.listdir(folder)):
        if name.endswith(".json"):
            with open(os.path.join(folder, name)) as fh:
                data = json.load(fh)
            out.append(PlanRecord(data["row"], data["col"], data["n"], EliminationPlan.from_json(data),
                                  data.get("note", "")))
    return tuple(out)


def plans() -> List[PlanRecord]:
    return list(_plans())


def plan_for(row: str, col: str) -> Optional[PlanRecord]:
    for p in _plans():
        if p.cell == (row, col):
            return p
    return None


def data_hash() -> str:
    """Content hash over every registry file, for drift detection."""
    h = hashlib.sha256()
    for root, _, files in sorted(os.walk(DATA_DIR)):
        for name in sorted(files):
            if name.endswith(".json"):
                path = os.path.join(root, name)
                h.update(os.path.relpath(path, DATA_DIR).encode())
                with open(path, "rb") as fh:
                    h.update(fh.read())
    return h.hexdigest()


# ---------------------------------------------------------------- comparison


def _decision(value) -> Optional[bool]:
    if value is None or value == "Open":
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, Verdict):
        return value.contained
    if isinstance(value, Expectation):
        return {Expectation.YES: True, Expectation.NO: False}.get(value)
    raise TypeError(f"cannot interpret {value!r} as a containment decision")


@dataclass
class Comparison:
    mismatches: List[Cell] = field(default_factory=list)
    undecided: List[Cell] = field(default_factory=list)
    new: List[Cell] = field(default_factory=list)
    agreements: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def complete(self) -> bool:
        return not self.mismatches and not self.undecided

    def to_json(self) -> dict:
        return {
            "mismatches": [list(c) for c in self.mismatches],
            "undecided": [list(c) for c in self.undecided],
            "new": [list(c) for c in self.new],
            "agreements": self.agreements,
        }


def compare(computed: Mapping[Cell, object]) -> Comparison:
    """Cell-by-cell agreement with the expected table.

    A decided cell that disagrees is a mismatch; a decided cell left
    undecided is listed separately; an Open cell that got decided is NEW.
    """
    out = Comparison()
    for cell, exp in sorted(expected_matrix().items()):
        got = _decision(computed.get(cell))
        if exp is Expectation.OPEN:
            if got is not None:
                out.new.append(cell)
            continue
        if got is None:
            out.undecided.append(cell)
        elif got != (exp is Expectation.YES):
            out.mismatches.append(cell)
        else:
            out.agreements += 1
    return out


def transitive_violations(decided: Mapping[Cell, bool], names: Optional[Iterable[str]] = None) -> List[tuple]:
    """Triples (a, b, c) with a<=b and b<=c decided Yes but (a, c) decided No."""
    names = list(names or labels())
    bad = []
    for a in names:
        for b in names:
            if decided.get((a, b)) is not True:
                continue
            for c in names:
                if decided.get((b, c)) is True and decided.get((a, c)) is False:
                    bad.append((a, b, c))
    return bad


__all__ = [
    "Comparison",
    "Entry",
    "Expectation",
    "Fixture",
    "NormalForm",
    "PlanRecord",
    "UnknownLabel",
    "compare",
    "data_hash",
    "entry",
    "expected",
    "expected_matrix",
    "fixtures",
    "labels",
    "load_fixture",
    "lookup",
    "normal_forms",
    "open_cells",
    "plan_for",
    "plans",
    "table_fixtures",
    "transitive_violations",
]
