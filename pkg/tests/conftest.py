import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from orbitclosure.ring import PolyRing, xvars

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NIGHTLY = os.environ.get("ORBITCLOSURE_NIGHTLY") == "1"


def pytest_collection_modifyitems(config, items):
    if NIGHTLY:
        return
    skip = pytest.mark.skip(reason="nightly item; set ORBITCLOSURE_NIGHTLY=1")
    for item in items:
        if "nightly" in item.keywords:
            item.add_marker(skip)
            name = item.name
            if name.startswith("test_criterion_"):
                number = name[len("test_criterion_"):].split("_")[0]
                item.user_properties.append(("criterion", f"{number} nightly"))
                item.user_properties.append(("title", "long-running item, skipped in the gating run"))


small_rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))
nonzero_rationals = small_rationals.filter(lambda q: q != 0)


@st.composite
def polynomials(draw, ring: PolyRing, max_terms: int = 4, max_degree: int = 3):
    n = ring.nvars
    terms = draw(st.lists(
        st.tuples(st.tuples(*[st.integers(0, max_degree)] * n), small_rationals),
        max_size=max_terms))
    out = ring.zero()
    for e, c in terms:
        out = out + ring.monomial(e, c)
    return out


@st.composite
def forms(draw, n: int, d: int, max_terms: int = 4):
    """Nonzero homogeneous polynomial of degree d in x1..xn."""
    from orbitclosure.orbit import Form
    from orbitclosure.ring import monomials_of_degree

    ring = PolyRing(xvars(n))
    monos = monomials_of_degree(n, d)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    poly = ring.zero()
    for m in chosen:
        poly = poly + ring.monomial(m, draw(nonzero_rationals))
    return Form(poly)


@st.composite
def invertible_matrices(draw, n: int, lo: int = -2, hi: int = 2):
    from orbitclosure.ring import determinant

    ring = PolyRing(["u"])
    while True:
        rows = [[Fraction(draw(st.integers(lo, hi))) for _ in range(n)] for _ in range(n)]
        det = determinant([[ring.constant(c) for c in row] for row in rows])
        if det:
            return rows


@pytest.fixture
def ring3():
    return PolyRing(xvars(3))


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, whatever the verbosity."""
    lines = []
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" not in props:
                continue
            if outcome == "skipped" or rep.when == "call" or outcome in ("failed", "error"):
                status = {"passed": "PASS", "skipped": "SKIP"}.get(outcome, "FAIL")
                lines.append((props["criterion"], status, props.get("title", "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    seen = set()
    for key, status, title in sorted(lines, key=lambda x: _criterion_key(x[0])):
        if (key, status) in seen:
            continue
        seen.add((key, status))
        terminalreporter.write_line(f"criterion {key:<12} {status}  {title}")


def _criterion_key(key):
    head = key.split()[0]
    return (int(head) if head.isdigit() else 99, key)
