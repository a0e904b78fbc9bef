"""Buchberger completion, normal forms, elimination, dimension and Hilbert values.

The kernel works on an internal representation: a monomial is packed into a
single Python int whose high bits hold the weight rows of the term order
(so integer comparison is the monomial order and integer addition is
monomial multiplication) and whose low bits hold guarded exponent fields
(so divisibility is one subtraction and a mask test).  Coefficients are
``gmpy2.mpq``; basis elements are kept monic.
"""

from __future__ import annotations

import hashlib
import heapq
import os
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq

from .ring import (
    AlgebraicNumber,
    PolyRing,
    Polynomial,
    RingMismatch,
    TermOrder,
    parse_poly,
)

FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


class BudgetExceeded(RuntimeError):
    """A compute budget ran out.  ``stats`` records progress at the time of abort."""

    def __init__(self, reason: str, stats: Optional[dict] = None):
        super().__init__(reason)
        self.reason = reason
        self.stats = dict(stats or {})


class TrivialIdeal(ValueError):
    """The ideal contains 1, so the requested quantity is undefined."""


class NonHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class ComputeBudget:
    max_pairs: Optional[int] = None
    max_total_degree: Optional[int] = None
    max_wall_seconds: Optional[float] = 300.0

    @classmethod
    def unlimited(cls) -> "ComputeBudget":
        return cls(None, None, None)


DEFAULT_BUDGET = ComputeBudget()


class Ideal:
    """Ideal given by generators; zero generators are dropped."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise RingMismatch("generator lives in a different ring")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]!r})"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def substitute(self, values: Mapping[str, object], drop: bool = True) -> "Ideal":
        """Specialize variables to scalars (or polynomials of the same ring).

        With ``drop`` the result lives in the subring of the variables that
        were not assigned a constant.
        """
        gens = [g.subs(values) for g in self.generators]
        if not drop:
            return Ideal(self.ring, gens)
        const = {v for v, img in values.items() if not isinstance(img, Polynomial) or img.is_constant()}
        keep = [v for v in self.ring.variables if v not in const]
        sub = self.ring.subring(keep)
        return Ideal(sub, [g.to_ring(sub) for g in gens])

    def to_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])

    def is_zero(self) -> bool:
        return is_zero(self)

    def text_lines(self) -> List[str]:
        return [str(g) for g in self.generators]


@dataclass
class GroebnerBasis:
    ring: PolyRing
    order: TermOrder
    basis: List[Polynomial]
    reduced: bool = True
    stats: dict = field(default_factory=dict)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and bool(self.basis[0])

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [p.leading(self.order)[1] for p in self.basis]

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.basis)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


# ---------------------------------------------------------------- kernel


class _Kernel:
    """Packed-monomial arithmetic for one (ring arity, term order)."""

    def __init__(self, n: int, order: TermOrder):
        self.n = n
        self.order = order
        self.W = W = FIELD_BITS
        self.FM = (1 << W) - 1
        self.EM = (1 << (n * W)) - 1
        self.G = sum(1 << (i * W + W - 1) for i in range(n))
        if order.kind == "lex":
            self.blocks = None
        elif order.kind == "grevlex":
            self.blocks = [(0, n)]
        else:
            k = min(order.k, n)
            self.blocks = [b for b in ((0, k), (k, n)) if b[1] > b[0]]
        self.nrows = n
        self.R = sum(1 << (i * W) for i in range(n))
        self.top = (n - 1) * W

    def encode(self, e: Sequence[int]) -> int:
        W = self.W
        packed = 0
        for i, x in enumerate(e):
            if x:
                if x > MAX_EXPONENT:
                    raise OverflowError("exponent too large for the packed representation")
                packed |= x << (i * W)
        return self.pack(packed)

    def pack(self, packed: int) -> int:
        """Full key (order weights above the exponent fields) from packed exponents."""
        W, n = self.W, self.n
        if self.blocks is None:
            weight = 0
            for i in range(n):
                weight = (weight << W) | ((packed >> (i * W)) & self.FM)
        else:
            # partial sums of a block come from multiplying by 1 + 2^W + 2^2W + ...
            weight = 0
            for lo, hi in self.blocks:
                mask = (1 << ((hi - lo) * W)) - 1
                sub = (packed >> (lo * W)) & mask
                weight = (weight << ((hi - lo) * W)) | ((sub * self.R) & mask)
        return (weight << (n * W)) | packed

    def decode(self, key: int) -> Tuple[int, ...]:
        W, FM = self.W, self.FM
        return tuple((key >> (i * W)) & FM for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        G, EM = self.G, self.EM
        return (((b & EM) | G) - (a & EM)) & G == G

    def lcm(self, a: int, b: int) -> int:
        EM, G = self.EM, self.G
        ea, eb = a & EM, b & EM
        m = ((((ea | G) - eb) & G) >> (self.W - 1)) * self.FM
        return self.pack((ea & m) | (eb & ~m & EM))

    def degree(self, key: int) -> int:
        return (((key & self.EM) * self.R) >> self.top) & self.FM

    def support(self, key: int) -> int:
        mask = 0
        for i, x in enumerate(self.decode(key)):
            if x:
                mask |= 1 << i
        return mask


class _Element:
    __slots__ = ("lm", "lme", "tail", "sugar", "supp", "nterms", "deg")

    def __init__(self, lm, lme, tail, sugar, supp, deg=0):
        self.lm = lm
        self.deg = deg
        self.lme = lme
        self.tail = tail  # list of (key, mpq), descending, lead coefficient 1 omitted
        self.sugar = sugar
        self.supp = supp
        self.nterms = len(tail) + 1


class _Clock:
    def __init__(self, budget: ComputeBudget):
        self.budget = budget
        self.start = time.monotonic()
        self.deadline = None if budget.max_wall_seconds is None else self.start + budget.max_wall_seconds
        self.ticks = 0

    def check(self, stats):
        if self.deadline is not None and time.monotonic() > self.deadline:
            stats["elapsed"] = round(time.monotonic() - self.start, 3)
            raise BudgetExceeded(f"wall-clock budget of {self.budget.max_wall_seconds}s exceeded", stats)

    def tick(self, stats):
        self.ticks += 1
        if self.ticks & 1023 == 0:
            self.check(stats)


class _Buchberger:
    def __init__(self, kernel: _Kernel, budget: ComputeBudget):
        self.K = kernel
        self.budget = budget
        self.clock = _Clock(budget)
        self.elements: List[_Element] = []
        self.active: List[int] = []
        self.found: Dict[int, int] = {}
        self.missing: set = set()
        self.stats = {"pairs": 0, "zero_reductions": 0, "basis_size": 0, "max_sugar": 0,
                      "chain_criterion": 0, "product_criterion": 0}

    # ------------------------------------------------------------ reduction
    def _divisor(self, key: int) -> Optional[_Element]:
        e = key & self.K.EM
        idx = self.found.get(e)
        if idx is not None:
            return self.elements[idx]
        if e in self.missing:
            return None
        G = self.K.G
        eg = e | G
        best = None
        for i in self.active:
            el = self.elements[i]
            if (eg - el.lme) & G == G:
                if best is None or el.nterms < best.nterms:
                    best = el
                    bi = i
        if best is None:
            self.missing.add(e)
            return None
        if len(self.found) > 500000:
            self.found.clear()
        self.found[e] = bi
        return best

    def reduce(self, f: Dict[int, mpq], full: bool = True) -> Dict[int, mpq]:
        """Normal form of f (dict key -> coefficient) w.r.t. the active elements."""
        f = dict(f)
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem: Dict[int, mpq] = {}
        pop, push = heapq.heappop, heapq.heappush
        clock, stats = self.clock, self.stats
        while heap:
            k = -pop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            el = self._divisor(k)
            if el is None:
                rem[k] = c
                if not full:
                    # leading term is irreducible: keep the rest untouched
                    rem.update(f)
                    return rem
                continue
            clock.tick(stats)
            q = k - el.lm
            for gk, gc in el.tail:
                nk = gk + q
                v = f.get(nk)
                if v is None:
                    f[nk] = -c * gc
                    push(heap, -nk)
                else:
                    v = v - c * gc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        return rem

    # ------------------------------------------------------------ basis update
    def _make_element(self, f: Dict[int, mpq], sugar: int) -> _Element:
        keys = sorted(f, reverse=True)
        lm = keys[0]
        inv = 1 / f[lm]
        tail = [(k, f[k] * inv) for k in keys[1:]]
        return _Element(lm, lm & self.K.EM, tail, sugar, self.K.support(lm), self.K.degree(lm))

    def add(self, el: _Element, pairs: Dict[Tuple[int, int], tuple], heap: list):
        """Gebauer-Moeller update of the pair set and active basis with a new element."""
        K = self.K
        h = len(self.elements)
        self.elements.append(el)
        self.missing.clear()
        hdeg = el.deg
        hle = el.lme
        G, FM, shift = K.G, K.FM, K.W - 1
        # new pairs (g, h): lcm(g, h) = lm(h) * (lm(g) : lm(h)), so the chain
        # criterion among them only needs the minimal colon monomials
        cand = []
        for g in self.active:
            ge = self.elements[g]
            ea = ge.lme
            m = ((((ea | G) - hle) & G) >> shift) * FM
            q = (ea & m) - (hle & m)
            cand.append((K.degree(q), q != ea, q, g))
        cand.sort()
        minimal: List[int] = []
        D = []
        for qdeg, overlap, q, g in cand:
            qg = q | G
            if any((qg - mq) & G == G for mq in minimal):
                self.stats["chain_criterion"] += 1
                continue
            minimal.append(q)
            if not overlap:
                self.stats["product_criterion"] += 1
                continue
            D.append((g, qdeg, hle + q))
        # drop old pairs whose lcm is divisible by lm(h) strictly
        dead = []
        for (a, b), info in pairs.items():
            Le = info[2]
            if ((Le | G) - hle) & G == G:
                ea, eb = self.elements[a], self.elements[b]
                if K.lcm(ea.lm, el.lm) != info[1] and K.lcm(eb.lm, el.lm) != info[1]:
                    dead.append((a, b))
        for p in dead:
            del pairs[p]
        self.stats["chain_criterion"] += len(dead)
        for g, qdeg, Le in D:
            ge = self.elements[g]
            L = K.pack(Le)
            Ldeg = hdeg + qdeg
            sugar = max(ge.sugar + Ldeg - ge.deg, el.sugar + Ldeg - hdeg)
            pairs[(g, h)] = (sugar, L, Le)
            heapq.heappush(heap, (sugar, L, g, h))
        self.active = [g for g in self.active
                       if not ((self.elements[g].lme | G) - hle) & G == G] + [h]

    def spoly(self, i: int, j: int, L: int) -> Dict[int, mpq]:
        a, b = self.elements[i], self.elements[j]
        qa, qb = L - a.lm, L - b.lm
        f: Dict[int, mpq] = {}
        for k, c in a.tail:
            f[k + qa] = c
        for k, c in b.tail:
            nk = k + qb
            v = f.get(nk)
            if v is None:
                f[nk] = -c
            else:
                v = v - c
                if v:
                    f[nk] = v
                else:
                    del f[nk]
        return f

    def run(self, polys: List[Dict[int, mpq]], stop_on_unit: bool = True) -> List[_Element]:
        K = self.K
        pairs: Dict[Tuple[int, int], tuple] = {}
        heap: list = []
        budget = self.budget
        polys = [p for p in polys if p]
        polys.sort(key=lambda p: max(p))
        for p in polys:
            sugar = max(K.degree(k) for k in p)
            r = self.reduce(p)
            if not r:
                continue
            el = self._make_element(r, sugar)
            if el.lm == 0 and stop_on_unit:
                return [el]
            self.add(el, pairs, heap)
        while heap:
            sugar, L, i, j = heapq.heappop(heap)
            info = pairs.pop((i, j), None)
            if info is None:
                continue
            self.stats["pairs"] += 1
            self.stats["max_sugar"] = max(self.stats["max_sugar"], sugar)
            if budget.max_pairs is not None and self.stats["pairs"] > budget.max_pairs:
                raise BudgetExceeded(f"pair budget of {budget.max_pairs} exceeded", self.snapshot())
            if budget.max_total_degree is not None and sugar > budget.max_total_degree:
                raise BudgetExceeded(f"degree budget of {budget.max_total_degree} exceeded", self.snapshot())
            self.clock.check(self.snapshot())
            s = self.spoly(i, j, L)
            r = self.reduce(s)
            if not r:
                self.stats["zero_reductions"] += 1
                continue
            el = self._make_element(r, sugar)
            if el.lm == 0 and stop_on_unit:
                return [el]
            self.add(el, pairs, heap)
        return [self.elements[i] for i in self.active]

    def snapshot(self) -> dict:
        s = dict(self.stats)
        s["basis_size"] = len(self.active)
        s["elements"] = len(self.elements)
        s["elapsed"] = round(time.monotonic() - self.clock.start, 3)
        return s

    def interreduce(self, els: List[_Element]) -> List[Dict[int, mpq]]:
        """Reduced basis: each element's tail reduced by the others, monic."""
        els = sorted(els, key=lambda e: e.lm)
        if len(els) == 1 and els[0].lm == 0:
            return [{0: mpq(1)}]
        out = []
        self.elements = list(els)
        self.found, self.missing = {}, set()
        for idx, el in enumerate(els):
            self.active = [i for i in range(len(els)) if i != idx]
            self.found, self.missing = {}, set()
            tail = self.reduce(dict(el.tail)) if el.tail else {}
            poly = {el.lm: mpq(1)}
            poly.update(tail)
            out.append(poly)
        return out


# ---------------------------------------------------------------- conversions


def _to_mpq(c) -> mpq:
    if isinstance(c, AlgebraicNumber):
        if not c.is_rational():
            raise NotImplementedError("Groebner bases are computed over the rationals only")
        c = c.rational_value()
    return mpq(c.numerator, c.denominator)


def _to_internal(f: Polynomial, K: _Kernel) -> Dict[int, mpq]:
    return {K.encode(e): _to_mpq(c) for e, c in f.coeffs.items()}


def _to_poly(d: Dict[int, mpq], K: _Kernel, ring: PolyRing) -> Polynomial:
    dom = ring.domain
    return Polynomial(
        ring,
        {K.decode(k): dom.coerce(Fraction(int(c.numerator), int(c.denominator))) for k, c in d.items()},
    )


def _check_rational(ring: PolyRing):
    if not ring.domain.is_rational:
        raise NotImplementedError("Groebner bases are computed over the rationals only")


# ---------------------------------------------------------------- public operations


def buchberger(ideal: Ideal, order: Optional[TermOrder] = None,
               budget: ComputeBudget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order`` (grevlex by default)."""
    order = order or TermOrder.grevlex()
    ring = ideal.ring
    _check_rational(ring)
    if not ideal.generators:
        return GroebnerBasis(ring, order, [], True, {"pairs": 0})
    K = _Kernel(ring.nvars, order)
    engine = _Buchberger(K, budget)
    els = engine.run([_to_internal(g, K) for g in ideal.generators])
    stats = engine.snapshot()
    reduced = engine.interreduce(els)
    basis = [_to_poly(p, K, ring) for p in reduced]
    basis.sort(key=lambda p: K.encode(p.leading(order)[1]), reverse=True)
    stats["basis_size"] = len(basis)
    return GroebnerBasis(ring, order, basis, True, stats)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by the basis (fully reduced)."""
    if f.ring != gb.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    if not f or not gb.basis:
        return f
    K = _Kernel(gb.ring.nvars, gb.order)
    engine = _Buchberger(K, ComputeBudget.unlimited())
    for p in gb.basis:
        d = _to_internal(p, K)
        engine.elements.append(engine._make_element(d, K.degree(max(d))))
    engine.active = list(range(len(engine.elements)))
    return _to_poly(engine.reduce(_to_internal(f, K)), K, gb.ring)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    cf, ef = f.leading(order)
    cg, eg = g.leading(order)
    L = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = f.ring.monomial([a - b for a, b in zip(L, ef)])
    mg = f.ring.monomial([a - b for a, b in zip(L, eg)])
    return mf * f / cf - mg * g / cg


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = gb.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j], gb.order), gb):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    lms = [p.leading(gb.order) for p in gb.basis]
    for i, p in enumerate(gb.basis):
        c, e = lms[i]
        if c != 1:
            return False
        for j, (_, lm) in enumerate(lms):
            if i == j:
                continue
            for term in p.coeffs:
                if all(a <= b for a, b in zip(lm, term)):
                    return False
    return True


def _presolve_linear(ideal: Ideal, candidates: Sequence[str],
                     max_image_degree: int = 1) -> Tuple[Ideal, List[str]]:
    """Substitute away variables that occur as ``const*v + (terms free of v)``.

    Valid for elimination of ``candidates`` and for triviality testing: the
    projection to the remaining variables is unchanged.  Only images of
    degree <= ``max_image_degree`` are used so degrees never grow.
    """
    gens = list(ideal.generators)
    ring = ideal.ring
    removed = []
    changed = True
    cand = list(candidates)
    while changed:
        changed = False
        for v in list(cand):
            i = ring.index(v)
            for gi, g in enumerate(gens):
                if g.degree_in(v) != 1:
                    continue
                lin = [(e, c) for e, c in g.coeffs.items() if e[i] == 1]
                if len(lin) != 1 or any(x for k, x in enumerate(lin[0][0]) if k != i):
                    continue
                a = lin[0][1]
                rest = g - ring.monomial(lin[0][0], a)
                if rest.total_degree() > max_image_degree:
                    continue
                image = -rest / a
                gens = [h.subs({v: image}) for k, h in enumerate(gens) if k != gi]
                gens = [h for h in gens if h]
                cand.remove(v)
                removed.append(v)
                changed = True
                break
    return Ideal(ring, gens), removed


def eliminate(ideal: Ideal, elim_vars: Iterable[str], budget: ComputeBudget = DEFAULT_BUDGET,
              method: str = "block", presolve: bool = True) -> Ideal:
    """Generators (a Groebner basis) of the ideal intersected with the subring without ``elim_vars``."""
    if method not in ("block", "lex"):
        raise ValueError(f"unknown elimination method {method!r}")
    ring = ideal.ring
    elim_vars = list(elim_vars)
    elim = [v for v in ring.variables if v in set(elim_vars)]
    for v in elim_vars:
        ring.index(v)
    keep = [v for v in ring.variables if v not in set(elim)]
    kept_ring = ring.subring(keep)
    if not elim:
        gb = buchberger(ideal, TermOrder.grevlex(), budget)
        return Ideal(ring, gb.basis)
    if presolve:
        ideal, _ = _presolve_linear(ideal, elim)
    work = ring.subring(elim + keep)
    wideal = ideal.to_ring(work)
    order = TermOrder.block(len(elim)) if method == "block" else TermOrder.lex()
    gb = buchberger(wideal, order, budget)
    nelim = len(elim)
    out = [p for p in gb.basis if not any(any(e[:nelim]) for e in p.coeffs)]
    return Ideal(kept_ring, [p.to_ring(kept_ring) for p in out])


def is_trivial(ideal: Ideal, budget: ComputeBudget = DEFAULT_BUDGET) -> bool:
    """True iff 1 lies in the ideal."""
    if any(g.is_constant() for g in ideal.generators):
        return True
    reduced, _ = _presolve_linear(ideal, ideal.ring.variables)
    if any(g.is_constant() for g in reduced.generators):
        return True
    if not reduced.generators:
        return False
    return buchberger(reduced, TermOrder.grevlex(), budget).is_unit()


def is_zero(ideal: Ideal) -> bool:
    return all(g.is_zero() for g in ideal.generators)


def _max_independent_set(n: int, supports: List[int]) -> int:
    """Size of a largest variable set containing no support (bitmask) entirely."""
    supports = sorted(set(supports), key=lambda s: bin(s).count("1"))
    # minimal supports only
    minimal = []
    for s in supports:
        if not any((m & s) == m for m in minimal):
            minimal.append(s)
    best = [n + 1]

    def hit(chosen: int, count: int):
        if count >= best[0]:
            return
        for s in minimal:
            if not (s & chosen):
                bits = [i for i in range(n) if s >> i & 1]
                for b in bits:
                    hit(chosen | (1 << b), count + 1)
                return
        best[0] = count

    hit(0, 0)
    return n - best[0]


def krull_dimension(ideal: Ideal, budget: ComputeBudget = DEFAULT_BUDGET) -> int:
    """Dimension of the affine variety of a proper ideal."""
    n = ideal.ring.nvars
    if not ideal.generators:
        return n
    gb = buchberger(ideal, TermOrder.grevlex(), budget)
    return dimension_from_basis(gb)


def dimension_from_basis(gb: GroebnerBasis) -> int:
    if gb.is_unit():
        raise TrivialIdeal("the ideal contains 1")
    n = gb.ring.nvars
    supports = []
    for e in gb.leading_monomials():
        mask = 0
        for i, x in enumerate(e):
            if x:
                mask |= 1 << i
        supports.append(mask)
    return _max_independent_set(n, supports)


def codimension(ideal: Ideal, budget: ComputeBudget = DEFAULT_BUDGET) -> int:
    return ideal.ring.nvars - krull_dimension(ideal, budget)


def hilbert_values(ideal: Ideal, up_to: int, budget: ComputeBudget = DEFAULT_BUDGET) -> List[int]:
    """Hilbert function of the quotient in degrees 0..up_to."""
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise NonHomogeneous(str(g))
    n = ideal.ring.nvars
    if ideal.generators:
        gb = buchberger(ideal, TermOrder.grevlex(), budget)
        lms = gb.leading_monomials()
    else:
        lms = []
    out = []
    for d in range(up_to + 1):
        count = 0
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            if not any(all(a <= b for a, b in zip(lm, e)) for lm in lms):
                count += 1
        out.append(count)
    return out


def same_ideal(a: Ideal, b: Ideal, budget: ComputeBudget = DEFAULT_BUDGET) -> bool:
    """Mutual membership of generators."""
    if a.ring != b.ring:
        raise RingMismatch("ideals live in different rings")
    ga = buchberger(a, TermOrder.grevlex(), budget)
    gb_ = buchberger(b, TermOrder.grevlex(), budget)
    return all(ga.contains(g) for g in b.generators) and all(gb_.contains(g) for g in a.generators)


# ---------------------------------------------------------------- cache files


def generators_hash(ideal: Ideal) -> str:
    h = hashlib.sha256()
    h.update(ideal.ring.declaration().encode())
    for line in sorted(ideal.text_lines()):
        h.update(b"\n" + line.encode())
    return h.hexdigest()


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_basis(path: str, source: Ideal, result_ring: PolyRing, polys: Sequence[Polynomial],
                order: TermOrder, extra: Optional[Mapping[str, str]] = None) -> None:
    """Write a cache file: header lines then one canonical polynomial per line."""
    lines = [
        f"# ring: {result_ring.declaration()}",
        f"# order: {order}",
        f"# source-hash: {generators_hash(source)}",
    ]
    for k, v in (extra or {}).items():
        lines.append(f"# {k}: {v}")
    lines.extend(str(p) for p in polys)
    atomic_write(path, "\n".join(lines) + "\n")


def read_basis(path: str) -> Tuple[Dict[str, str], PolyRing, List[Polynomial]]:
    header: Dict[str, str] = {}
    body: List[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                k, _, v = line[2:].partition(": ")
                header[k] = v
            elif line.strip():
                body.append(line)
    ring = ring_from_declaration(header["ring"])
    return header, ring, [parse_poly(t, ring) for t in body]


def ring_from_declaration(text: str) -> PolyRing:
    from .ring import Domain

    parts = [p.strip() for p in text.split(";")]
    names, classes = [], []
    domain = Domain.rational()
    for p in parts:
        if p.startswith("vars="):
            spec = p[len("vars="):]
            for item in filter(None, spec.split(",")):
                name, _, cls = item.partition(":")
                names.append(name)
                classes.append(cls or "main")
        elif p.startswith("minpoly="):
            domain = Domain.extension(p[len("minpoly="):])
    return PolyRing(names, domain, classes)


__all__ = [
    "BudgetExceeded",
    "ComputeBudget",
    "DEFAULT_BUDGET",
    "GroebnerBasis",
    "Ideal",
    "NonHomogeneous",
    "TrivialIdeal",
    "buchberger",
    "codimension",
    "dimension_from_basis",
    "eliminate",
    "hilbert_values",
    "is_groebner",
    "is_reduced",
    "is_trivial",
    "is_zero",
    "krull_dimension",
    "normal_form",
    "read_basis",
    "s_polynomial",
    "same_ideal",
    "write_basis",
]
