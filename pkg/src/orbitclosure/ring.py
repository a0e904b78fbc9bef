"""Exact sparse multivariate polynomials over Q and simple algebraic extensions.

A :class:`PolyRing` is a flat ring whose variables are tagged as *main*
(the form variables ``x1..xn``) or *parameter* (coefficients ``c..`` and
matrix entries ``g..``).  Polynomials are immutable; they store a dict from
exponent tuples to scalars and serialize in graded reverse lexicographic
order, which gives a stable canonical text form.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Monomial = Tuple[int, ...]

GENERATOR = "z"


class RingError(ValueError):
    """Base class for polynomial construction errors."""


class UnknownVariable(RingError):
    pass


class MalformedTerm(RingError):
    pass


class WrongDomainConstant(RingError):
    pass


class RingMismatch(RingError):
    pass


class NonSquare(RingError):
    pass


# ---------------------------------------------------------------- domains


class Domain:
    """Coefficient domain: Q, or Q[z]/(m(z)) for a monic integer polynomial m."""

    __slots__ = ("minpoly",)

    def __init__(self, minpoly: Optional[Sequence[int]] = None):
        # minpoly stored low-degree first, monic, e.g. z^2 + 1 -> (1, 0, 1)
        if minpoly is not None:
            minpoly = tuple(int(c) for c in minpoly)
            while len(minpoly) > 1 and minpoly[-1] == 0:
                minpoly = minpoly[:-1]
            if len(minpoly) < 2:
                raise ValueError("minimal polynomial must have degree >= 1")
            if minpoly[-1] != 1:
                raise ValueError("minimal polynomial must be monic")
        self.minpoly = minpoly

    @classmethod
    def rational(cls) -> "Domain":
        return cls(None)

    @classmethod
    def extension(cls, minpoly: Union[str, Sequence[int]]) -> "Domain":
        if isinstance(minpoly, str):
            minpoly = parse_minpoly(minpoly)
        return cls(minpoly)

    @property
    def is_rational(self) -> bool:
        return self.minpoly is None

    @property
    def degree(self) -> int:
        return 1 if self.minpoly is None else len(self.minpoly) - 1

    def __eq__(self, other):
        return isinstance(other, Domain) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("Domain", self.minpoly))

    def __repr__(self):
        if self.minpoly is None:
            return "Domain.rational()"
        return f"Domain.extension({self.minpoly_text()!r})"

    def minpoly_text(self) -> Optional[str]:
        if self.minpoly is None:
            return None
        ring = PolyRing([GENERATOR])
        p = Polynomial(ring, {(k,): Fraction(c) for k, c in enumerate(self.minpoly) if c})
        return str(p)

    def coerce(self, value) -> "Scalar":
        """Convert an int, Fraction or same-domain element into a scalar of this domain."""
        if isinstance(value, AlgebraicNumber):
            if value.domain != self:
                raise RingMismatch("scalar lives in a different extension")
            return value
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
        elif isinstance(value, str):
            value = Fraction(value)
        else:
            try:
                value = Fraction(int(value.numerator), int(value.denominator))
            except AttributeError as exc:  # pragma: no cover - defensive
                raise TypeError(f"cannot use {value!r} as a coefficient") from exc
        if self.minpoly is None:
            return value
        return AlgebraicNumber(self, (value,))

    def generator(self) -> "AlgebraicNumber":
        if self.minpoly is None:
            raise WrongDomainConstant("the rationals have no generator z")
        return AlgebraicNumber(self, (Fraction(0), Fraction(1)))

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)


def parse_minpoly(text: str) -> Tuple[int, ...]:
    ring = PolyRing([GENERATOR])
    p = parse_poly(text, ring)
    deg = max(e[0] for e in p.coeffs)
    out = [0] * (deg + 1)
    for (k,), c in p.coeffs.items():
        if c.denominator != 1:
            raise ValueError("minimal polynomial must have integer coefficients")
        out[k] = int(c)
    return tuple(out)


class AlgebraicNumber:
    """Element of Q[z]/(m), stored as a reduced tuple of Fractions (low degree first)."""

    __slots__ = ("domain", "c")

    def __init__(self, domain: Domain, coeffs: Sequence[Fraction]):
        self.domain = domain
        self.c = _reduce_mod(tuple(Fraction(x) for x in coeffs), domain.minpoly)

    def _lift(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.domain != self.domain:
                raise RingMismatch("scalars from different extensions")
            return other
        return AlgebraicNumber(self.domain, (Fraction(other),))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = o.c + (Fraction(0),) * (n - len(o.c))
        return AlgebraicNumber(self.domain, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.domain, [-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.c or not o.c:
            return AlgebraicNumber(self.domain, ())
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return AlgebraicNumber(self.domain, out)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        inv = _poly_inverse_mod(self.c, self.domain.minpoly)
        return AlgebraicNumber(self.domain, inv)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = AlgebraicNumber(self.domain, (Fraction(1),))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.domain == other.domain and self.c == other.c
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.c
            return self.c == (Fraction(other),)
        return NotImplemented

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0] if self.c else 0)
        return hash((self.domain, self.c))

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def rational_value(self) -> Fraction:
        if len(self.c) > 1:
            raise ValueError("not a rational element")
        return self.c[0] if self.c else Fraction(0)

    def __repr__(self):
        return f"AlgebraicNumber({format_scalar(self)!r})"


Scalar = Union[Fraction, AlgebraicNumber]


def _reduce_mod(c: Tuple[Fraction, ...], m: Optional[Tuple[int, ...]]) -> Tuple[Fraction, ...]:
    c = list(c)
    if m is not None:
        d = len(m) - 1
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                for j in range(d):
                    c[k - d + j] -= lead * m[j]
            c[k] = Fraction(0)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _poly_divmod(a: List[Fraction], b: List[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = factor
        for i, y in enumerate(b):
            a[shift + i] -= factor * y
        while a and not a[-1]:
            a.pop()
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _poly_inverse_mod(a, m):
    # extended Euclid over Q[z]
    r0, r1 = [Fraction(x) for x in m], list(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is a zero divisor modulo the minimal polynomial")
    g = r0[0]
    return [x / g for x in s0]


# ---------------------------------------------------------------- rings


class VarClass(enum.Enum):
    MAIN = "main"
    PARAMETER = "parameter"


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class PolyRing:
    """Polynomial ring with ordered, named, class-tagged variables."""

    __slots__ = ("variables", "domain", "classes", "_index", "_hash")

    def __init__(
        self,
        variables: Iterable[str],
        domain: Optional[Domain] = None,
        classes: Optional[Iterable[VarClass]] = None,
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        for v in variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"bad variable name {v!r}")
        domain = domain or Domain.rational()
        if not domain.is_rational and GENERATOR in variables:
            raise ValueError(f"{GENERATOR!r} is reserved for the extension generator")
        if classes is None:
            classes = (VarClass.MAIN,) * len(variables)
        classes = tuple(VarClass(c) for c in classes)
        if len(classes) != len(variables):
            raise ValueError("one class tag per variable")
        self.variables = variables
        self.domain = domain
        self.classes = classes
        self._index = {v: i for i, v in enumerate(variables)}
        self._hash = hash((variables, domain, classes))

    @classmethod
    def with_classes(cls, main: Iterable[str], params: Iterable[str], domain: Optional[Domain] = None):
        main, params = list(main), list(params)
        return cls(
            main + params,
            domain,
            [VarClass.MAIN] * len(main) + [VarClass.PARAMETER] * len(params),
        )

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise UnknownVariable(var) from None

    def __contains__(self, var: str) -> bool:
        return var in self._index

    def main_variables(self) -> List[str]:
        return [v for v, c in zip(self.variables, self.classes) if c is VarClass.MAIN]

    def parameter_variables(self) -> List[str]:
        return [v for v, c in zip(self.variables, self.classes) if c is VarClass.PARAMETER]

    def subring(self, variables: Iterable[str]) -> "PolyRing":
        variables = list(variables)
        return PolyRing(variables, self.domain, [self.classes[self.index(v)] for v in variables])

    def parameter_ring(self) -> "PolyRing":
        return self.subring(self.parameter_variables())

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self._hash == other._hash
            and self.variables == other.variables
            and self.domain == other.domain
            and self.classes == other.classes
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({list(self.variables)!r}, {self.domain!r})"

    def declaration(self) -> str:
        """One-line ring declaration used in cache headers."""
        parts = [f"{v}:{c.value}" for v, c in zip(self.variables, self.classes)]
        mp = self.domain.minpoly_text()
        return "vars=" + ",".join(parts) + (f"; minpoly={mp}" if mp else "")

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value) -> "Polynomial":
        c = self.domain.coerce(value)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.domain.one()})

    def gens(self) -> List["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        c = self.domain.coerce(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)


# ---------------------------------------------------------------- term orders


class TermOrder:
    """Monomial order: ``lex``, ``grevlex`` or ``block`` (first k variables, grevlex in each block)."""

    __slots__ = ("kind", "k")

    def __init__(self, kind: str, k: int = 0):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order {kind!r}")
        if kind == "block" and k < 0:
            raise ValueError("block size must be nonnegative")
        self.kind = kind
        self.k = k if kind == "block" else 0

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def block(cls, k: int):
        return cls("block", k)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return f"TermOrder({self.kind!r}, {self.k})" if self.kind == "block" else f"TermOrder({self.kind!r})"

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind

    @classmethod
    def from_string(cls, text: str) -> "TermOrder":
        m = re.fullmatch(r"block\((\d+)\)", text.strip())
        if m:
            return cls.block(int(m.group(1)))
        return cls(text.strip())

    def weight_rows(self, n: int) -> List[List[int]]:
        """Integer rows L_j so that the order is lex on (L_0·e, L_1·e, ...).

        grevlex on e equals lex on the partial sums (S_n, S_{n-1}, ..., S_1).
        """
        if self.kind == "lex":
            return [[int(i == j) for i in range(n)] for j in range(n)]
        if self.kind == "grevlex":
            return _grevlex_rows(0, n, n)
        k = min(self.k, n)
        return _grevlex_rows(0, k, n) + _grevlex_rows(k, n, n)

    def key(self, exps: Sequence[int]) -> Tuple[int, ...]:
        """Sort key: larger key means larger monomial."""
        return tuple(sum(w * e for w, e in zip(row, exps)) for row in self.weight_rows(len(exps)))


def _grevlex_rows(lo: int, hi: int, n: int) -> List[List[int]]:
    rows = []
    for top in range(hi, lo, -1):
        rows.append([1 if lo <= i < top else 0 for i in range(n)])
    return rows


def grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Immutable sparse polynomial.  ``coeffs`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: PolyRing, coeffs: Mapping[Monomial, Scalar], _trusted: bool = True):
        self.ring = ring
        if _trusted:
            self.coeffs = dict(coeffs)
        else:
            self.coeffs = {tuple(e): ring.domain.coerce(c) for e, c in coeffs.items()}
            self.coeffs = {e: c for e, c in self.coeffs.items() if c}
        self._hash = None

    # -- basic structure
    @property
    def terms(self) -> List[Tuple[Scalar, Monomial]]:
        """(coefficient, monomial) pairs, grevlex-descending."""
        return [(self.coeffs[e], e) for e in sorted(self.coeffs, key=grevlex_key, reverse=True)]

    def __iter__(self) -> Iterator[Tuple[Scalar, Monomial]]:
        return iter(self.terms)

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs or (len(self.coeffs) == 1 and not any(next(iter(self.coeffs))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.coeffs.values())) if self.coeffs else self.ring.domain.zero()

    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def degree_in(self, var: str) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.coeffs}) <= 1

    def variables_used(self) -> List[str]:
        used = [False] * self.ring.nvars
        for e in self.coeffs:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return [v for v, u in zip(self.ring.variables, used) if u]

    def coefficient(self, exps: Sequence[int]):
        return self.coeffs.get(tuple(exps), self.ring.domain.zero())

    def leading(self, order: Optional[TermOrder] = None) -> Tuple[Scalar, Monomial]:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        keyf = grevlex_key if order is None else order.key
        e = max(self.coeffs, key=keyf)
        return self.coeffs[e], e

    # -- arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        o = self._check(other)
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.domain.coerce(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self.coeffs.items()})
        o = self._check(other)
        out: Dict[Monomial, Scalar] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = self.ring.domain.coerce(scalar)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        inv = 1 / c
        return self * inv

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.coeffs.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    # -- calculus and substitution
    def diff(self, var: str) -> "Polynomial":
        return partial_derivative(self, var)

    def subs(self, assignment: Mapping[str, object]) -> "Polynomial":
        return substitute(self, assignment)

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in another ring with the same domain, matching variables by name."""
        if ring == self.ring:
            return self
        if ring.domain != self.ring.domain:
            raise RingMismatch("cannot move between coefficient domains")
        pos = []
        for i, v in enumerate(self.ring.variables):
            pos.append(ring._index.get(v))
        out = {}
        for e, c in self.coeffs.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise UnknownVariable(self.ring.variables[i])
                    ne[j] = x
            out[tuple(ne)] = c
        return Polynomial(ring, out)

    def monic(self, order: Optional[TermOrder] = None) -> "Polynomial":
        if not self.coeffs:
            return self
        c, _ = self.leading(order)
        return self / c


# ---------------------------------------------------------------- operations


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    i = f.ring.index(var)
    out = {}
    for e, c in f.coeffs.items():
        if e[i]:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = c * e[i]
    return Polynomial(f.ring, out)


def gradient(f: Polynomial, variables: Optional[Sequence[str]] = None) -> List[Polynomial]:
    variables = f.ring.main_variables() if variables is None else variables
    return [partial_derivative(f, v) for v in variables]


def substitute(f: Polynomial, assignment: Mapping[str, object]) -> Polynomial:
    """Apply the ring endomorphism sending each assigned variable to its image.

    Images may be polynomials of ``f.ring`` or scalars; unassigned variables
    map to themselves.
    """
    ring = f.ring
    images: Dict[int, Polynomial] = {}
    for name, img in assignment.items():
        i = ring.index(name)
        if isinstance(img, Polynomial):
            if img.ring != ring:
                raise RingMismatch(f"image of {name} lives in a different ring")
        else:
            img = ring.constant(img)
        images[i] = img
    if not images:
        return f
    # a pure scalar assignment is a fast path: no polynomial products needed
    if all(img.is_constant() for img in images.values()):
        values = {i: img.constant_value() for i, img in images.items()}
        out: Dict[Monomial, Scalar] = {}
        for e, c in f.coeffs.items():
            ne = list(e)
            for i, val in values.items():
                k = e[i]
                if k:
                    c = c * val ** k
                    ne[i] = 0
            if not c:
                continue
            ne = tuple(ne)
            v = out.get(ne)
            if v is None:
                out[ne] = c
            else:
                v = v + c
                if v:
                    out[ne] = v
                else:
                    del out[ne]
        return Polynomial(ring, out)

    power_cache: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, k: int) -> Polynomial:
        key = (i, k)
        p = power_cache.get(key)
        if p is None:
            p = images[i] if k == 1 else power(i, k - 1) * images[i]
            power_cache[key] = p
        return p

    result: Dict[Monomial, Scalar] = {}
    for e, c in f.coeffs.items():
        kept = tuple(0 if i in images else x for i, x in enumerate(e))
        term = Polynomial(ring, {kept: c})
        for i, k in enumerate(e):
            if k and i in images:
                term = term * power(i, k)
        for ee, cc in term.coeffs.items():
            v = result.get(ee)
            if v is None:
                result[ee] = cc
            else:
                v = v + cc
                if v:
                    result[ee] = v
                else:
                    del result[ee]
    return Polynomial(ring, result)


def coefficient_system(
    f: Polynomial, wrt: Optional[Sequence[str]] = None
) -> List[Tuple[Monomial, Polynomial]]:
    """Split ``f`` by monomials in the ``wrt`` variables (default: the main variables).

    Returns ``(monomial, coefficient)`` pairs with the coefficient living in
    the subring of the remaining variables; zero coefficients are omitted and
    the list follows grevlex order of the monomials.
    """
    ring = f.ring
    wrt = ring.main_variables() if wrt is None else list(wrt)
    widx = [ring.index(v) for v in wrt]
    wset = set(widx)
    rest = [v for i, v in enumerate(ring.variables) if i not in wset]
    ridx = [ring.index(v) for v in rest]
    sub = ring.subring(rest)
    groups: Dict[Monomial, Dict[Monomial, Scalar]] = {}
    for e, c in f.coeffs.items():
        m = tuple(e[i] for i in widx)
        r = tuple(e[i] for i in ridx)
        groups.setdefault(m, {})[r] = c
    out = []
    for m in sorted(groups, key=grevlex_key, reverse=True):
        out.append((m, Polynomial(sub, groups[m])))
    return out


def reassemble(pairs: Sequence[Tuple[Monomial, Polynomial]], ring: PolyRing, wrt: Optional[Sequence[str]] = None) -> Polynomial:
    """Inverse of :func:`coefficient_system`."""
    wrt = ring.main_variables() if wrt is None else list(wrt)
    total = ring.zero()
    for m, coeff in pairs:
        mono = ring.monomial([m[wrt.index(v)] if v in wrt else 0 for v in ring.variables])
        total = total + coeff.to_ring(ring) * mono
    return total


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    n = len(matrix)
    if n == 0:
        raise NonSquare("empty matrix")
    if any(len(row) != n for row in matrix):
        raise NonSquare(f"matrix is not {n}x{n}")
    ring = matrix[0][0].ring
    for row in matrix:
        for x in row:
            if x.ring != ring:
                raise RingMismatch("matrix entries live in different rings")
    memo: Dict[Tuple[int, ...], Polynomial] = {}

    def minor(cols: Tuple[int, ...]) -> Polynomial:
        # determinant of the last len(cols) rows restricted to cols
        if not cols:
            return ring.one()
        got = memo.get(cols)
        if got is not None:
            return got
        r = n - len(cols)
        total = ring.zero()
        for pos, c in enumerate(cols):
            entry = matrix[r][c]
            if entry:
                sub = minor(cols[:pos] + cols[pos + 1:])
                term = entry * sub
                total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def monomials_of_degree(n: int, d: int) -> List[Monomial]:
    """All exponent vectors of total degree d in n variables, grevlex-descending."""
    out = []
    for combo in _compositions(d, n):
        out.append(combo)
    return sorted(out, key=grevlex_key, reverse=True)


def _compositions(d: int, n: int) -> Iterator[Monomial]:
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


# ---------------------------------------------------------------- text format


def format_scalar(c: Scalar) -> str:
    """Text of a scalar using the polynomial grammar (z for the generator)."""
    if isinstance(c, AlgebraicNumber):
        ring = PolyRing([GENERATOR])
        return format_poly(Polynomial(ring, {(k,): x for k, x in enumerate(c.c) if x}))
    return _format_rational(c)


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(names: Sequence[str], e: Sequence[int]) -> List[str]:
    parts = []
    for v, k in zip(names, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return parts


def format_poly(f: Polynomial) -> str:
    names = f.ring.variables
    pieces: List[Tuple[Fraction, List[str]]] = []
    for c, e in f.terms:
        mono = _format_monomial(names, e)
        if isinstance(c, AlgebraicNumber):
            for k in range(len(c.c) - 1, -1, -1):
                x = c.c[k]
                if x:
                    pieces.append((x, _format_monomial([GENERATOR], [k]) + mono))
        else:
            pieces.append((c, mono))
    if not pieces:
        return "0"
    out = []
    for i, (c, mono) in enumerate(pieces):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = "*".join(mono) if a == 1 else _format_rational(a) + "*" + "*".join(mono)
        else:
            body = _format_rational(a)
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TERM_SPLIT = re.compile(r"([+-])")
_RATIONAL_RE = re.compile(r"^(\d+)(?:/(\d+))?$")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``[sign] [rational] {"*" var ["^" int]}`` terms joined by + and -."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise MalformedTerm("empty polynomial text")
    tokens = _TERM_SPLIT.split(s)
    # tokens alternate: body, sign, body, sign, body ...
    terms: List[Tuple[int, str]] = []
    sign = 1
    expect_body = True
    if tokens[0] == "":
        tokens = tokens[1:]
        expect_body = False
    for tok in tokens:
        if expect_body:
            if tok in ("+", "-") or tok == "":
                raise MalformedTerm(f"missing term in {text!r}")
            terms.append((sign, tok))
            sign = 1
            expect_body = False
        else:
            if tok not in ("+", "-"):
                raise MalformedTerm(f"unexpected {tok!r} in {text!r}")
            sign = -1 if tok == "-" else 1
            expect_body = True
    if expect_body:
        raise MalformedTerm(f"dangling sign in {text!r}")

    domain = ring.domain
    zgen = None if domain.is_rational else domain.generator()
    out: Dict[Monomial, Scalar] = {}
    for sgn, body in terms:
        factors = body.split("*")
        coeff: Scalar = domain.coerce(sgn)
        exps = [0] * ring.nvars
        for pos, fac in enumerate(factors):
            if not fac:
                raise MalformedTerm(f"empty factor in {body!r}")
            m = _RATIONAL_RE.match(fac)
            if m:
                if pos != 0:
                    raise MalformedTerm(f"number {fac!r} must lead its term")
                den = int(m.group(2)) if m.group(2) else 1
                if den == 0:
                    raise MalformedTerm("zero denominator")
                coeff = coeff * Fraction(int(m.group(1)), den)
                continue
            m = _FACTOR_RE.match(fac)
            if not m:
                raise MalformedTerm(f"cannot parse factor {fac!r}")
            name, power = m.group(1), int(m.group(2)) if m.group(2) else 1
            if name == GENERATOR and name not in ring:
                if zgen is None:
                    raise WrongDomainConstant("z used in a ring over the rationals")
                coeff = coeff * zgen ** power
                continue
            if name not in ring:
                raise UnknownVariable(name)
            exps[ring.index(name)] += power
        e = tuple(exps)
        v = out.get(e)
        v = coeff if v is None else v + coeff
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return Polynomial(ring, out)


def parse_scalar(text: str, domain: Domain) -> Scalar:
    """Parse a constant (possibly involving z) in the given domain."""
    p = parse_poly(text, PolyRing([], domain))
    return p.constant_value()


def generic_matrix(n: int, prefix: str = "g") -> List[List[str]]:
    """Names of the entries of a generic n x n matrix: g11, g12, ... (g1_10 style when n > 9)."""
    sep = "" if n <= 9 else "_"
    return [[f"{prefix}{i}{sep}{j}" for j in range(1, n + 1)] for i in range(1, n + 1)]


def xvars(n: int) -> List[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def product(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    return reduce(lambda a, b: a * b, polys, ring.one())


__all__ = [
    "AlgebraicNumber",
    "Domain",
    "MalformedTerm",
    "Monomial",
    "NonSquare",
    "PolyRing",
    "Polynomial",
    "RingError",
    "RingMismatch",
    "Scalar",
    "TermOrder",
    "UnknownVariable",
    "VarClass",
    "WrongDomainConstant",
    "coefficient_system",
    "determinant",
    "format_poly",
    "format_scalar",
    "generic_matrix",
    "gradient",
    "monomials_of_degree",
    "parse_poly",
    "parse_scalar",
    "partial_derivative",
    "reassemble",
    "substitute",
    "xvars",
]
