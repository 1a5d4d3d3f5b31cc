"""Exact multivariate polynomials and monomial localizations over Q.

Everything is immutable by convention: no method mutates its receiver, and
all operations return fresh objects.  Coefficients are `fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator


class MalformedElement(ValueError):
    """An element does not satisfy the invariants of its ring."""


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Poly:
    """Polynomial in `nvars` variables: {exponent tuple: nonzero Fraction}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            c = _fr(c)
            if c != 0:
                assert len(exp) == nvars, "exponent arity mismatch"
                clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars, {})

    @staticmethod
    def const(nvars: int, c) -> "Poly":
        return Poly(nvars, {(0,) * nvars: _fr(c)})

    @staticmethod
    def var(nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return Poly(nvars, {tuple(e): Fraction(1)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_const():
            raise MalformedElement("not a constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if self.is_zero():
            return 0
        return max(sum(exp) for exp in self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        assert self.nvars == other.nvars
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return Poly(self.nvars, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        assert self.nvars == other.nvars
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                terms[e] = terms.get(e, Fraction(0)) + ca * cb
        return Poly(self.nvars, terms)

    def scale(self, c) -> "Poly":
        c = _fr(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        assert n >= 0
        out = Poly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        terms: dict = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            e = list(exp)
            k = e[i]
            e[i] -= 1
            e = tuple(e)
            terms[e] = terms.get(e, Fraction(0)) + c * k
        return Poly(self.nvars, terms)

    def divides(self, other: "Poly") -> bool:
        return self.try_divide(other) is not None

    def try_divide(self, other: "Poly"):
        """Exact division other / self, or None if not divisible."""
        if self.is_zero():
            return None
        if other.is_zero():
            return Poly.zero(self.nvars)
        # multivariate long division by a single divisor, graded-lex leading term
        lead = max(self.terms, key=lambda e: (sum(e), e))
        lc = self.terms[lead]
        rem = other
        quo: dict = {}
        while not rem.is_zero():
            rlead = max(rem.terms, key=lambda e: (sum(e), e))
            qexp = tuple(a - b for a, b in zip(rlead, lead))
            if any(e < 0 for e in qexp):
                return None
            qc = rem.terms[rlead] / lc
            quo[qexp] = quo.get(qexp, Fraction(0)) + qc
            rem = rem - self * Poly(self.nvars, {qexp: qc})
            if not rem.is_zero():
                nlead = max(rem.terms, key=lambda e: (sum(e), e))
                if (sum(nlead), nlead) >= (sum(rlead), rlead):
                    return None
        return Poly(self.nvars, quo)

    def subs(self, images: list, ring: "Ring") -> "LocPoly":
        """Substitute each variable by a LocPoly of the target ring."""
        assert len(images) == self.nvars
        out = ring.zero()
        for exp, c in self.terms.items():
            term = ring.const(c)
            for i, e in enumerate(exp):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            bits.append(f"{self.terms[exp]}*x^{exp}")
        return " + ".join(bits)


class Ring:
    """Chart-ring descriptor: Q[variables] localized at a finite set S."""

    __slots__ = ("variables", "inverted", "_inv_var_idx", "_one", "_zero")

    def __init__(self, variables: Iterable[str], inverted: Iterable[Poly] = ()):
        self.variables = tuple(variables)
        self.inverted = tuple(inverted)
        assert len(set(self.variables)) == len(self.variables)
        # which S-members are plain variables (enables Laurent expansion)
        idx = []
        for s in self.inverted:
            v = None
            if len(s.terms) == 1:
                (exp, c), = s.terms.items()
                if c == 1 and sum(exp) == 1:
                    v = exp.index(1)
            idx.append(v)
        self._inv_var_idx = tuple(idx)
        self._one = None
        self._zero = None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_laurent(self) -> bool:
        """True when every inverted element is a single distinct variable."""
        idx = [i for i in self._inv_var_idx if i is not None]
        return len(idx) == len(self.inverted) and len(set(idx)) == len(idx)

    def laurent_vars(self) -> frozenset:
        return frozenset(i for i in self._inv_var_idx if i is not None)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.inverted == other.inverted
        )

    def __hash__(self):
        return hash((self.variables, self.inverted))

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise MalformedElement(f"unknown variable {name!r}") from None

    # -- element constructors ---------------------------------------------

    def zero(self) -> "LocPoly":
        if self._zero is None:
            self._zero = LocPoly(self, Poly.zero(self.nvars))
        return self._zero

    def one(self) -> "LocPoly":
        if self._one is None:
            self._one = LocPoly(self, Poly.const(self.nvars, 1))
        return self._one

    def const(self, c) -> "LocPoly":
        return LocPoly(self, Poly.const(self.nvars, c))

    def var(self, name: str) -> "LocPoly":
        return LocPoly(self, Poly.var(self.nvars, self.var_index(name)))

    def monomial(self, exps, c=1) -> "LocPoly":
        """Laurent monomial c * prod(v^e); negative exponents need v inverted."""
        num_exp = [0] * self.nvars
        den = [0] * len(self.inverted)
        for i, e in enumerate(exps):
            if e >= 0:
                num_exp[i] = e
            else:
                pos = self._laurent_den_slot(i)
                den[pos] = -e
        return LocPoly(self, Poly(self.nvars, {tuple(num_exp): _fr(c)}), tuple(den))

    def _laurent_den_slot(self, var_idx: int) -> int:
        for pos, v in enumerate(self._inv_var_idx):
            if v == var_idx:
                return pos
        raise MalformedElement(
            f"variable {self.variables[var_idx]!r} is not inverted in this ring"
        )

    def __repr__(self):
        inv = ",".join(repr(s) for s in self.inverted)
        return f"Q[{','.join(self.variables)}]" + (f"_({inv})" if inv else "")


class LocPoly:
    """Element num / prod(S_i^den_i) of a localized polynomial ring."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: Ring, num: Poly, den: tuple = None):
        assert num.nvars == ring.nvars
        self.ring = ring
        den = tuple(den) if den is not None else (0,) * len(ring.inverted)
        assert len(den) == len(ring.inverted) and all(d >= 0 for d in den)
        self.num, self.den = self._reduce(ring, num, den)

    @staticmethod
    def _reduce(ring, num, den):
        if num.is_zero():
            return num, (0,) * len(ring.inverted)
        if not any(den):
            return num, tuple(den)
        den = list(den)
        for i, s in enumerate(ring.inverted):
            if den[i] == 0:
                continue
            v = ring._inv_var_idx[i]
            if v is not None:
                # variable denominator: cancel by exponent arithmetic
                k = min(den[i], min(exp[v] for exp in num.terms))
                if k:
                    den[i] -= k
                    num = Poly(
                        ring.nvars,
                        {
                            tuple(e - k if j == v else e for j, e in enumerate(exp)): c
                            for exp, c in num.terms.items()
                        },
                    )
                continue
            while den[i] > 0:
                q = s.try_divide(num)
                if q is None:
                    break
                num = q
                den[i] -= 1
        return num, tuple(den)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return all(d == 0 for d in self.den) and self.num == Poly.const(self.ring.nvars, 1)

    def __eq__(self, other):
        if not isinstance(other, LocPoly) or self.ring != other.ring:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        # cross-multiplied comparison is valid in any localization of a domain
        return (self.num * other._den_poly()) == (other.num * self._den_poly())

    def __hash__(self):
        return hash((self.ring, self.num, self.den))

    def _den_poly(self) -> Poly:
        out = Poly.const(self.ring.nvars, 1)
        for s, d in zip(self.ring.inverted, self.den):
            for _ in range(d):
                out = out * s
        return out

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LocPoly") -> "LocPoly":
        assert self.ring == other.ring, "elements of different rings"
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        num = self._raised_num(den) + other._raised_num(den)
        return LocPoly(self.ring, num, den)

    def _raised_num(self, den: tuple) -> Poly:
        num = self.num
        for s, have, want in zip(self.ring.inverted, self.den, den):
            for _ in range(want - have):
                num = num * s
        return num

    def __neg__(self) -> "LocPoly":
        return LocPoly(self.ring, -self.num, self.den)

    def __sub__(self, other: "LocPoly") -> "LocPoly":
        return self + (-other)

    def __mul__(self, other: "LocPoly") -> "LocPoly":
        assert self.ring == other.ring, "elements of different rings"
        den = tuple(a + b for a, b in zip(self.den, other.den))
        return LocPoly(self.ring, self.num * other.num, den)

    def scale(self, c) -> "LocPoly":
        return LocPoly(self.ring, self.num.scale(c), self.den)

    def __pow__(self, n: int) -> "LocPoly":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "LocPoly":
        """Inverse of a unit num/s^d: numerator must be a monomial in inverted
        variables; the old denominator becomes the new numerator."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if len(self.num.terms) != 1:
            raise MalformedElement(f"not a unit: {self!r}")
        (exp, c), = self.num.terms.items()
        den = [0] * len(self.ring.inverted)
        for i, e in enumerate(exp):
            if e > 0:
                den[self.ring._laurent_den_slot(i)] = e
        num = self._den_poly().scale(Fraction(1) / c)
        return LocPoly(self.ring, num, tuple(den))

    # -- calculus -------------------------------------------------------------

    def diff(self, var) -> "LocPoly":
        """Exact partial derivative; quotient rule on inverted factors."""
        i = var if isinstance(var, int) else self.ring.var_index(var)
        live = [j for j, d in enumerate(self.den) if d > 0]
        if not live:
            return LocPoly(self.ring, self.num.diff(i), self.den)
        ring = self.ring
        prod_s = Poly.const(ring.nvars, 1)
        for j in live:
            prod_s = prod_s * ring.inverted[j]
        num = self.num.diff(i) * prod_s
        for j in live:
            other = Poly.const(ring.nvars, 1)
            for jj in live:
                if jj != j:
                    other = other * ring.inverted[jj]
            num = num - self.num.scale(self.den[j]) * ring.inverted[j].diff(i) * other
        den = tuple(d + (1 if j in live else 0) for j, d in enumerate(self.den))
        return LocPoly(self.ring, num, den)

    # -- Laurent expansion ------------------------------------------------------

    def monomials(self) -> Iterator[tuple]:
        """Yield (Fraction, integer exponent tuple); ring must be Laurent."""
        assert self.ring.is_laurent(), "monomial basis needs variable-only S"
        shift = [0] * self.ring.nvars
        for pos, d in enumerate(self.den):
            if d:
                shift[self.ring._inv_var_idx[pos]] -= d
        for exp, c in self.num.terms.items():
            yield c, tuple(e + s for e, s in zip(exp, shift))

    def __repr__(self):
        if all(d == 0 for d in self.den):
            return repr(self.num)
        return f"({self.num!r})/({self._den_poly()!r})"


def normal_form(e: LocPoly) -> LocPoly:
    """Canonical representative: maximal cancellation of S-factors.

    Idempotent; for scenes (S = distinct variables) two elements are equal in
    the localized ring iff their normal forms coincide.
    """
    return LocPoly(e.ring, e.num, e.den)


def partial_derive(e: LocPoly, var: str) -> LocPoly:
    return e.diff(var)


class RingMap:
    """Ring homomorphism determined by variable images; S must map to units
    or to elements that divide exactly where they are cleared."""

    __slots__ = ("src", "dst", "images")

    def __init__(self, src: Ring, dst: Ring, images: list):
        assert len(images) == src.nvars
        for im in images:
            assert im.ring == dst
        self.src = src
        self.dst = dst
        self.images = tuple(images)

    @staticmethod
    def identity(ring: Ring) -> "RingMap":
        return RingMap(ring, ring, [ring.var(v) for v in ring.variables])

    def __call__(self, e: LocPoly) -> LocPoly:
        assert e.ring == self.src, "element not in source ring"
        out = e.num.subs(list(self.images), self.dst)
        for s, d in zip(self.src.inverted, e.den):
            if d:
                s_img = s.subs(list(self.images), self.dst)
                out = out * s_img.inverse() ** d
        return out

    def compose(self, inner: "RingMap") -> "RingMap":
        """self o inner."""
        assert inner.dst == self.src
        return RingMap(inner.src, self.dst, [self(im) for im in inner.images])

    def __eq__(self, other):
        return (
            isinstance(other, RingMap)
            and self.src == other.src
            and self.dst == other.dst
            and self.images == other.images
        )


def quotient_restrict(e: LocPoly, kill: int) -> LocPoly:
    """Image of e in the quotient by the variable with index `kill`.

    Returns the canonical x-free representative inside the same ring.  The
    variable must not be inverted and must not appear in any denominator.
    """
    ring = e.ring
    if kill in ring.laurent_vars():
        raise MalformedElement("cannot quotient by an inverted variable")
    for s, d in zip(ring.inverted, e.den):
        if d and not s.diff(kill).is_zero():
            raise MalformedElement("denominator meets the quotient variable")
    num = Poly(ring.nvars, {exp: c for exp, c in e.num.terms.items() if exp[kill] == 0})
    return LocPoly(ring, num, e.den)
