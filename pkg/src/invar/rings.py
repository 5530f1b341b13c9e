"""Coefficient rings for jet computations.

Three interchangeable rings sit under the power series and kernel pipeline:

* GaussRing: plain Gaussian rationals, for evaluating geometry at explicit
  numeric jets.
* GradedRing: Gaussian rationals graded by jet weight, for numeric kernel
  runs.  Grades are doubled so they stay integral (a jet z^a zbar^b carries
  grade |a|+|b|-2); multiplication drops anything above the cap, which is
  what keeps the kernel expansion finite.
* SymbolicRing: polynomials in formal jet symbols with Gaussian-rational
  coefficients, for identities that must hold for every potential.  Carries
  the same grade cap plus an optional total-degree cap (degree cap 1 is the
  linearized theory).

Elements are plain values (GaussRat, dict of grades, dict of monomials);
all arithmetic goes through the ring object so generic code never needs to
know which representation it is holding.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import GR_ONE, GR_ZERO, GaussRat, as_fraction

__all__ = ["GaussRing", "GradedRing", "SymbolicRing", "symbol_grade"]


def _coerce(c):
    if isinstance(c, GaussRat):
        return c
    return GaussRat(as_fraction(c))


def symbol_grade(key) -> int:
    """Doubled weight of the jet symbol (alpha, beta)."""
    alpha, beta = key
    return sum(alpha) + sum(beta) - 2


class GaussRing:
    """Plain Gaussian rationals."""

    __slots__ = ()

    zero = GR_ZERO
    one = GR_ONE

    def __eq__(self, other):
        return type(other) is GaussRing

    def __hash__(self):
        return hash(GaussRing)

    def from_fraction(self, c):
        return _coerce(c)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def scale(self, x, c):
        return x * _coerce(c)

    def conj(self, x):
        return x.conjugate()

    def is_zero(self, x):
        return not x

    def split_grades(self, x):
        return {0: x} if x else {}


class GradedRing:
    """Gaussian rationals tagged with doubled jet weight; capped products."""

    __slots__ = ("cap",)

    zero: dict = {}

    def __init__(self, cap):
        self.cap = cap

    def __eq__(self, other):
        return type(other) is GradedRing and other.cap == self.cap

    def __hash__(self):
        return hash((GradedRing, self.cap))

    @property
    def one(self):
        return {0: GR_ONE}

    def from_fraction(self, c):
        c = _coerce(c)
        return {0: c} if c else {}

    def graded(self, grade, c):
        c = _coerce(c)
        if not c or grade > self.cap:
            return {}
        return {grade: c}

    def add(self, x, y):
        out = dict(x)
        for g, c in y.items():
            s = out.get(g, GR_ZERO) + c
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return out

    def neg(self, x):
        return {g: -c for g, c in x.items()}

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        out: dict = {}
        for g1, c1 in x.items():
            for g2, c2 in y.items():
                g = g1 + g2
                if g > self.cap:
                    continue
                s = out.get(g, GR_ZERO) + c1 * c2
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
        return out

    def scale(self, x, c):
        c = _coerce(c)
        if not c:
            return {}
        return {g: v * c for g, v in x.items()}

    def conj(self, x):
        return {g: c.conjugate() for g, c in x.items()}

    def is_zero(self, x):
        return not x

    def split_grades(self, x):
        return {g: {g: c} for g, c in x.items()}

    def component(self, x, grade):
        return x.get(grade, GR_ZERO)


class SymbolicRing:
    """Polynomials in formal jet symbols (alpha, beta), capped by grade and degree.

    A monomial is a sorted tuple of (symbol, exponent) pairs; conjugation
    swaps each symbol's index pair and conjugates the coefficient, which is
    exactly the constraint a real potential puts on its jets.
    """

    __slots__ = ("cap", "degree_cap")

    zero: dict = {}

    def __init__(self, cap, degree_cap=None):
        self.cap = cap
        self.degree_cap = degree_cap

    def __eq__(self, other):
        return (
            type(other) is SymbolicRing
            and other.cap == self.cap
            and other.degree_cap == self.degree_cap
        )

    def __hash__(self):
        return hash((SymbolicRing, self.cap, self.degree_cap))

    @property
    def one(self):
        return {(): GR_ONE}

    def from_fraction(self, c):
        c = _coerce(c)
        return {(): c} if c else {}

    def symbol(self, key):
        alpha, beta = key
        key = (tuple(alpha), tuple(beta))
        if symbol_grade(key) > self.cap or (self.degree_cap or 1) < 1:
            return {}
        return {((key, 1),): GR_ONE}

    @staticmethod
    def monomial_grade(mono):
        return sum(symbol_grade(s) * e for s, e in mono)

    @staticmethod
    def monomial_degree(mono):
        return sum(e for _, e in mono)

    def add(self, x, y):
        out = dict(x)
        for m, c in y.items():
            s = out.get(m, GR_ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out

    def neg(self, x):
        return {m: -c for m, c in x.items()}

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        out: dict = {}
        for m1, c1 in x.items():
            d1 = dict(m1)
            g1 = self.monomial_grade(m1)
            n1 = self.monomial_degree(m1)
            for m2, c2 in y.items():
                if g1 + self.monomial_grade(m2) > self.cap:
                    continue
                if (
                    self.degree_cap is not None
                    and n1 + self.monomial_degree(m2) > self.degree_cap
                ):
                    continue
                merged = dict(d1)
                for s, e in m2:
                    merged[s] = merged.get(s, 0) + e
                m = tuple(sorted(merged.items()))
                v = out.get(m, GR_ZERO) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def scale(self, x, c):
        c = _coerce(c)
        if not c:
            return {}
        return {m: v * c for m, v in x.items()}

    def conj(self, x):
        out = {}
        for m, c in x.items():
            m2 = tuple(sorted((((s[1], s[0]), e) for s, e in m)))
            out[m2] = c.conjugate()
        return out

    def is_zero(self, x):
        return not x

    def split_grades(self, x):
        out: dict = {}
        for m, c in x.items():
            out.setdefault(self.monomial_grade(m), {})[m] = c
        return out

    def component(self, x, grade):
        return {m: c for m, c in x.items() if self.monomial_grade(m) == grade}
