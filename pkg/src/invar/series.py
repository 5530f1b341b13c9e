"""Truncated power series in z and zbar with coefficients in a jet ring.

A series is a dict from (alpha, beta) multi-index pairs to ring elements,
kept to total order <= cap.  Differentiation lowers the declared cap by one
so downstream products stay as small as the final evaluation allows.
"""

from __future__ import annotations

__all__ = ["ScalarSeries"]


def _dec(index, a):
    return index[:a] + (index[a] - 1,) + index[a + 1 :]


class ScalarSeries:
    __slots__ = ("ring", "n", "cap", "terms")

    def __init__(self, ring, n, cap, terms=None):
        self.ring = ring
        self.n = n
        self.cap = cap
        clean = {}
        if terms:
            for (alpha, beta), v in terms.items():
                if sum(alpha) + sum(beta) > cap or ring.is_zero(v):
                    continue
                clean[(tuple(alpha), tuple(beta))] = v
        self.terms = clean

    @classmethod
    def constant(cls, ring, n, cap, value):
        zero = (0,) * n
        return cls(ring, n, cap, {(zero, zero): value})

    @classmethod
    def one(cls, ring, n, cap):
        return cls.constant(ring, n, cap, ring.one)

    def _like(self, cap, terms):
        out = ScalarSeries.__new__(ScalarSeries)
        out.ring = self.ring
        out.n = self.n
        out.cap = cap
        out.terms = terms
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarSeries)
            and self.ring == other.ring
            and self.n == other.n
            and self.terms == other.terms
        )

    def coefficient(self, alpha, beta):
        return self.terms.get((tuple(alpha), tuple(beta)), self.ring.zero)

    def at_zero(self):
        zero = (0,) * self.n
        return self.terms.get((zero, zero), self.ring.zero)

    def add(self, other):
        self._check(other)
        ring = self.ring
        cap = min(self.cap, other.cap)
        out = {k: v for k, v in self.terms.items() if sum(k[0]) + sum(k[1]) <= cap}
        for k, v in other.terms.items():
            if sum(k[0]) + sum(k[1]) > cap:
                continue
            s = ring.add(out.get(k, ring.zero), v)
            if ring.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return self._like(cap, out)

    def neg(self):
        return self._like(self.cap, {k: self.ring.neg(v) for k, v in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def mul(self, other):
        self._check(other)
        ring = self.ring
        cap = min(self.cap, other.cap)
        out: dict = {}
        for (a1, b1), v1 in self.terms.items():
            o1 = sum(a1) + sum(b1)
            for (a2, b2), v2 in other.terms.items():
                if o1 + sum(a2) + sum(b2) > cap:
                    continue
                p = ring.mul(v1, v2)
                if ring.is_zero(p):
                    continue
                k = (
                    tuple(x + y for x, y in zip(a1, a2)),
                    tuple(x + y for x, y in zip(b1, b2)),
                )
                s = ring.add(out.get(k, ring.zero), p)
                if ring.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        return self._like(cap, out)

    def scale(self, c):
        out = {}
        for k, v in self.terms.items():
            s = self.ring.scale(v, c)
            if not self.ring.is_zero(s):
                out[k] = s
        return self._like(self.cap, out)

    def d_hol(self, a):
        out = {}
        for (alpha, beta), v in self.terms.items():
            if alpha[a]:
                out[(_dec(alpha, a), beta)] = self.ring.scale(v, alpha[a])
        return self._like(max(self.cap - 1, 0), out)

    def d_anti(self, a):
        out = {}
        for (alpha, beta), v in self.terms.items():
            if beta[a]:
                out[(alpha, _dec(beta, a))] = self.ring.scale(v, beta[a])
        return self._like(max(self.cap - 1, 0), out)

    def conjugate(self):
        ring = self.ring
        return self._like(
            self.cap, {(b, a): ring.conj(v) for (a, b), v in self.terms.items()}
        )

    def _nonconstant(self):
        zero = (0,) * self.n
        rest = dict(self.terms)
        c = rest.pop((zero, zero), None)
        return c, self._like(self.cap, rest)

    def reciprocal(self):
        """1/self for series with constant term one; geometric sum."""
        c, x = self._nonconstant()
        if c != self.ring.one:
            raise ValueError("reciprocal needs constant term one")
        out = ScalarSeries.one(self.ring, self.n, self.cap)
        power = ScalarSeries.one(self.ring, self.n, self.cap)
        sign = 1
        for _ in range(self.cap):
            power = power.mul(x)
            if not power:
                break
            sign = -sign
            out = out.add(power if sign > 0 else power.neg())
        return out

    def log(self):
        """log(self) for series with constant term one."""
        from fractions import Fraction

        c, x = self._nonconstant()
        if c != self.ring.one:
            raise ValueError("log needs constant term one")
        out = ScalarSeries(self.ring, self.n, self.cap)
        power = ScalarSeries.one(self.ring, self.n, self.cap)
        for k in range(1, self.cap + 1):
            power = power.mul(x)
            if not power:
                break
            term = power.scale(Fraction((-1) ** (k - 1), k))
            out = out.add(term)
        return out

    def _check(self, other):
        if self.ring != other.ring or self.n != other.n:
            raise ValueError("series mismatch")
