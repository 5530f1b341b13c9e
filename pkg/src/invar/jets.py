"""Potentials as finite jet collections.

A potential is the deviation H of a Kahler potential from the flat one,
stored as a finite dict of jets: (alpha, beta) -> coefficient of
z^alpha zbar^beta.  Normal coordinates are assumed throughout, so every jet
must have |alpha| >= 2 and |beta| >= 2; a real potential carries conjugate
coefficients on transposed index pairs.

The coefficient lives in one of the jet rings: plain values for numeric
geometry, graded values for numeric kernel runs, formal symbols for
identities.  Constructors cover explicit jets, the standard rational
curvature model on projective space, random Hermitian jets, and the fully
symbolic potential of a given weight.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import GaussRat, as_fraction, format_fraction, parse_fraction
from .rings import GaussRing, GradedRing, SymbolicRing, symbol_grade
from .series import ScalarSeries

__all__ = [
    "Potential",
    "fubini_study_jets",
    "random_hermitian_jets",
    "jet_keys_up_to_grade",
]


def _check_key(key, n):
    alpha, beta = key
    alpha = tuple(int(v) for v in alpha)
    beta = tuple(int(v) for v in beta)
    if len(alpha) != n or len(beta) != n:
        raise ValueError(f"jet index {key} does not match dimension {n}")
    if min(alpha + beta, default=0) < 0:
        raise ValueError(f"negative jet index {key}")
    if sum(alpha) < 2 or sum(beta) < 2:
        raise ValueError(
            f"jet {key} is not in normal form; need order >= 2 in z and zbar"
        )
    return alpha, beta


class Potential:
    __slots__ = ("n", "ring", "jets")

    def __init__(self, n, ring, jets):
        if n < 1:
            raise ValueError("need at least one complex dimension")
        self.n = n
        self.ring = ring
        clean = {}
        for key, v in jets.items():
            key = _check_key(key, n)
            if not ring.is_zero(v):
                clean[key] = v
        self.jets = clean

    @classmethod
    def numeric(cls, n, raw_jets):
        """Plain Gaussian-rational coefficients; raw values as GaussRat."""
        ring = GaussRing()
        return cls(n, ring, {k: _gauss(v) for k, v in raw_jets.items()})

    @classmethod
    def graded_numeric(cls, n, raw_jets, weight_cap):
        """Same values, tagged with their jet grade and capped products."""
        ring = GradedRing(2 * weight_cap)
        jets = {}
        for key, v in raw_jets.items():
            key = _check_key(key, n)
            jets[key] = ring.graded(symbol_grade(key), _gauss(v))
        return cls(n, ring, jets)

    @classmethod
    def symbolic(cls, n, weight_cap, linear=False):
        """One formal symbol per jet index pair up to the weight cap."""
        ring = SymbolicRing(2 * weight_cap, degree_cap=1 if linear else None)
        jets = {key: ring.symbol(key) for key in jet_keys_up_to_grade(n, 2 * weight_cap)}
        return cls(n, ring, jets)

    def max_order(self):
        return max((sum(a) + sum(b) for a, b in self.jets), default=0)

    def is_hermitian(self) -> bool:
        ring = self.ring
        for (a, b), v in self.jets.items():
            if self.jets.get((b, a), ring.zero) != ring.conj(v):
                return False
        return True

    def series(self, cap) -> ScalarSeries:
        terms = {k: v for k, v in self.jets.items() if sum(k[0]) + sum(k[1]) <= cap}
        return ScalarSeries(self.ring, self.n, cap, terms)

    def to_json_dict(self) -> dict:
        if not isinstance(self.ring, GaussRing):
            raise ValueError("only numeric potentials serialize")
        entries = []
        for (a, b), v in sorted(self.jets.items()):
            entries.append(
                {
                    "alpha": list(a),
                    "beta": list(b),
                    "re": format_fraction(v.re),
                    "im": format_fraction(v.im),
                }
            )
        return {"n": self.n, "jets": entries}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Potential":
        n = int(d["n"])
        raw = {}
        for e in d["jets"]:
            key = (tuple(int(v) for v in e["alpha"]), tuple(int(v) for v in e["beta"]))
            raw[key] = GaussRat(
                parse_fraction(e.get("re", "0")), parse_fraction(e.get("im", "0"))
            )
        return cls.numeric(n, raw)


def _gauss(v):
    if isinstance(v, GaussRat):
        return v
    return GaussRat(as_fraction(v))


def _multi_indices(n, total):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _multi_indices(n - 1, total - first):
            yield (first,) + rest


def jet_keys_up_to_grade(n, grade_cap):
    """All normal-form jet index pairs with doubled weight <= grade_cap."""
    out = []
    for ka in range(2, grade_cap + 1):
        for kb in range(2, grade_cap + 3 - ka):
            for alpha in _multi_indices(n, ka):
                for beta in _multi_indices(n, kb):
                    out.append((alpha, beta))
    return out


def fubini_study_jets(n, max_order) -> dict:
    """Jets of log(1 + |z|^2) - |z|^2 through the given total order."""
    jets = {}
    for k in range(2, max_order // 2 + 1):
        c = Fraction((-1) ** (k - 1)) * _factorial(k - 1)
        for alpha in _multi_indices(n, k):
            jets[(alpha, alpha)] = GaussRat(c / _factorial_multi(alpha))
    return jets


def _factorial(k):
    out = 1
    for m in range(2, k + 1):
        out *= m
    return out


def _factorial_multi(alpha):
    out = 1
    for v in alpha:
        out *= _factorial(v)
    return out


def random_hermitian_jets(n, weight_cap, rng, terms=6, coeff_bound=3) -> dict:
    """Sparse random real potential: conjugate pairs of rational jets."""
    keys = jet_keys_up_to_grade(n, 2 * weight_cap)
    jets: dict = {}
    attempts = 0
    while len(jets) < 2 * terms and attempts < 50 * terms:
        attempts += 1
        key = keys[rng.randrange(len(keys))]
        a, b = key
        if key in jets:
            continue
        re = Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, 3))
        if a == b:
            v = GaussRat(re)
            if not v:
                continue
            jets[key] = v
        else:
            im = Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, 3))
            v = GaussRat(re, im)
            if not v:
                continue
            jets[key] = v
            jets[(b, a)] = v.conjugate()
    return jets
