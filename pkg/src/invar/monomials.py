"""Contraction monomials.

A monomial records a product of factors ``D^(A_i, B_i) psi^i`` together with
a pairing of holomorphic against antiholomorphic derivative slots.  Because
the derivative slots of each type on one factor are totally symmetric, the
pairing is fully described by an edge-multiplicity matrix: ``edges[i][j]`` is
the number of contractions whose holomorphic slot sits on factor i and whose
antiholomorphic slot sits on factor j.  Uncontracted slots are counted per
factor in ``free_hol`` / ``free_anti`` and carry no individual labels.

Two kinds exist.  A phi-monomial is a product of derivatives of one function,
so its factors are unordered and the canonical form minimizes the encoding
over simultaneous row/column permutations.  A psi-monomial is multilinear in
labeled functions psi^1..psi^sigma and keeps factor order fixed.
"""

from __future__ import annotations

from itertools import permutations

PHI = "phi"
PSI = "psi"

# raw encoding -> canonical ContractionMonomial, shared across instances
_CANONICAL_CACHE: dict = {}


class ContractionMonomial:
    __slots__ = ("kind", "sigma", "edges", "free_hol", "free_anti", "_key")

    def __init__(self, kind, edges, free_hol=None, free_anti=None):
        if kind not in (PHI, PSI):
            raise ValueError(f"unknown kind {kind!r}")
        edges = tuple(tuple(int(x) for x in row) for row in edges)
        sigma = len(edges)
        if sigma == 0 or any(len(row) != sigma for row in edges):
            raise ValueError("edges must be a non-empty square matrix")
        if any(x < 0 for row in edges for x in row):
            raise ValueError("edge multiplicities must be non-negative")
        free_hol = tuple(int(x) for x in (free_hol or (0,) * sigma))
        free_anti = tuple(int(x) for x in (free_anti or (0,) * sigma))
        if len(free_hol) != sigma or len(free_anti) != sigma:
            raise ValueError("free slot lists must have length sigma")
        if any(x < 0 for x in free_hol + free_anti):
            raise ValueError("free slot counts must be non-negative")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "free_hol", free_hol)
        object.__setattr__(self, "free_anti", free_anti)
        object.__setattr__(self, "_key", (kind, edges, free_hol, free_anti))

    def __setattr__(self, name, value):
        raise AttributeError("ContractionMonomial is immutable")

    def __eq__(self, other):
        return isinstance(other, ContractionMonomial) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (
            f"ContractionMonomial({self.kind!r}, {list(map(list, self.edges))}, "
            f"{list(self.free_hol)}, {list(self.free_anti)})"
        )

    # -- derived counts ----------------------------------------------------

    def A(self, i: int) -> int:
        """Holomorphic derivative count of factor i."""
        return sum(self.edges[i]) + self.free_hol[i]

    def B(self, i: int) -> int:
        """Antiholomorphic derivative count of factor i."""
        return sum(self.edges[j][i] for j in range(self.sigma)) + self.free_anti[i]

    @property
    def signatures(self):
        return tuple((self.A(i), self.B(i)) for i in range(self.sigma))

    @property
    def weight(self) -> int:
        return sum(x for row in self.edges for x in row)

    @property
    def degree(self) -> int:
        return self.sigma

    @property
    def geometric_weight(self) -> int:
        return self.weight - self.sigma

    @property
    def trace_count(self) -> int:
        return sum(self.edges[i][i] for i in range(self.sigma))

    @property
    def valence(self):
        return (sum(self.free_hol), sum(self.free_anti))

    def order(self, restriction=None) -> int:
        """Total derivative excess over the restriction list (default all (2,2))."""
        restriction = _check_restriction(restriction, self.sigma)
        return sum(
            self.A(i) + self.B(i) - a - b for i, (a, b) in enumerate(restriction)
        )

    def is_acceptable(self, restriction=None) -> bool:
        restriction = _check_restriction(restriction, self.sigma)
        return all(
            self.A(i) >= a and self.B(i) >= b for i, (a, b) in enumerate(restriction)
        )

    def special_contraction_count(self, i: int, j: int) -> int:
        """Contractions psi^i_sbar psi^j_s: holomorphic slot on j, anti on i."""
        return self.edges[j][i]

    # -- transformations ---------------------------------------------------

    def apply_permutation(self, perm) -> "ContractionMonomial":
        """Relabel factors: new factor i is old factor perm[i]."""
        rng = range(self.sigma)
        return ContractionMonomial(
            self.kind,
            tuple(tuple(self.edges[perm[i]][perm[j]] for j in rng) for i in rng),
            tuple(self.free_hol[perm[i]] for i in rng),
            tuple(self.free_anti[perm[i]] for i in rng),
        )

    def conjugate(self) -> "ContractionMonomial":
        """Swap holomorphic and antiholomorphic index types."""
        rng = range(self.sigma)
        return ContractionMonomial(
            self.kind,
            tuple(tuple(self.edges[j][i] for j in rng) for i in rng),
            self.free_anti,
            self.free_hol,
        )

    def with_kind(self, kind) -> "ContractionMonomial":
        if kind == self.kind:
            return self
        return ContractionMonomial(kind, self.edges, self.free_hol, self.free_anti)

    def canonical(self) -> "ContractionMonomial":
        """Canonical representative (identity for psi-monomials)."""
        if self.kind == PSI:
            return self
        cached = _CANONICAL_CACHE.get(self._key)
        if cached is not None:
            return cached
        best = None
        best_key = None
        for perm in permutations(range(self.sigma)):
            cand = self.apply_permutation(perm)
            key = (cand.signatures, cand.edges, cand.free_hol, cand.free_anti)
            if best_key is None or key < best_key:
                best_key = key
                best = cand
        _CANONICAL_CACHE[self._key] = best
        _CANONICAL_CACHE[best._key] = best
        return best

    def sort_key(self):
        """Deterministic ordering key; compare canonical forms of equal kind."""
        return (self.sigma, self.edges, self.free_hol, self.free_anti)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sigma": self.sigma,
            "edges": [list(row) for row in self.edges],
            "free_hol": list(self.free_hol),
            "free_anti": list(self.free_anti),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ContractionMonomial":
        m = cls(d["kind"], d["edges"], d.get("free_hol"), d.get("free_anti"))
        if m.sigma != d.get("sigma", m.sigma):
            raise ValueError("sigma does not match edge matrix size")
        return m


def _check_restriction(restriction, sigma):
    if restriction is None:
        return ((2, 2),) * sigma
    restriction = tuple((int(a), int(b)) for a, b in restriction)
    if len(restriction) != sigma:
        raise ValueError("restriction list length must equal the factor count")
    return restriction


def scalar_monomial(kind, edges) -> ContractionMonomial:
    """Monomial with no free slots."""
    return ContractionMonomial(kind, edges)
