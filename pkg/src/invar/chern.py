"""Chern polynomials of the potential and the trace-cycle reduction.

``chern_invariant(p)`` realizes the scalar invariant obtained by wedging the
curvature-variation forms F_{ab} = phi_{acbe} dz^c dz^ebar into one closed
form per part of the partition and fully contracting.  In edge-matrix terms
each part of size k contributes a cycle of k factors joined by matrix-index
edges, and the wedge contraction sums over all pairings of the form indices
with the sign of the pairing permutation.  Every factor ends up of type
(2,2); the invariant has degree sum(p) and weight 2*sum(p), and it integrates
to zero because the underlying form is exact.

``chern_reduce`` inverts this description on the all-trace terms: the unique
maximal-height term of chern_invariant(p) is the product of plain trace
cycles encoding p with coefficient 1, so repeatedly reading off a maximal
all-trace term and subtracting the matching Chern invariant terminates with
a remainder whose every term has a trace-free factor.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .invariants import Invariant, monomial_invariant
from .monomials import PHI, ContractionMonomial

__all__ = [
    "partitions_of",
    "chern_invariant",
    "chern_basis",
    "height",
    "max_height_terms",
    "chern_reduce",
]


def partitions_of(n: int):
    """Partitions of n as non-increasing tuples, in descending lex order."""

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return list(gen(n, n))


def _normalize_partition(p):
    p = tuple(sorted((int(k) for k in p), reverse=True))
    if not p or any(k < 1 for k in p):
        raise ValueError("partition must consist of positive integers")
    return p


def _cycle_successor(p):
    """next[i] = matrix-index successor of factor i under the partition cycles."""
    succ = []
    offset = 0
    for k in p:
        succ.extend([offset + (i + 1) % k for i in range(k)])
        offset += k
    return succ


def chern_invariant(p) -> Invariant:
    p = _normalize_partition(p)
    sigma = sum(p)
    succ = _cycle_successor(p)
    terms = []
    for tau in permutations(range(sigma)):
        edges = [[0] * sigma for _ in range(sigma)]
        for i in range(sigma):
            edges[i][succ[i]] += 1
            edges[i][tau[i]] += 1
        terms.append((ContractionMonomial(PHI, edges), _perm_sign(tau)))
    return Invariant(PHI, (0, 0), terms)


def _perm_sign(tau):
    sign = 1
    seen = [False] * len(tau)
    for i in range(len(tau)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = tau[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def chern_basis(sigma: int):
    """[chern_invariant(p) for partitions p of sigma], descending lex order."""
    if sigma < 1:
        raise ValueError("sigma must be positive")
    return [chern_invariant(p) for p in partitions_of(sigma)]


def height(mono: ContractionMonomial) -> int:
    return mono.trace_count


def _all_factors_traced(mono):
    return all(mono.edges[i][i] >= 1 for i in range(mono.sigma))


def max_height_terms(inv: Invariant) -> Invariant:
    """Terms of maximal height among those with a trace in every factor."""
    best = max(
        (height(m) for m in inv.terms if _all_factors_traced(m)), default=None
    )
    if best is None:
        return inv.filter(lambda m: False)
    return inv.filter(lambda m: _all_factors_traced(m) and height(m) == best)


def _read_partition(mono):
    """Partition encoded by an all-trace (2,2)-monomial.

    Factors with a double trace are parts of size 1; the remaining factors
    carry exactly one off-diagonal out-edge and in-edge, so their edges form
    a permutation whose cycles give the larger parts.
    """
    parts = []
    rest = []
    for i in range(mono.sigma):
        d = mono.edges[i][i]
        if d == 2:
            parts.append(1)
        elif d == 1:
            rest.append(i)
        else:
            raise ValueError("not an all-trace monomial of type (2,2)")
    nxt = {}
    for i in rest:
        outs = [
            j
            for j in range(mono.sigma)
            for _ in range(mono.edges[i][j])
            if j != i
        ]
        if len(outs) != 1:
            raise ValueError("factor is not of type (2,2)")
        nxt[i] = outs[0]
    seen = set()
    for i in rest:
        if i in seen:
            continue
        length = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = nxt[j]
            length += 1
        parts.append(length)
    return tuple(sorted(parts, reverse=True))


def chern_reduce(inv: Invariant):
    """Split an order-0 invariant as sum(c_p * chern_invariant(p)) + remainder.

    The remainder has at least one trace-free factor in every term.  Raises
    if some factor is not of type (2,2).
    """
    for m in inv.terms:
        if any(s != (2, 2) for s in m.signatures):
            raise ValueError("chern_reduce expects every factor of type (2,2)")
    chern_part: dict[tuple, Fraction] = {}
    rest = inv
    while True:
        candidates = max_height_terms(rest)
        if not candidates:
            break
        mono = min(candidates.terms, key=lambda m: m.sort_key())
        coeff = candidates.terms[mono]
        p = _read_partition(mono)
        chern_part[p] = chern_part.get(p, Fraction(0)) + coeff
        rest = rest - coeff * chern_invariant(p)
    chern_part = {p: c for p, c in chern_part.items() if c}
    return chern_part, rest
