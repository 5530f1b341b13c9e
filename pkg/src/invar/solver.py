"""Witness search: invariant = Chern part + divergence of one-forms.

Any scalar invariant that integrates to zero is a rational combination of
Chern invariants and divergences of acceptable one-form invariants of weight
w-1.  The witness is found by exact linear algebra over the canonical
monomial basis: Chern columns first, then divergences of enumerated
one-forms of each valence, and the deterministic basic solution of that
system.  Inhomogeneous input is split into (weight, degree) blocks which are
solved independently.
"""

from __future__ import annotations

from fractions import Fraction

from .calculus import divergence, integrates_to_zero, local_divergence
from .chern import chern_invariant, partitions_of
from .invariants import Invariant, monomial_invariant, zero_invariant
from .linalg import LinearSystem
from .monomials import PHI, ContractionMonomial, _check_restriction
from .rationals import format_fraction

__all__ = [
    "NotCoexactError",
    "InfeasibleError",
    "Decomposition",
    "enumerate_monomials",
    "decompose",
    "verify_decomposition",
    "random_coexact_invariant",
]


class NotCoexactError(Exception):
    """The input does not integrate to zero; carries the nonvanishing residue."""

    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue


class InfeasibleError(Exception):
    """No witness exists in the generated column space."""


class Decomposition:
    """chern: partition -> coefficient; t_hol, t_anti: one-form witnesses."""

    __slots__ = ("chern", "t_hol", "t_anti")

    def __init__(self, chern=None, t_hol=None, t_anti=None):
        self.chern = dict(chern or {})
        self.t_hol = t_hol if t_hol is not None else zero_invariant(PHI, (1, 0))
        self.t_anti = t_anti if t_anti is not None else zero_invariant(PHI, (0, 1))

    def reconstruct(self) -> Invariant:
        total = zero_invariant(PHI, (0, 0))
        for p, c in self.chern.items():
            total = total + chern_invariant(p).scale(c)
        if self.t_hol:
            total = total + divergence(self.t_hol)
        if self.t_anti:
            total = total + divergence(self.t_anti)
        return total

    def to_json_dict(self) -> dict:
        return {
            "chern": [
                {"partition": list(p), "coeff": format_fraction(c)}
                for p, c in sorted(self.chern.items())
            ],
            "t_hol": self.t_hol.to_json_dict(),
            "t_anti": self.t_anti.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Decomposition":
        chern = {
            tuple(e["partition"]): Fraction(e["coeff"]) for e in d.get("chern", [])
        }
        t_hol = Invariant.from_json_dict(d["t_hol"]) if "t_hol" in d else None
        t_anti = Invariant.from_json_dict(d["t_anti"]) if "t_anti" in d else None
        if t_hol is not None and not t_hol.terms:
            t_hol = zero_invariant(PHI, (1, 0))
        if t_anti is not None and not t_anti.terms:
            t_anti = zero_invariant(PHI, (0, 1))
        return cls(chern, t_hol, t_anti)


def enumerate_monomials(w, sigma, restriction=None, valence=(0, 0), kind=PHI):
    """All canonical acceptable monomials of given weight, degree, valence."""
    restriction = _check_restriction(restriction, sigma)
    p, q = valence
    out = set()
    for free_hol in _compositions(p, sigma):
        for free_anti in _compositions(q, sigma):
            for edges in _edge_matrices(w, sigma):
                mono = ContractionMonomial(kind, edges, free_hol, free_anti)
                if mono.is_acceptable(restriction):
                    out.add(mono.canonical())
    return sorted(out, key=lambda m: m.sort_key())


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _edge_matrices(w, sigma):
    cells = sigma * sigma
    mat = [0] * cells

    def rec(idx, rest):
        if idx == cells - 1:
            mat[idx] = rest
            yield tuple(
                tuple(mat[i * sigma : (i + 1) * sigma]) for i in range(sigma)
            )
            return
        for v in range(rest + 1):
            mat[idx] = v
            yield from rec(idx + 1, rest - v)

    yield from rec(0, w)


_SYSTEM_CACHE: dict = {}


def _column_space(w, sigma, restriction):
    """Chern and divergence generator columns for one (weight, degree) block."""
    key = (w, sigma, restriction)
    cached = _SYSTEM_CACHE.get(key)
    if cached is not None:
        return cached
    chern_gens = (
        [(p, chern_invariant(p)) for p in partitions_of(sigma)] if w == 2 * sigma else []
    )
    div_gens = []
    for valence in ((1, 0), (0, 1)):
        for mono in enumerate_monomials(w - 1, sigma, restriction, valence):
            div_gens.append((mono, divergence(monomial_invariant(mono))))
    rows: dict[ContractionMonomial, int] = {}
    columns = []
    for _, inv in chern_gens + div_gens:
        col = {}
        for m, c in inv.terms.items():
            r = rows.setdefault(m, len(rows))
            col[r] = c
        columns.append(col)
    # row map must be complete before sizing the system; target monomials not
    # reachable by any generator get fresh rows when the rhs is built, so
    # reserve them lazily via the shared dict
    entry = {
        "rows": rows,
        "chern": [p for p, _ in chern_gens],
        "tmonos": [m for m, _ in div_gens],
        "columns": columns,
        "system": None,
    }
    _SYSTEM_CACHE[key] = entry
    return entry


def decompose(inv: Invariant, restriction=None) -> Decomposition:
    """Witness decomposition of a co-exact scalar phi-invariant.

    Raises NotCoexactError when the formal integral test fails and
    InfeasibleError when no witness exists over the generated columns.
    """
    if inv.kind != PHI:
        raise ValueError("decompose expects a phi-invariant")
    if inv.valence != (0, 0):
        raise ValueError("decompose expects a scalar invariant")
    result = Decomposition()
    blocks: dict[tuple, list] = {}
    for m, c in inv.terms.items():
        blocks.setdefault((m.weight, m.sigma), []).append((m, c))
    for (w, sigma), terms in sorted(blocks.items()):
        block = Invariant(PHI, (0, 0), terms)
        _decompose_block(block, w, sigma, restriction, result)
    return result


def _decompose_block(block, w, sigma, restriction, result):
    if not integrates_to_zero(block):
        if sigma >= 2:
            residue = local_divergence(block.polarize(), 1)
        else:
            residue = block
        raise NotCoexactError(
            f"block of weight {w}, degree {sigma} does not integrate to zero",
            residue=residue,
        )
    rl = _check_restriction(restriction, sigma)
    entry = _column_space(w, sigma, rl)
    rows = entry["rows"]
    rhs = {}
    fresh = False
    for m, c in block.terms.items():
        if m not in rows:
            rows[m] = len(rows)
            fresh = True
        rhs[rows[m]] = c
    if entry["system"] is None or fresh:
        entry["system"] = LinearSystem(entry["columns"], len(rows))
    x = entry["system"].solve(rhs)
    if x is None:
        raise InfeasibleError(
            f"no witness found for block of weight {w}, degree {sigma}"
        )
    nchern = len(entry["chern"])
    for p, c in zip(entry["chern"], x[:nchern]):
        if c:
            result.chern[p] = result.chern.get(p, Fraction(0)) + c
    t_terms = list(zip(entry["tmonos"], x[nchern:]))
    hol = [(m, c) for m, c in t_terms if c and m.valence == (1, 0)]
    anti = [(m, c) for m, c in t_terms if c and m.valence == (0, 1)]
    if hol:
        result.t_hol = result.t_hol + Invariant(PHI, (1, 0), hol)
    if anti:
        result.t_anti = result.t_anti + Invariant(PHI, (0, 1), anti)


def verify_decomposition(inv: Invariant, dec: Decomposition) -> bool:
    """Exact canonical equality of the input against the reconstruction."""
    return dec.reconstruct() == inv


def random_coexact_invariant(weight, sigma, rng, restriction=None) -> Invariant:
    """Random input that integrates to zero by construction: a rational
    combination of cycle invariants when the weight admits them, plus
    divergences of random acceptable one-forms.  May come out empty for
    unlucky draws; callers wanting a nonzero sample should redraw."""
    total = zero_invariant(PHI, (0, 0))
    if weight == 2 * sigma:
        for p in partitions_of(sigma):
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if c:
                total = total + chern_invariant(p).scale(c)
    for valence in ((1, 0), (0, 1)):
        gens = enumerate_monomials(weight - 1, sigma, restriction, valence)
        if not gens:
            continue
        for mono in rng.sample(gens, k=min(3, len(gens))):
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if c:
                total = total + divergence(monomial_invariant(mono, c))
    return total
