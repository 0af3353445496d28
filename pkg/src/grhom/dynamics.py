"""Shift-equivalence certificates and the eventual-conjugacy pipeline.

Two square nonnegative integer matrices A and B are shift equivalent with
lag l when nonnegative integer matrices R and S satisfy

    A R = R B,   B S = S A,   R S = A^l,   S R = B^l.

For the edge shifts of finite directed graphs this is equivalent to eventual
conjugacy, and equivalent again to an order and automorphism preserving
isomorphism of the stationary dimension triples. No general decision
procedure is attempted here: certificates are verified exactly, searched for
inside an explicit finite budget, and cheap necessary invariants (the
homology group at x = 1 and the nonzero part of the spectrum) separate
inequivalent pairs quickly. A failed search is reported as Unknown, never as
a proof of inequivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .graph import Graph, VertexClass, adjacency, classify_vertices
from .homology import h0_presentation
from .graded import dimension_triple
from .intlinalg import (FpAbelianGroup, IntMatrix, group_from_factors,
                        invariant_factors, mat_pow)


@dataclass(frozen=True)
class ShiftEquivalenceCertificate:
    """Witness (R, S, lag) for shift equivalence of two adjacency matrices."""

    r: IntMatrix
    s: IntMatrix
    lag: int

    def __post_init__(self):
        if self.lag < 1:
            raise ValueError("lag must be at least 1, got %d" % self.lag)

    def to_dict(self) -> dict:
        return {
            "R": self.r.to_decimal_rows(),
            "S": self.s.to_decimal_rows(),
            "lag": self.lag,
        }


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the certificate search; cap bounds positivity refinement."""

    max_lag: int
    entry_bound: int
    cap: int = 10

    def __post_init__(self):
        if self.max_lag < 1:
            raise ValueError("max_lag must be at least 1")
        if self.entry_bound < 0:
            raise ValueError("entry_bound must be nonnegative")
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")

    def to_dict(self) -> dict:
        return {"max_lag": self.max_lag, "entry_bound": self.entry_bound,
                "cap": self.cap}


def _require_square(a: IntMatrix, label: str):
    if a.nrows != a.ncols:
        raise ValueError("%s must be square, got %s x %s"
                         % (label, a.nrows, a.ncols))


def verify_shift_equivalence(a: IntMatrix, b: IntMatrix,
                             cert: ShiftEquivalenceCertificate) -> bool:
    """Exact check of the four shift-equivalence equations plus positivity."""
    _require_square(a, "A")
    _require_square(b, "B")
    n, m = a.nrows, b.nrows
    if cert.r.shape != (n, m):
        raise ValueError("R has shape %s x %s, expected %s x %s"
                         % (cert.r.nrows, cert.r.ncols, n, m))
    if cert.s.shape != (m, n):
        raise ValueError("S has shape %s x %s, expected %s x %s"
                         % (cert.s.nrows, cert.s.ncols, m, n))
    if not (cert.r.is_nonneg() and cert.s.is_nonneg()):
        return False
    if a @ cert.r != cert.r @ b:
        return False
    if b @ cert.s != cert.s @ a:
        return False
    return (cert.r @ cert.s == mat_pow(a, cert.lag)
            and cert.s @ cert.r == mat_pow(b, cert.lag))


def _colex_matrices(nrows: int, ncols: int, bound: int):
    """All matrices with entries in [0, bound], in colexicographic order of
    the row-major entry tuple (the last entry is the most significant)."""
    size = nrows * ncols
    for tup in product(range(bound + 1), repeat=size):
        flat = tup[::-1]
        yield IntMatrix.from_rows(
            [flat[i * ncols:(i + 1) * ncols] for i in range(nrows)],
            ncols)


def search_shift_equivalence(a: IntMatrix, b: IntMatrix, max_lag: int,
                             entry_bound: int):
    """First verifying certificate in deterministic order, or None.

    Order: lag ascending, then the concatenated (R entries, S entries)
    tuple in colexicographic order, which makes S the outer loop. Candidate
    lists are prefiltered by the lag-independent intertwining equations.
    None means the budget was exhausted, not that no certificate exists.
    """
    _require_square(a, "A")
    _require_square(b, "B")
    if max_lag < 1:
        raise ValueError("max_lag must be at least 1")
    if entry_bound < 0:
        raise ValueError("entry_bound must be nonnegative")
    n, m = a.nrows, b.nrows
    r_valid = [r for r in _colex_matrices(n, m, entry_bound)
               if a @ r == r @ b]
    s_valid = [s for s in _colex_matrices(m, n, entry_bound)
               if b @ s == s @ a]
    for lag in range(1, max_lag + 1):
        al = mat_pow(a, lag)
        bl = mat_pow(b, lag)
        for s in s_valid:
            for r in r_valid:
                if r @ s == al and s @ r == bl:
                    return ShiftEquivalenceCertificate(r=r, s=s, lag=lag)
    return None


def characteristic_polynomial(a: IntMatrix) -> tuple[int, ...]:
    """Monic characteristic polynomial det(tI - A), coefficients by
    descending degree, computed division-free over the integers except for
    the exact trace divisions of the Faddeev-LeVerrier recurrence."""
    _require_square(a, "A")
    n = a.nrows
    coeffs = [1]
    m = a
    for k in range(1, n + 1):
        tr = sum(m.entry(i, i) for i in range(n))
        if tr % k:
            raise ArithmeticError("trace %d not divisible by %d" % (tr, k))
        c = -(tr // k)
        coeffs.append(c)
        if k < n:
            shifted = IntMatrix.from_rows(
                [[m.entry(i, j) + (c if i == j else 0) for j in range(n)]
                 for i in range(n)], n)
            m = a @ shifted
    return tuple(coeffs)


def nonzero_spectrum_fingerprint(a: IntMatrix) -> tuple[int, ...]:
    """Characteristic polynomial with every factor of t divided out.

    Equal fingerprints are necessary for shift equivalence: the nonzero
    spectrum with multiplicities is preserved. Monic, so the canonical
    leading coefficient is 1; the zero-dimensional matrix gives (1,).
    """
    coeffs = list(characteristic_polynomial(a))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class GraphInvariants:
    """Order-independent invariants of one graph's edge shift."""

    h0_group: FpAbelianGroup
    specialization_factors: tuple[int, ...]
    spectrum: tuple[int, ...]
    triple_group: FpAbelianGroup

    def to_dict(self) -> dict:
        return {
            "h0_group": self.h0_group.to_dict(),
            "specialization_factors": [str(d) for d in
                                       self.specialization_factors],
            "spectrum": [str(c) for c in self.spectrum],
            "triple_group": self.triple_group.to_dict(),
        }


def graph_invariants(g: Graph) -> GraphInvariants:
    """Invariants entering the comparison pipeline.

    The homology group and the spectrum fingerprint are the two used to
    distinguish; the full invariant-factor list and the level-zero group of
    the dimension triple are reported for context only (their unit parts
    depend on the matrix size, so they cannot soundly separate shifts).
    """
    pres = h0_presentation(g)
    factors = invariant_factors(pres.relations)
    group = group_from_factors(pres.relations.nrows, factors)
    return GraphInvariants(
        h0_group=group,
        specialization_factors=factors,
        spectrum=nonzero_spectrum_fingerprint(adjacency(g)),
        triple_group=dimension_triple(g).group(),
    )


@dataclass(frozen=True)
class InvariantReport:
    """Outcome of comparing two edge shifts."""

    left: GraphInvariants
    right: GraphInvariants
    verdict: str
    distinguished_by: str | None
    certificate: ShiftEquivalenceCertificate | None
    budget: SearchBudget

    def to_dict(self) -> dict:
        return {
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
            "verdict": self.verdict,
            "distinguished_by": self.distinguished_by,
            "certificate": (self.certificate.to_dict()
                            if self.certificate else None),
            "budget": self.budget.to_dict(),
        }


def _require_sft(g: Graph, label: str):
    classes = classify_vertices(g)
    for v in g.vertices:
        if classes[v] is VertexClass.SINK:
            raise ValueError("%s: vertex %r is a sink; edge shifts need "
                             "sink-free graphs" % (label, v))
    for e in g.edges:
        if e.weight != 1:
            raise ValueError("%s: edge %r has weight %d; edge shifts need "
                             "all weights 1" % (label, e.eid, e.weight))


def eventual_conjugacy_verdict(g1: Graph, g2: Graph,
                               budget: SearchBudget) -> InvariantReport:
    """Three-stage comparison of two edge shifts.

    Cheap necessary invariants first: the nonzero-spectrum fingerprint, then
    the homology group; either mismatch settles the question negatively.
    Equal adjacency matrices settle it positively with the identity
    certificate (R = A, S = I, lag 1). Otherwise a bounded certificate
    search runs; exhausting the budget yields Unknown with the budget
    echoed, which decides nothing.
    """
    _require_sft(g1, "first graph")
    _require_sft(g2, "second graph")
    left = graph_invariants(g1)
    right = graph_invariants(g2)

    def report(verdict, distinguished_by=None, certificate=None):
        return InvariantReport(left=left, right=right, verdict=verdict,
                               distinguished_by=distinguished_by,
                               certificate=certificate, budget=budget)

    if left.spectrum != right.spectrum:
        return report("Distinguished", distinguished_by="spectrum")
    if left.h0_group != right.h0_group:
        return report("Distinguished", distinguished_by="h0")
    a = adjacency(g1)
    b = adjacency(g2)
    if a == b:
        ident = IntMatrix.identity(a.nrows)
        return report("EventuallyConjugate",
                      certificate=ShiftEquivalenceCertificate(r=a, s=ident,
                                                              lag=1))
    cert = search_shift_equivalence(a, b, budget.max_lag, budget.entry_bound)
    if cert is not None:
        return report("EventuallyConjugate", certificate=cert)
    return report("Unknown")
