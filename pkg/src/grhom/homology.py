"""Zeroth homology of the groupoid of a finite graph.

The group is presented on the free abelian group over the vertices, with one
relation column per regular vertex v:

    indicator(v) - sum over e in s^-1(v) of indicator(r(e))

For sink-free graphs the relation matrix is I - A^T. The module computes the
group in canonical form, canonical coordinates of classes, a sound bounded
positivity test, and an independent brute-force presentation on truncated
path generators used as an oracle for the vertex presentation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .graph import Graph, Path, enumerate_paths, path_range
from .intlinalg import (FpAbelianGroup, IntMatrix, cokernel, in_column_span,
                        kernel_basis, smith_normal_form)


class Verdict(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class H0Presentation:
    """Vertex-indexed presentation: ambient Z^vertices modulo the columns."""

    vertex_order: tuple[str, ...]
    regular_vertices: tuple[str, ...]
    relations: IntMatrix


def _require_positive_weights(g: Graph):
    for e in g.edges:
        if e.weight < 1:
            raise ValueError("edge %r has non-positive weight %d; "
                             "homology requires weights >= 1"
                             % (e.eid, e.weight))


def h0_presentation(g: Graph) -> H0Presentation:
    _require_positive_weights(g)
    n = len(g.vertices)
    regular = [v for v in g.vertices if g.out_edges(v)]
    cols = []
    for v in regular:
        col = [0] * n
        col[g.vertex_index(v)] += 1
        for e in g.out_edges(v):
            col[g.vertex_index(e.dst)] -= 1
        cols.append(col)
    rows = tuple(tuple(col[i] for col in cols) for i in range(n))
    return H0Presentation(vertex_order=g.vertices,
                          regular_vertices=tuple(regular),
                          relations=IntMatrix(rows, len(regular)))


def h0(g: Graph) -> FpAbelianGroup:
    return cokernel(h0_presentation(g).relations)


def h0_class(g: Graph, vec) -> tuple[int, ...]:
    """Canonical coordinates of a class: free coordinates, then residues.

    Two vectors get equal coordinates exactly when they differ by a relation
    combination. Free coordinates correspond to zero invariant factors of
    the relation matrix; residues are taken modulo factors larger than 1.
    """
    pres = h0_presentation(g)
    vec = tuple(int(x) for x in vec)
    if len(vec) != len(pres.vertex_order):
        raise ValueError("vector length %d does not match %d vertices"
                         % (len(vec), len(pres.vertex_order)))
    dec = smith_normal_form(pres.relations)
    y = dec.u.apply(vec)
    limit = min(pres.relations.nrows, pres.relations.ncols)
    free = []
    residues = []
    for i, yi in enumerate(y):
        d = dec.factors[i] if i < limit else 0
        if d == 0:
            free.append(yi)
        elif d > 1:
            residues.append(yi % d)
    return tuple(free) + tuple(residues)


def _cone_separation_certificate(relations: IntMatrix, vec) -> bool:
    """Sound proof that [vec] is outside the positive cone, if one is found.

    Looks for an entrywise-nonnegative integer functional that kills every
    relation column and is negative on vec; candidates are the Hermite basis
    vectors of the left kernel and their negations.
    """
    left = kernel_basis(relations.transpose())
    for row in left.rows:
        for cand in (row, tuple(-x for x in row)):
            if all(x >= 0 for x in cand) and \
                    sum(a * b for a, b in zip(cand, vec)) < 0:
                return True
    return False


def h0_is_positive(g: Graph, vec, cap: int) -> Verdict:
    """Bounded three-valued test for membership of [vec] in the cone.

    Positive verdicts always exhibit a nonnegative representative (the zero
    vector when the class is zero, otherwise one reached by breadth-first
    relation moves within cap dequeues). Negative requires both a Positive
    certificate for -vec and a cap-independent proof that [vec] itself is
    not in the cone, so verdicts never flip as cap grows.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    pres = h0_presentation(g)
    vec = tuple(int(x) for x in vec)
    if len(vec) != len(pres.vertex_order):
        raise ValueError("vector length %d does not match %d vertices"
                         % (len(vec), len(pres.vertex_order)))
    if in_column_span(pres.relations, vec):
        return Verdict.POSITIVE
    cols = [tuple(pres.relations.rows[i][j]
                  for i in range(pres.relations.nrows))
            for j in range(pres.relations.ncols)]

    def bfs(start) -> bool:
        if all(x >= 0 for x in start):
            return True
        seen = {start}
        queue = deque([start])
        dequeued = 0
        while queue and dequeued < cap:
            cur = queue.popleft()
            dequeued += 1
            for col in cols:
                for sgn in (1, -1):
                    nxt = tuple(a + sgn * b for a, b in zip(cur, col))
                    if nxt in seen:
                        continue
                    if all(x >= 0 for x in nxt):
                        return True
                    seen.add(nxt)
                    queue.append(nxt)
        return False

    if bfs(vec):
        return Verdict.POSITIVE
    neg = tuple(-x for x in vec)
    if bfs(neg) and _cone_separation_certificate(pres.relations, vec):
        return Verdict.NEGATIVE
    return Verdict.UNKNOWN


def h0_bruteforce_oracle(g: Graph, max_len: int) -> FpAbelianGroup:
    """Independent computation of the group from truncated path generators.

    Generators are all paths of length at most max_len. Relations: every
    projection of length below max_len with regular range expands one step,
    and every projection of positive length is identified with its range
    vertex. The result must agree with h0 for every max_len >= 1.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    _require_positive_weights(g)
    paths = enumerate_paths(g, max_len)
    index = {p: i for i, p in enumerate(paths)}
    n = len(paths)
    cols = []
    for p in paths:
        v = path_range(g, p)
        out = g.out_edges(v)
        if len(p.edges) < max_len and out:
            col = [0] * n
            col[index[p]] += 1
            for e in out:
                col[index[Path(source=p.source if p.edges else v,
                               edges=p.edges + (e.eid,))]] -= 1
            cols.append(col)
        if p.edges:
            col = [0] * n
            col[index[Path(source=v, edges=())]] += 1
            col[index[p]] -= 1
            cols.append(col)
    rows = tuple(tuple(col[i] for col in cols) for i in range(n))
    return cokernel(IntMatrix(rows, len(cols)))
