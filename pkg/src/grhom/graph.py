"""Finite directed multigraphs with integer edge weights.

Graphs are loaded from a small JSON schema: a list of vertex names and a
list of edges with an id, a source, a target and an optional integer weight
(default 1). Vertex order is the file order and is preserved everywhere;
matrices and reports are indexed by it. The module also builds the staged
covering of a weighted graph over a finite stage window and enumerates
finite paths in a deterministic order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .intlinalg import IntMatrix, mat_pow


class GraphFormatError(ValueError):
    """Raised for malformed graph input; carries the offending identifier."""

    def __init__(self, message, offender=None):
        super().__init__(message)
        self.offender = offender


class VertexClass(Enum):
    REGULAR = "Regular"
    SINK = "Sink"


@dataclass(frozen=True)
class Edge:
    eid: str
    src: str
    dst: str
    weight: int = 1


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def _vindex(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _edge_by_id(self):
        return {e.eid: e for e in self.edges}

    @cached_property
    def _out(self):
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    def vertex_index(self, v):
        try:
            return self._vindex[v]
        except KeyError:
            raise ValueError("unknown vertex %r" % v) from None

    def edge(self, eid):
        try:
            return self._edge_by_id[eid]
        except KeyError:
            raise ValueError("unknown edge %r" % eid) from None

    def out_edges(self, v):
        if v not in self._vindex:
            raise ValueError("unknown vertex %r" % v)
        return self._out[v]

    def is_regular(self, v):
        return bool(self.out_edges(v))

    def max_weight(self):
        return max((e.weight for e in self.edges), default=1)


@dataclass(frozen=True)
class Path:
    """A finite path: an edge-id sequence, anchored at ``source`` when empty.

    For nonempty paths ``source`` equals the source of the first edge, so the
    pair (source, edges) is a canonical key for path-indexed maps.
    """

    source: str
    edges: tuple[str, ...]

    def __len__(self):
        return len(self.edges)


def make_path(g: Graph, edges, at=None) -> Path:
    """Validated path constructor; ``at`` anchors the empty path."""
    edges = tuple(edges)
    if not edges:
        if at is None:
            raise ValueError("an empty path needs an anchor vertex")
        g.vertex_index(at)
        return Path(source=at, edges=())
    here = None
    for eid in edges:
        e = g.edge(eid)
        if here is not None and e.src != here:
            raise ValueError("edges do not compose at %r" % (eid,))
        here = e.dst
    src = g.edge(edges[0]).src
    if at is not None and at != src:
        raise ValueError("anchor %r does not match path source %r" % (at, src))
    return Path(source=src, edges=edges)


def path_range(g: Graph, p: Path) -> str:
    return g.edge(p.edges[-1]).dst if p.edges else p.source


def path_weight(g: Graph, p: Path) -> int:
    return sum(g.edge(eid).weight for eid in p.edges)


def _require(cond, message, offender=None):
    if not cond:
        raise GraphFormatError(message, offender)


def graph_from_dict(obj) -> Graph:
    _require(isinstance(obj, dict), "graph document must be a JSON object")
    _require("vertices" in obj, "missing 'vertices'")
    _require("edges" in obj, "missing 'edges'")
    raw_vs, raw_es = obj["vertices"], obj["edges"]
    _require(isinstance(raw_vs, list), "'vertices' must be a list")
    _require(isinstance(raw_es, list), "'edges' must be a list")
    seen = set()
    for v in raw_vs:
        _require(isinstance(v, str), "vertex ids must be strings", v)
        _require(v not in seen, "duplicate vertex id %r" % v, v)
        seen.add(v)
    vertices = tuple(raw_vs)
    vset = seen
    edges = []
    eids = set()
    for item in raw_es:
        _require(isinstance(item, dict), "each edge must be an object")
        for key in ("id", "src", "dst"):
            _require(key in item, "edge missing %r" % key,
                     item.get("id"))
            _require(isinstance(item[key], str),
                     "edge field %r must be a string" % key, item.get("id"))
        eid = item["id"]
        _require(eid not in eids, "duplicate edge id %r" % eid, eid)
        eids.add(eid)
        _require(item["src"] in vset,
                 "edge %r has dangling source %r" % (eid, item["src"]), eid)
        _require(item["dst"] in vset,
                 "edge %r has dangling target %r" % (eid, item["dst"]), eid)
        weight = item.get("weight", 1)
        _require(isinstance(weight, int) and not isinstance(weight, bool),
                 "edge %r has non-integer weight %r" % (eid, weight), eid)
        edges.append(Edge(eid=eid, src=item["src"], dst=item["dst"],
                          weight=weight))
    return Graph(vertices=vertices, edges=tuple(edges))


def parse_graph(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError("malformed JSON: %s" % exc) from exc
    return graph_from_dict(obj)


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def graph_to_dict(g: Graph) -> dict:
    """Canonical JSON form: input order preserved, weights always explicit."""
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.eid, "src": e.src, "dst": e.dst, "weight": e.weight}
                  for e in g.edges],
    }


def serialize_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def classify_vertices(g: Graph) -> dict[str, VertexClass]:
    return {v: (VertexClass.REGULAR if g.out_edges(v) else VertexClass.SINK)
            for v in g.vertices}


def adjacency(g: Graph) -> IntMatrix:
    """A[u][v] = number of edges u -> v, rows and columns in vertex order."""
    n = len(g.vertices)
    rows = [[0] * n for _ in range(n)]
    for e in g.edges:
        rows[g.vertex_index(e.src)][g.vertex_index(e.dst)] += 1
    return IntMatrix.from_rows(rows, n)


@dataclass(frozen=True)
class StagedEdge:
    eid: str
    stage: int
    src: tuple[str, int]
    dst: tuple[str, int]


@dataclass(frozen=True)
class StagedGraph:
    """Stage-indexed covering of a weighted graph over a finite window.

    A copy (v, n) of each vertex exists for every stage n in the window; the
    stage-n copy of edge e runs from (src(e), n) to (dst(e), n - weight(e))
    and is materialized exactly when both endpoint stages lie in the window.
    """

    base: Graph
    window: tuple[int, int]
    vertices: tuple[tuple[str, int], ...]
    edges: tuple[StagedEdge, ...]

    def restrict(self, n_min, n_max):
        return covering_graph(self.base, (n_min, n_max))

    def to_graph(self) -> Graph:
        """Flatten to an ordinary Graph with 'name@stage' identifiers."""
        return Graph(
            vertices=tuple("%s@%d" % vn for vn in self.vertices),
            edges=tuple(Edge(eid="%s@%d" % (e.eid, e.stage),
                             src="%s@%d" % e.src,
                             dst="%s@%d" % e.dst,
                             weight=self.base.edge(e.eid).weight)
                        for e in self.edges),
        )


def covering_graph(g: Graph, window) -> StagedGraph:
    n_min, n_max = int(window[0]), int(window[1])
    if n_min > n_max:
        raise ValueError("empty window: [%d, %d]" % (n_min, n_max))
    vertices = tuple((v, n)
                     for n in range(n_min, n_max + 1)
                     for v in g.vertices)
    edges = []
    for n in range(n_min, n_max + 1):
        for e in g.edges:
            lower = n - e.weight
            if n_min <= lower <= n_max:
                edges.append(StagedEdge(eid=e.eid, stage=n,
                                        src=(e.src, n), dst=(e.dst, lower)))
    return StagedGraph(base=g, window=(n_min, n_max),
                       vertices=vertices, edges=tuple(edges))


def enumerate_paths(g: Graph, max_len: int) -> list[Path]:
    """All paths of length 0..max_len.

    Length-0 paths come first in vertex order; each longer level is sorted
    lexicographically by its edge-id sequence.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    out = [Path(source=v, edges=()) for v in g.vertices]
    level = out[:]
    for _ in range(max_len):
        nxt = []
        for p in level:
            for e in g.out_edges(path_range(g, p)):
                nxt.append(Path(source=p.source, edges=p.edges + (e.eid,)))
        nxt.sort(key=lambda p: p.edges)
        out.extend(nxt)
        level = nxt
    return out


def count_paths_by_adjacency(g: Graph, max_len: int) -> int:
    """Independent path count: sum of all entries of A^0 + ... + A^max_len."""
    a = adjacency(g)
    total = 0
    for k in range(max_len + 1):
        p = mat_pow(a, k)
        total += sum(x for row in p.rows for x in row)
    return total
