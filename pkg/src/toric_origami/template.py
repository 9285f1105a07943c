"""Origami templates: polytope-labelled multigraphs glued along fold facets."""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import InvalidTemplate, PolytopeError
from .lattice import as_int_matrix
from .polytope import DelzantPolytope, build_polytope


@dataclass(frozen=True)
class EdgeEnd:
    vertex: str
    facet: int


@dataclass(frozen=True)
class Edge:
    id: str
    ends: Tuple[EdgeEnd, ...]

    @property
    def dangling(self) -> bool:
        return len(self.ends) == 1


@dataclass(frozen=True)
class Issue:
    kind: str
    message: str
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": self.kind, "message": self.message, "details": self.details}


@dataclass
class ValidationReport:
    issues: List[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, kind, message, **details):
        self.issues.append(Issue(kind, message, details))

    def to_dict(self):
        return {"valid": self.ok, "issues": [i.to_dict() for i in self.issues]}


@dataclass(frozen=True)
class GraphStats:
    L: int
    R: int
    cycle_rank: int
    acyclic: bool
    bipartite: bool
    dangling_count: int


@dataclass(frozen=True)
class OrbitFacetClass:
    members: Tuple[Tuple[str, int], ...]
    normal: Tuple[int, ...]
    offset: object


@dataclass(frozen=True)
class OrbitSpaceSummary:
    facet_classes: Tuple[OrbitFacetClass, ...]
    normal_matrix: np.ndarray
    fixed_point_count: int


class OrigamiTemplate:
    """A validated origami template (possibly with dangling edges).

    Use :func:`build_template` or :func:`validate_template` to construct one.
    """

    def __init__(self, dim: int, polytopes: Mapping[str, DelzantPolytope],
                 edges: Sequence[Edge]):
        self.dim = dim
        self.polytopes: Dict[str, DelzantPolytope] = dict(polytopes)
        self.edges: Tuple[Edge, ...] = tuple(edges)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(self.polytopes)

    @property
    def ordinary_edges(self) -> Tuple[Edge, ...]:
        return tuple(e for e in self.edges if not e.dangling)

    @property
    def dangling_edges(self) -> Tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.dangling)

    @property
    def L(self) -> int:
        return len(self.polytopes)

    @property
    def R(self) -> int:
        return len(self.ordinary_edges)

    @property
    def cycle_rank(self) -> int:
        return 1 + self.R - self.L

    def fold_facets(self, v: str) -> Tuple[int, ...]:
        """Facets of ``v`` glued by ordinary edges, in increasing order."""
        return tuple(sorted(end.facet for e in self.ordinary_edges for end in e.ends
                            if end.vertex == v))

    def boundary_facets(self, v: str) -> Tuple[int, ...]:
        return tuple(sorted(e.ends[0].facet for e in self.dangling_edges
                            if e.ends[0].vertex == v))

    def edge_facets(self, v: str) -> Tuple[int, ...]:
        return tuple(sorted(self.fold_facets(v) + self.boundary_facets(v)))

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.polytopes)
        for e in self.ordinary_edges:
            g.add_edge(e.ends[0].vertex, e.ends[1].vertex, key=e.id)
        return g

    def __repr__(self):
        return (f"OrigamiTemplate(dim={self.dim}, L={self.L}, R={self.R}, "
                f"dangling={len(self.dangling_edges)})")


def _check_edges(dim, polytopes, edges, report):
    """Structural and geometric checks of the edge data."""
    used = {}
    for e in edges:
        if len(e.ends) not in (1, 2):
            report.add("Schema", f"edge {e.id} must have 1 or 2 ends", edge=e.id)
            continue
        for end in e.ends:
            p = polytopes.get(end.vertex)
            if p is None:
                report.add("Schema", f"edge {e.id} refers to unknown polytope {end.vertex!r}",
                           edge=e.id)
            elif not 0 <= end.facet < p.n_facets:
                report.add("Schema", f"edge {e.id}: facet {end.facet} out of range for "
                           f"polytope {end.vertex!r}", edge=e.id)
    if not report.ok:
        return

    for e in edges:
        for end in e.ends:
            key = (end.vertex, end.facet)
            if key in used:
                report.add("FacetReused", f"facet {end.facet} of {end.vertex!r} is used by "
                           f"edges {used[key]} and {e.id}", vertex=end.vertex,
                           facet=end.facet, edges=[used[key], e.id])
            else:
                used[key] = e.id
        if e.dangling:
            continue
        (u, a), (w, b) = ((x.vertex, x.facet) for x in e.ends)
        if u == w:
            report.add("LoopEdge", f"edge {e.id} joins {u!r} to itself", edge=e.id)
            continue
        pu, pw = polytopes[u], polytopes[w]
        hu, hw = pu.halfspaces[a], pw.halfspaces[b]
        same_plane = hu == hw or (tuple(-x for x in hu[0]), -hu[1]) == hw
        if not same_plane:
            report.add("FacetMismatch", f"edge {e.id}: facet {a} of {u!r} and facet {b} of "
                       f"{w!r} lie on different hyperplanes", edge=e.id)
        elif hu != hw or pu.local_fan_at_facet(a) != pw.local_fan_at_facet(b):
            report.add("LocalDisagreement", f"edge {e.id}: polytopes {u!r} and {w!r} do not "
                       f"agree near the shared facet", edge=e.id)

    for v, p in polytopes.items():
        incident = [(e.id, end.facet) for e in edges for end in e.ends if end.vertex == v]
        for i in range(len(incident)):
            for j in range(i + 1, len(incident)):
                (e1, f1), (e2, f2) = incident[i], incident[j]
                if f1 != f2 and p.intersects((f1, f2)):
                    report.add("FoldFacetsIntersect", f"polytope {v!r}: fold facets of edges "
                               f"{e1} and {e2} intersect", vertex=v, edges=[e1, e2])


def check_template(dim: int, polytopes: Mapping[str, DelzantPolytope],
                   edges: Sequence[Edge]) -> ValidationReport:
    report = ValidationReport()
    for v, p in polytopes.items():
        if p.dim != dim:
            report.add("Schema", f"polytope {v!r} has dimension {p.dim}, expected {dim}",
                       vertex=v)
    if not polytopes:
        report.add("Schema", "template has no polytopes")
    if not report.ok:
        return report
    _check_edges(dim, polytopes, edges, report)
    if report.ok:
        t = OrigamiTemplate(dim, polytopes, edges)
        if not nx.is_connected(t.graph()):
            report.add("Disconnected", "template graph is not connected")
    return report


def build_template(dim: int, polytopes: Mapping[str, DelzantPolytope],
                   edges: Sequence[Edge]) -> OrigamiTemplate:
    """Validate already-built polytopes and edges into a template."""
    report = check_template(dim, polytopes, edges)
    if not report.ok:
        raise InvalidTemplate(report)
    return OrigamiTemplate(dim, polytopes, edges)


def validate_template(raw: Mapping) -> OrigamiTemplate:
    """Build a template from raw data in the template-file layout.

    ``raw`` has keys ``dimension``, ``polytopes`` (each with ``id``,
    ``normals``, ``offsets``) and ``edges`` (each with ``id`` and ``ends``, a
    list of one or two ``{"polytope": id, "facet": index}`` records).
    Raises :class:`InvalidTemplate` carrying a full report.
    """
    report = ValidationReport()
    dim = int(raw["dimension"])
    polytopes = {}
    for entry in raw["polytopes"]:
        pid = str(entry["id"])
        try:
            polytopes[pid] = build_polytope(list(zip(entry["normals"], entry["offsets"])))
        except PolytopeError as exc:
            report.add("InvalidPolytope", f"polytope {pid!r}: {type(exc).__name__}: {exc}",
                       vertex=pid, error=type(exc).__name__)
    if not report.ok:
        raise InvalidTemplate(report)
    edges = [Edge(str(e["id"]), tuple(EdgeEnd(str(x["polytope"]), int(x["facet"]))
                                      for x in e["ends"]))
             for e in raw.get("edges", [])]
    return build_template(dim, polytopes, edges)


def graph_stats(t: OrigamiTemplate) -> GraphStats:
    g = t.graph()
    ell = t.cycle_rank
    return GraphStats(L=t.L, R=t.R, cycle_rank=ell, acyclic=ell == 0,
                      bipartite=nx.is_bipartite(g), dangling_count=len(t.dangling_edges))


def orbit_space_summary(t: OrigamiTemplate) -> OrbitSpaceSummary:
    """Facets of the orbit space, their normals, and the fixed-point count."""
    order = {v: k for k, v in enumerate(t.vertices)}
    parent = {}
    for v, p in t.polytopes.items():
        taken = set(t.edge_facets(v))
        for i in range(p.n_facets):
            if i not in taken:
                parent[(v, i)] = (v, i)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in t.ordinary_edges:
        (u, a), (w, b) = ((x.vertex, x.facet) for x in e.ends)
        pu, pw = t.polytopes[u], t.polytopes[w]
        lookup = {pw.halfspaces[j]: j for j in pw.adjacency[b]}
        for i in pu.adjacency[a]:
            j = lookup[pu.halfspaces[i]]
            ru, rw = find((u, i)), find((w, j))
            if ru != rw:
                parent[max(ru, rw, key=lambda x: (order[x[0]], x[1]))] = \
                    min(ru, rw, key=lambda x: (order[x[0]], x[1]))

    classes = {}
    for key in parent:
        classes.setdefault(find(key), []).append(key)
    out = []
    for root in sorted(classes, key=lambda x: (order[x[0]], x[1])):
        members = tuple(sorted(classes[root], key=lambda x: (order[x[0]], x[1])))
        hs = t.polytopes[root[0]].halfspaces[root[1]]
        out.append(OrbitFacetClass(members, hs[0], hs[1]))

    n = t.dim
    normals = as_int_matrix([[c.normal[k] for c in out] for k in range(n)], n, len(out))
    fixed = 0
    for v, p in t.polytopes.items():
        taken = set(t.edge_facets(v))
        fixed += sum(1 for fs in p.vertex_facets if not fs & taken)
    return OrbitSpaceSummary(tuple(out), normals, fixed)
