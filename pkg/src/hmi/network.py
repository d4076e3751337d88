"""Two-terminal networks: minimal cut and minimal path enumeration, the
cut/path ideals and their Alexander duality."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DomainError
from .ideal import SquareFreeIdeal, complex_of, make_ideal
from .simplicial import SimplicialComplex, alexander_dual

MAX_EDGES = 20


@dataclass(frozen=True)
class Network:
    """Connected undirected multigraph with edge ids 1..p and two
    distinguished terminals."""
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]   # (id, u, v)
    input: int
    output: int

    def __post_init__(self):
        nodes = set(self.nodes)
        if self.input == self.output:
            raise DomainError("input and output must differ")
        if self.input not in nodes or self.output not in nodes:
            raise DomainError("terminals must be nodes")
        ids = sorted(e[0] for e in self.edges)
        if ids != list(range(1, len(ids) + 1)):
            raise DomainError("edge ids must be dense 1..p")
        if len(ids) > MAX_EDGES:
            raise DomainError(f"at most {MAX_EDGES} edges supported")
        for _, u, v in self.edges:
            if u not in nodes or v not in nodes:
                raise DomainError("edge endpoint is not a node")
        if not self._connected():
            raise DomainError("network must be connected")

    @property
    def p(self):
        return len(self.edges)

    def _connected(self):
        if not self.nodes:
            return False
        adj = {n: set() for n in self.nodes}
        for _, u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == set(self.nodes)


def make_network(nodes: Iterable[int], edges, input: int,
                 output: int) -> Network:
    return Network(tuple(nodes), tuple(tuple(e) for e in edges),
                   input, output)


def _minimize_sets(sets):
    sets = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    keep = []
    for s in sets:
        if not any(k <= s for k in keep):
            keep.append(s)
    return keep


def minimal_paths(G: Network) -> list[frozenset[int]]:
    """Edge sets of simple input-output paths, minimalized; canonical
    (size, lexicographic) order."""
    incident: dict[int, list[tuple[int, int]]] = {n: [] for n in G.nodes}
    for eid, u, v in G.edges:
        incident[u].append((eid, v))
        incident[v].append((eid, u))
    found = []

    def walk(node, used_nodes, used_edges):
        if node == G.output:
            found.append(frozenset(used_edges))
            return
        for eid, other in incident[node]:
            if other in used_nodes:
                continue
            walk(other, used_nodes | {other}, used_edges | {eid})

    walk(G.input, {G.input}, frozenset())
    paths = _minimize_sets(found)
    if not paths:
        raise DomainError("input and output are disconnected")
    return paths


def minimal_cuts(G: Network) -> list[frozenset[int]]:
    """Inclusion-minimal edge sets whose removal disconnects the terminals:
    crossing sets of input/output vertex bipartitions, minimalized."""
    minimal_paths(G)      # raises if terminals are already disconnected
    free = [n for n in G.nodes if n not in (G.input, G.output)]
    cuts = []
    for bits in range(1 << len(free)):
        side = {G.input} | {free[i] for i in range(len(free))
                            if bits >> i & 1}
        crossing = frozenset(eid for eid, u, v in G.edges
                             if (u in side) != (v in side))
        cuts.append(crossing)
    return _minimize_sets(cuts)


def cut_ideal(G: Network) -> SquareFreeIdeal:
    return make_ideal(G.p, [sorted(c) for c in minimal_cuts(G)])


def path_ideal(G: Network) -> SquareFreeIdeal:
    return make_ideal(G.p, [sorted(c) for c in minimal_paths(G)])


@dataclass(frozen=True)
class DualityReport:
    cut_facets_are_path_complements: bool
    path_facets_are_cut_complements: bool
    dual_of_cuts_is_paths: bool
    involution_holds: bool

    @property
    def all_pass(self):
        return (self.cut_facets_are_path_complements
                and self.path_facets_are_cut_complements
                and self.dual_of_cuts_is_paths and self.involution_holds)


def verify_cut_path_duality(G: Network) -> DualityReport:
    """Checks the cut/path Alexander duality on a concrete network."""
    all_edges = frozenset(range(1, G.p + 1))
    cut_complex = complex_of(cut_ideal(G))
    path_complex = complex_of(path_ideal(G))
    cut_facets = set(cut_complex.facet_sets())
    path_facets = set(path_complex.facet_sets())
    path_complements = {all_edges - s for s in minimal_paths(G)}
    cut_complements = {all_edges - s for s in minimal_cuts(G)}
    dual = alexander_dual(cut_complex)
    return DualityReport(
        cut_facets_are_path_complements=cut_facets == path_complements,
        path_facets_are_cut_complements=path_facets == cut_complements,
        dual_of_cuts_is_paths=set(dual.facet_sets()) == path_facets,
        involution_holds=(alexander_dual(dual) == cut_complex),
    )


def network_from_json(obj: Mapping) -> Network:
    try:
        nodes = [int(n) for n in obj["nodes"]]
        edges = [(int(e["id"]), int(e["u"]), int(e["v"]))
                 for e in obj["edges"]]
        return make_network(nodes, edges, int(obj["input"]),
                            int(obj["output"]))
    except (KeyError, TypeError, ValueError):
        raise DomainError(
            "network JSON needs 'nodes', 'edges' [{id,u,v}], 'input', "
            "'output'") from None
