"""Abstract simplicial complexes over a finite vertex set.

A complex is stored by its facets (the antichain of maximal faces) as bit
masks over vertex positions; the complex itself is the downward closure of
the facets.  Vertices carry integer labels, by default 1..p, so that
marginal complexes can live on a sub-ring of variables without relabelling.

Both the void complex (no faces at all, ``facets == ()``) and the empty
complex (only the empty face) are representable; ``minimal_nonfaces`` of the
void complex is ``[frozenset()]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError
from .graphs import Graph, make_graph, max_clique_masks, adjacency_masks

MAX_VERTICES = 64


@dataclass(frozen=True)
class SimplicialComplex:
    p: int
    facets: tuple[int, ...]                 # bit masks, sorted
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.p + 1)))
        if len(self.labels) != self.p:
            raise DomainError("label count does not match vertex count")

    def vertices_of(self, mask: int) -> frozenset[int]:
        return frozenset(self.labels[i] for i in range(self.p)
                         if mask >> i & 1)

    def facet_sets(self) -> list[frozenset[int]]:
        return [self.vertices_of(m) for m in self.facets]

    def mask_of(self, vertices: Iterable[int]) -> int:
        pos = {lbl: i for i, lbl in enumerate(self.labels)}
        mask = 0
        for v in vertices:
            if v not in pos:
                raise DomainError(f"vertex {v} out of range")
            mask |= 1 << pos[v]
        return mask

    def full_mask(self) -> int:
        return (1 << self.p) - 1


def _sort_key(mask: int):
    return (mask.bit_count(), mask)


def _antichain(masks: Iterable[int]) -> tuple[int, ...]:
    """Keep the maximal masks only."""
    masks = sorted(set(masks), key=lambda m: m.bit_count(), reverse=True)
    keep: list[int] = []
    for m in masks:
        if not any(m & k == m for k in keep):
            keep.append(m)
    return tuple(sorted(keep, key=_sort_key))


def _minimize(masks: Iterable[int]) -> tuple[int, ...]:
    """Keep the minimal masks only."""
    masks = sorted(set(masks), key=lambda m: m.bit_count())
    keep: list[int] = []
    for m in masks:
        if not any(m & k == k for k in keep):
            keep.append(m)
    return tuple(sorted(keep, key=_sort_key))


def minimal_transversals(edge_masks: Iterable[int], p: int) -> tuple[int, ...]:
    """Inclusion-minimal hitting sets of a family of nonempty masks
    (Berge's sequential algorithm).  The empty family has transversal {0}."""
    trans = [0]
    for e in edge_masks:
        hit = [t for t in trans if t & e]
        missed = [t for t in trans if not (t & e)]
        grown = []
        probe = e
        while probe:
            v = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            grown.extend(t | (1 << v) for t in missed)
        trans = list(_minimize(hit + grown))
    return tuple(sorted(trans, key=_sort_key))


def make_complex(p: int, faces: Iterable[Iterable[int]],
                 labels=None) -> SimplicialComplex:
    """Downward closure of the given faces; facets are the maximal inputs."""
    if p < 1:
        raise DomainError("vertex count must be at least 1")
    if p > MAX_VERTICES:
        raise DomainError(f"at most {MAX_VERTICES} vertices supported")
    labels = tuple(labels) if labels is not None else tuple(range(1, p + 1))
    shell = SimplicialComplex(p, (), labels)
    masks = [shell.mask_of(f) for f in faces]
    return SimplicialComplex(p, _antichain(masks), labels)


def is_face(S: SimplicialComplex, J: Iterable[int]) -> bool:
    mask = S.mask_of(J)
    return any(mask & f == mask for f in S.facets)


def minimal_nonface_masks(S: SimplicialComplex) -> tuple[int, ...]:
    # K is a non-face iff K meets the complement of every facet, so the
    # minimal non-faces are the minimal transversals of those complements.
    if not S.facets:
        return (0,)                     # void complex: the empty set itself
    full = S.full_mask()
    complements = [full & ~f for f in S.facets]
    if any(c == 0 for c in complements):
        return ()                       # full simplex: no non-faces
    return minimal_transversals(complements, S.p)


def minimal_nonfaces(S: SimplicialComplex) -> list[frozenset[int]]:
    """The inclusion-minimal index sets that are not faces of S."""
    out = [S.vertices_of(m) for m in minimal_nonface_masks(S)]
    return sorted(out, key=lambda f: (len(f), sorted(f)))


def alexander_dual(S: SimplicialComplex) -> SimplicialComplex:
    """S* = {complement of J : J not a face of S}; its facets are the
    complements of the minimal non-faces.  An involution."""
    full = S.full_mask()
    facets = [full & ~m for m in minimal_nonface_masks(S)]
    return SimplicialComplex(S.p, _antichain(facets), S.labels)


def one_skeleton(S: SimplicialComplex) -> Graph:
    edges = set()
    for f in S.facet_sets():
        verts = sorted(f)
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                edges.add((verts[i], verts[j]))
    return make_graph(S.p, edges, S.labels)


def flag_complex(graph: Graph) -> SimplicialComplex:
    """Clique complex of a graph."""
    adj = adjacency_masks(graph)
    cliques = max_clique_masks(adj, graph.p)
    return SimplicialComplex(graph.p, _antichain(cliques), graph.labels)


def complex_to_json(S: SimplicialComplex) -> dict:
    obj = {"p": S.p, "facets": [sorted(f) for f in S.facet_sets()]}
    if S.labels != tuple(range(1, S.p + 1)):
        obj["labels"] = list(S.labels)
    return obj


def complex_from_json(obj: dict) -> SimplicialComplex:
    try:
        p = int(obj["p"])
        facets = obj["facets"]
    except (KeyError, TypeError, ValueError):
        raise DomainError("complex JSON needs integer 'p' and 'facets'") \
            from None
    return make_complex(p, facets, labels=obj.get("labels"))
