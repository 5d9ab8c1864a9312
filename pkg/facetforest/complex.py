"""Simplicial complexes described by their facet sets.

Vertices are named; internally every vertex set is a bitmask over an ordered
universe of names, which keeps subset tests and enumeration cheap. Complexes are
immutable and always hold an antichain of facets.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import get_settings
from .exceptions import DomainError, MalformedInputError, NotFoundError, ResourceLimitError
from .util import bits, maximal_masks, popcount, submasks

Universe = Tuple[str, ...]


@lru_cache(maxsize=1024)
def _index(universe: Universe) -> Dict[str, int]:
    return {name: position for position, name in enumerate(universe)}


@dataclass(frozen=True)
class VertexSet:
    """A set of vertices of ``universe``; bit ``i`` of ``mask`` stands for ``universe[i]``."""

    universe: Universe
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.universe):
            raise MalformedInputError(
                f"Vertex mask {self.mask:b} does not fit a universe of {len(self.universe)}"
            )

    @classmethod
    def from_names(cls, universe: Sequence[str], names: Iterable[str]) -> "VertexSet":
        universe = tuple(universe)
        index = _index(universe)
        mask = 0
        for name in names:
            if name not in index:
                raise NotFoundError(f"Vertex '{name}' is not in the universe {list(universe)}")
            mask |= 1 << index[name]
        return cls(universe, mask)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.universe[i] for i in bits(self.mask))

    @property
    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return (popcount(self.mask), self.names)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, vertex: Union[str, int]) -> bool:
        if isinstance(vertex, str):
            position = _index(self.universe).get(vertex)
            return position is not None and bool(self.mask >> position & 1)
        return bool(self.mask >> vertex & 1)

    def _check_universe(self, other: "VertexSet"):
        if other.universe != self.universe:
            raise MalformedInputError("Vertex sets live over different universes")

    def issubset(self, other: "VertexSet") -> bool:
        self._check_universe(other)
        return self.mask & other.mask == self.mask

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check_universe(other)
        return VertexSet(self.universe, self.mask & other.mask)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check_universe(other)
        return VertexSet(self.universe, self.mask | other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check_universe(other)
        return VertexSet(self.universe, self.mask & ~other.mask)

    def complement(self) -> "VertexSet":
        return VertexSet(self.universe, ((1 << len(self.universe)) - 1) & ~self.mask)

    def __str__(self) -> str:
        return "{" + ",".join(self.names) + "}"


def reindex(mask: int, source: Universe, target: Universe) -> int:
    """Move ``mask`` from ``source`` to ``target``, dropping vertices absent from ``target``."""
    index = _index(target)
    result = 0
    for position in bits(mask):
        new_position = index.get(source[position])
        if new_position is not None:
            result |= 1 << new_position
    return result


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex given by its facets over a universe of vertex names.

    The universe plays the role of the variables of the polynomial ring; a name
    that lies in no facet is a ring variable outside the complex. The void complex
    (no faces at all) has no facets, while the complex ``{∅}`` has the single
    facet ``∅``. Use ``normalize`` to build a complex from an arbitrary facet list.
    """

    universe: Universe
    facets: Tuple[VertexSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        if len(set(self.universe)) != len(self.universe):
            raise MalformedInputError(f"Duplicate vertex names in {list(self.universe)}")
        for facet in self.facets:
            if facet.universe != self.universe:
                raise MalformedInputError(f"Facet {facet} is not over {list(self.universe)}")
        masks = [facet.mask for facet in self.facets]
        if len(set(masks)) != len(masks) or len(maximal_masks(masks)) != len(masks):
            raise MalformedInputError("Facets must form an antichain; use normalize()")
        object.__setattr__(
            self, "facets", tuple(sorted(self.facets, key=lambda facet: facet.sort_key))
        )

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        return tuple(facet.mask for facet in self.facets)

    @property
    def vertices(self) -> VertexSet:
        """Vertices lying in some facet."""
        union = 0
        for mask in self.masks:
            union |= mask
        return VertexSet(self.universe, union)

    @property
    def is_void(self) -> bool:
        return not self.facets

    def facet_names(self) -> List[List[str]]:
        return [list(facet.names) for facet in self.facets]

    def vertex_set(self, names: Iterable[str]) -> VertexSet:
        return VertexSet.from_names(self.universe, names)

    def __len__(self) -> int:
        return len(self.facets)

    def __str__(self) -> str:
        return "<" + ",".join(str(facet) for facet in self.facets) + ">"


FacetLike = Union[VertexSet, Iterable[str]]


def _as_vertex_set(delta: SimplicialComplex, face: FacetLike) -> VertexSet:
    if isinstance(face, VertexSet):
        if face.universe != delta.universe:
            return VertexSet.from_names(delta.universe, face.names)
        return face
    return VertexSet.from_names(delta.universe, face)


def from_masks(universe: Sequence[str], masks: Iterable[int]) -> SimplicialComplex:
    """Complex over ``universe`` whose facets are the maximal elements of ``masks``."""
    universe = tuple(universe)
    return SimplicialComplex(universe, tuple(VertexSet(universe, m) for m in maximal_masks(masks)))


def normalize(
    facets: Iterable[VertexSet], universe: Optional[Sequence[str]] = None
) -> SimplicialComplex:
    """Keep the inclusion-maximal members of ``facets``.

    Duplicates and sets contained in other sets are dropped; the result does not
    depend on the order of ``facets`` and normalizing twice changes nothing.
    """
    facets = list(facets)
    if universe is None:
        universe = facets[0].universe if facets else ()
    universe = tuple(universe)
    for facet in facets:
        if facet.universe != universe:
            raise MalformedInputError(
                f"Facet {facet} is over {list(facet.universe)}, expected {list(universe)}"
            )
    return from_masks(universe, (facet.mask for facet in facets))


def from_names(
    facets: Iterable[Iterable[str]], universe: Optional[Sequence[str]] = None
) -> SimplicialComplex:
    """Build a complex from facets written as vertex names.

    Without an explicit ``universe`` the vertices are ordered by first appearance.
    """
    facets = [list(facet) for facet in facets]
    if universe is None:
        seen: Dict[str, None] = {}
        for facet in facets:
            for name in facet:
                seen.setdefault(name, None)
        universe = tuple(seen)
    universe = tuple(universe)
    return normalize([VertexSet.from_names(universe, facet) for facet in facets], universe)


def dim(delta: SimplicialComplex) -> int:
    return max((popcount(mask) - 1 for mask in delta.masks), default=-1)


def is_pure(delta: SimplicialComplex) -> bool:
    return len({popcount(mask) for mask in delta.masks}) <= 1


def facet_graph(delta: SimplicialComplex) -> nx.Graph:
    """Graph on facet positions; two facets are adjacent when they share a vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(delta.masks)))
    holders: Dict[int, List[int]] = {}
    for position, mask in enumerate(delta.masks):
        for vertex in bits(mask):
            holders.setdefault(vertex, []).append(position)
    for positions in holders.values():
        nx.add_path(graph, positions)
    return graph


def connected_components(delta: SimplicialComplex) -> List[SimplicialComplex]:
    """Split the facets into vertex-connected groups.

    Each component is returned over the sub-universe of its own vertices, and
    components are listed by their first vertex in the parent universe.
    """
    components = []
    for positions in nx.connected_components(facet_graph(delta)):
        masks = [delta.masks[p] for p in sorted(positions)]
        union = 0
        for mask in masks:
            union |= mask
        universe = tuple(delta.universe[v] for v in bits(union))
        moved = (reindex(mask, delta.universe, universe) for mask in masks)
        components.append((union & -union, from_masks(universe, moved)))
    return [component for _, component in sorted(components, key=lambda item: item[0])]


def is_connected(delta: SimplicialComplex) -> bool:
    return len(connected_components(delta)) == 1


def subcomplex(delta: SimplicialComplex, positions: Iterable[int]) -> SimplicialComplex:
    """The subcomplex keeping the facets at ``positions`` (same universe)."""
    return SimplicialComplex(delta.universe, tuple(delta.facets[p] for p in positions))


def subcomplexes(
    delta: SimplicialComplex, limit: Optional[int] = None
) -> Iterator[SimplicialComplex]:
    """Every nonempty subcomplex, smaller facet subsets first."""
    limit = get_settings().max_subcomplex_facets if limit is None else limit
    count = len(delta.facets)
    if count > limit:
        raise ResourceLimitError(
            f"Complex has {count} facets; subcomplex enumeration is capped at {limit}"
        )
    for size in range(1, count + 1):
        for positions in combinations(range(count), size):
            yield subcomplex(delta, positions)


def facet_position(delta: SimplicialComplex, facet: FacetLike) -> int:
    target = _as_vertex_set(delta, facet)
    try:
        return delta.facets.index(target)
    except ValueError:
        raise NotFoundError(f"{target} is not a facet of {delta}") from None


def remove_facet(delta: SimplicialComplex, facet: FacetLike) -> SimplicialComplex:
    position = facet_position(delta, facet)
    return SimplicialComplex(delta.universe, delta.facets[:position] + delta.facets[position + 1 :])


def restrict(delta: SimplicialComplex, names: Iterable[str]) -> SimplicialComplex:
    """Keep only the vertices in ``names``: facets are intersected, then normalized."""
    keep = set(names)
    missing = keep.difference(delta.universe)
    if missing:
        raise NotFoundError(f"Vertices {sorted(missing)} are not in the universe")
    universe = tuple(name for name in delta.universe if name in keep)
    return from_masks(universe, (reindex(m, delta.universe, universe) for m in delta.masks))


def delete_vertex(delta: SimplicialComplex, vertex: str) -> SimplicialComplex:
    if vertex not in _index(delta.universe):
        raise NotFoundError(f"Vertex '{vertex}' is not in the universe")
    return restrict(delta, (name for name in delta.universe if name != vertex))


def _face_masks(delta: SimplicialComplex, size: Optional[int] = None) -> List[int]:
    found = set()
    for mask in delta.masks:
        found.update(submasks(mask, size))
    return sorted(found, key=lambda m: VertexSet(delta.universe, m).sort_key)


def faces(delta: SimplicialComplex, dimension: Optional[int] = None) -> Iterator[VertexSet]:
    """Every face (of one dimension when given), ordered by size then names."""
    size = None if dimension is None else dimension + 1
    for mask in _face_masks(delta, size):
        yield VertexSet(delta.universe, mask)


def f_vector(delta: SimplicialComplex) -> Tuple[int, ...]:
    """Face counts ``(f_-1, f_0, ..., f_dim)``; the void complex gives ``(0,)``."""
    counts = [0] * (dim(delta) + 2)
    for mask in _face_masks(delta):
        counts[popcount(mask)] += 1
    return tuple(counts)


def contains_face(delta: SimplicialComplex, face: FacetLike) -> bool:
    target = _as_vertex_set(delta, face).mask
    return any(target & mask == target for mask in delta.masks)


def skeleton(delta: SimplicialComplex, i: int) -> SimplicialComplex:
    """Faces of dimension at most ``i``; smaller facets stay facets."""
    if not -1 <= i <= dim(delta):
        raise DomainError(f"Skeleton dimension {i} outside [-1, {dim(delta)}]")
    masks: List[int] = []
    for mask in delta.masks:
        if popcount(mask) <= i + 1:
            masks.append(mask)
        else:
            masks.extend(submasks(mask, i + 1))
    return from_masks(delta.universe, masks)


def link(delta: SimplicialComplex, face: FacetLike) -> SimplicialComplex:
    """``{G : G ∩ face = ∅, G ∪ face ∈ Δ}`` over the universe without ``face``."""
    face = _as_vertex_set(delta, face)
    containing = [mask for mask in delta.masks if face.mask & mask == face.mask]
    if not containing:
        raise DomainError(f"{face} is not a face of {delta}")
    universe = tuple(name for name in delta.universe if name not in face)
    moved = (reindex(mask & ~face.mask, delta.universe, universe) for mask in containing)
    return from_masks(universe, moved)


def relabel(delta: SimplicialComplex, mapping: Dict[str, str]) -> SimplicialComplex:
    """Rename vertices; names missing from ``mapping`` are kept."""
    universe = tuple(mapping.get(name, name) for name in delta.universe)
    return from_masks(universe, delta.masks)
