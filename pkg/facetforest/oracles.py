"""Brute-force reference implementations.

Each function here recomputes something the main modules do cleverly, straight
from the definition and with no shared code paths, so the two can be compared on
small inputs by the harness and the tests.
"""
from itertools import combinations, permutations
from typing import Dict, FrozenSet, List, Set, Tuple

from networkx.utils import UnionFind

from .complex import SimplicialComplex, VertexSet
from .ideal import MonomialIdeal


def _subsets(universe: Tuple[str, ...]) -> List[FrozenSet[str]]:
    return [
        frozenset(chosen)
        for size in range(len(universe) + 1)
        for chosen in combinations(universe, size)
    ]


def _facet_sets(delta: SimplicialComplex) -> List[FrozenSet[str]]:
    return [frozenset(facet.names) for facet in delta.facets]


def all_faces(delta: SimplicialComplex) -> Set[FrozenSet[str]]:
    facets = _facet_sets(delta)
    return {subset for subset in _subsets(delta.universe) if any(subset <= f for f in facets)}


def _minimal(sets) -> Set[FrozenSet[str]]:
    sets = set(sets)
    return {s for s in sets if not any(other < s for other in sets)}


def _maximal(sets) -> Set[FrozenSet[str]]:
    sets = set(sets)
    return {s for s in sets if not any(s < other for other in sets)}


def minimal_nonfaces(delta: SimplicialComplex) -> Set[FrozenSet[str]]:
    faces = all_faces(delta)
    return _minimal(s for s in _subsets(delta.universe) if s not in faces)


def nonface_facets(ideal: MonomialIdeal) -> Set[FrozenSet[str]]:
    """Maximal supports of monomials outside ``ideal``, from a full subset scan."""
    generators = [frozenset(g.names) for g in ideal.generators]
    outside = [s for s in _subsets(ideal.universe) if not any(g <= s for g in generators)]
    return _maximal(outside)


def minimal_vertex_covers(delta: SimplicialComplex) -> Set[FrozenSet[str]]:
    facets = _facet_sets(delta)
    covers = [s for s in _subsets(delta.universe) if all(s & f for f in facets)]
    return _minimal(covers)


def minimal_primes(ideal: MonomialIdeal) -> Set[FrozenSet[str]]:
    """Minimal variable sets S with I ⊆ (S): every generator must use a variable of S."""
    if ideal.is_zero:
        return set()
    generators = [frozenset(g.names) for g in ideal.generators]
    return _minimal(s for s in _subsets(ideal.universe) if all(g & s for g in generators))


def covering_number(delta: SimplicialComplex) -> int:
    return min(len(cover) for cover in minimal_vertex_covers(delta))


def is_leaf(delta: SimplicialComplex, facet: VertexSet) -> bool:
    """A leaf is the only facet, or has a facet G with F∩H ⊆ F∩G for every other H."""
    facets = _facet_sets(delta)
    target = frozenset(facet.names)
    others = [f for f in facets if f != target]
    if not others:
        return True
    for candidate in others:
        if all(target & other <= target & candidate for other in others if other != candidate):
            return True
    return False


def free_vertices(delta: SimplicialComplex, facet: VertexSet) -> Set[str]:
    others = [f for f in _facet_sets(delta) if f != frozenset(facet.names)]
    return {v for v in facet.names if not any(v in other for other in others)}


def is_tree(delta: SimplicialComplex) -> bool:
    """Every nonempty subcomplex (connected or not) has a leaf."""
    facets = list(delta.facets)
    for size in range(1, len(facets) + 1):
        for chosen in combinations(facets, size):
            sub = SimplicialComplex(delta.universe, chosen)
            if not any(is_leaf(sub, f) for f in chosen):
                return False
    return True


def component_count(delta: SimplicialComplex) -> int:
    """Connected components through union-find over shared vertices."""
    forest = UnionFind(range(len(delta.facets)))
    facets = _facet_sets(delta)
    for i, j in combinations(range(len(facets)), 2):
        if facets[i] & facets[j]:
            forest.union(i, j)
    return len({forest[i] for i in range(len(facets))})


def canonical_form(delta: SimplicialComplex) -> Tuple[Tuple[int, ...], ...]:
    """Smallest sorted facet list over all relabelings of the universe by 0..n-1."""
    n = len(delta.universe)
    best = None
    for order in permutations(range(n)):
        image = tuple(
            sorted(tuple(sorted(order[v] for v in facet.members)) for facet in delta.facets)
        )
        if best is None or image < best:
            best = image
    return best


def localize(ideal: MonomialIdeal, variables) -> Set[FrozenSet[str]]:
    """Replay of localization: divide each generator by the variables outside S."""
    keep = frozenset(variables)
    restricted = {frozenset(g.names) & keep for g in ideal.generators}
    return _minimal(restricted)


def face_counts(delta: SimplicialComplex) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for face in all_faces(delta):
        counts[len(face) - 1] = counts.get(len(face) - 1, 0) + 1
    return counts
