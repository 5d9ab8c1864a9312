"""Leaves, simplicial trees and forests.

A facet F is a leaf when it is the only facet or some other facet G (a universal
set for F) satisfies F∩H ⊆ F∩G for every facet H ≠ F. A complex is a tree when
it is connected and every nonempty subcomplex has a leaf; a forest when each
connected component is a tree.

Trees are checked in two passes: a greedy leaf-stripping pass that only filters
(a complex it cannot strip is never a forest), followed by the exhaustive
subcomplex check over connected facet subsets.
"""
import random
from collections import namedtuple
from typing import Iterator, List, Optional, Sequence, Tuple

from .complex import (
    FacetLike,
    SimplicialComplex,
    VertexSet,
    connected_components,
    facet_position,
    from_masks,
    subcomplex,
)
from .config import get_settings
from .exceptions import DomainError, GenerationError, ResourceLimitError
from .ideal import MonomialIdeal, facet_complex
from .logging import logger
from .util import bits

LeafWitness = namedtuple("LeafWitness", ["leaf", "universal_set", "free_vertices"])
LeafRejection = namedtuple("LeafRejection", ["facet", "blockers"])
TreeVerdict = namedtuple("TreeVerdict", ["tree", "leaf_order", "failing_subcomplex"])

RANDOM_FOREST_ATTEMPTS = 100


def _universal_positions(masks: Sequence[int], position: int) -> List[int]:
    facet = masks[position]
    union = 0
    for other, mask in enumerate(masks):
        if other != position:
            union |= facet & mask
    return [
        other
        for other, mask in enumerate(masks)
        if other != position and facet & mask == union
    ]


def _is_leaf_mask(masks: Sequence[int], position: int) -> bool:
    return len(masks) == 1 or bool(_universal_positions(masks, position))


def _has_leaf(masks: Sequence[int]) -> bool:
    return any(_is_leaf_mask(masks, position) for position in range(len(masks)))


def universal_set(delta: SimplicialComplex, facet: FacetLike) -> List[VertexSet]:
    """Every universal set of ``facet``; empty when it is not a leaf or is alone."""
    position = facet_position(delta, facet)
    return [delta.facets[p] for p in _universal_positions(delta.masks, position)]


def is_leaf(delta: SimplicialComplex, facet: FacetLike) -> bool:
    return _is_leaf_mask(delta.masks, facet_position(delta, facet))


def _free_vertices(delta: SimplicialComplex, position: int) -> VertexSet:
    others = 0
    for other, mask in enumerate(delta.masks):
        if other != position:
            others |= mask
    return VertexSet(delta.universe, delta.masks[position] & ~others)


def leaf_witness(delta: SimplicialComplex, facet: FacetLike) -> Optional[LeafWitness]:
    """Universal sets and free vertices of a leaf, or None for a non-leaf."""
    position = facet_position(delta, facet)
    if not _is_leaf_mask(delta.masks, position):
        return None
    universal = [delta.facets[p] for p in _universal_positions(delta.masks, position)]
    return LeafWitness(delta.facets[position], universal, _free_vertices(delta, position))


def rejection(delta: SimplicialComplex, facet: FacetLike) -> Optional[LeafRejection]:
    """Why ``facet`` is not a leaf: each other G paired with some F' where F∩F' ⊄ F∩G."""
    position = facet_position(delta, facet)
    masks = delta.masks
    if _is_leaf_mask(masks, position):
        return None
    target = masks[position]
    blockers = []
    for candidate, mask in enumerate(masks):
        if candidate == position:
            continue
        shared = target & mask
        for other, other_mask in enumerate(masks):
            if other not in (position, candidate) and target & other_mask & ~shared:
                blockers.append((delta.facets[candidate], delta.facets[other]))
                break
    return LeafRejection(delta.facets[position], blockers)


def _greedy(masks: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Strip leaves, lowest position first; returns (order, positions left when stuck)."""
    remaining = list(range(len(masks)))
    order: List[int] = []
    while remaining:
        current = [masks[p] for p in remaining]
        for index, position in enumerate(remaining):
            if _is_leaf_mask(current, index):
                order.append(position)
                del remaining[index]
                break
        else:
            return order, remaining
    return order, []


def greedy_leaf_order(delta: SimplicialComplex) -> Optional[List[VertexSet]]:
    """A leaf removal order found greedily, or None when the greedy pass gets stuck.

    Success does not prove the complex is a tree; failure proves it is not a forest.
    """
    order, stuck = _greedy(delta.masks)
    if stuck:
        return None
    return [delta.facets[p] for p in order]


def _adjacency(masks: Sequence[int]) -> List[int]:
    adjacency = []
    for position, mask in enumerate(masks):
        neighbours = 0
        for other, other_mask in enumerate(masks):
            if other != position and mask & other_mask:
                neighbours |= 1 << other
        adjacency.append(neighbours)
    return adjacency


def _extend_subgraph(
    chosen: int, extension: int, root: int, adjacency: Sequence[int]
) -> Iterator[int]:
    yield chosen
    above_root = ~((1 << (root + 1)) - 1)
    neighbourhood = chosen
    for position in bits(chosen):
        neighbourhood |= adjacency[position]
    while extension:
        low = extension & -extension
        extension ^= low
        added = low.bit_length() - 1
        exclusive = adjacency[added] & ~neighbourhood & above_root
        yield from _extend_subgraph(chosen | low, extension | exclusive, root, adjacency)


def connected_facet_subsets(masks: Sequence[int]) -> Iterator[int]:
    """Each connected set of facet positions exactly once, as a bitmask (ESU)."""
    adjacency = _adjacency(masks)
    for root in range(len(masks)):
        above_root = ~((1 << (root + 1)) - 1)
        yield from _extend_subgraph(1 << root, adjacency[root] & above_root, root, adjacency)


def _all_facet_subsets(masks: Sequence[int]) -> Iterator[int]:
    return iter(range(1, 1 << len(masks)))


def check_tree(
    delta: SimplicialComplex, *, connected_only: bool = True, limit: Optional[int] = None
) -> TreeVerdict:
    """Decide whether a connected complex is a tree, with a certificate.

    A positive verdict carries a leaf removal order; a negative one names a
    subcomplex without a leaf. ``connected_only=False`` checks every facet subset
    instead of the connected ones.
    """
    if len(connected_components(delta)) != 1:
        raise DomainError(f"{delta} is not connected; trees are connected by definition")
    limit = get_settings().max_subcomplex_facets if limit is None else limit
    masks = delta.masks
    if len(masks) > limit:
        raise ResourceLimitError(
            f"Complex has {len(masks)} facets; tree checks are capped at {limit}"
        )
    order, stuck = _greedy(masks)
    if stuck:
        logger.debug(f"Greedy leaf stripping got stuck on {len(stuck)} facets of {delta}")
        return TreeVerdict(False, None, subcomplex(delta, stuck))
    subsets = connected_facet_subsets if connected_only else _all_facet_subsets
    for chosen in subsets(masks):
        positions = list(bits(chosen))
        if not _has_leaf([masks[p] for p in positions]):
            return TreeVerdict(False, None, subcomplex(delta, positions))
    return TreeVerdict(True, [delta.facets[p] for p in order], None)


def is_tree(delta: SimplicialComplex, *, connected_only: bool = True) -> bool:
    """Definitional tree check; a disconnected complex raises ``DomainError``."""
    return check_tree(delta, connected_only=connected_only).tree


def is_forest(delta: SimplicialComplex) -> bool:
    """Every connected component is a tree; the void complex is a forest."""
    if _greedy(delta.masks)[1]:
        return False
    return all(check_tree(component).tree for component in connected_components(delta))


def leaf_join(delta: SimplicialComplex, facet: FacetLike) -> SimplicialComplex:
    """Drop the leaf F and add the face F shares with the rest, then minimalize.

    This is the facet complex of 𝓕(Δ∖F) + (y'), y' being the product of the
    vertices of F lying in other facets. Every facet containing y' collapses to it.
    """
    position = facet_position(delta, facet)
    masks = delta.masks
    if not _is_leaf_mask(masks, position):
        raise DomainError(f"{delta.facets[position]} is not a leaf of {delta}")
    rest = [mask for other, mask in enumerate(masks) if other != position]
    shared = 0
    for mask in rest:
        shared |= masks[position] & mask
    if shared:
        rest.append(shared)
    return facet_complex(MonomialIdeal.from_masks(delta.universe, rest))


def random_forest(vertices: int, facets: int, seed: int) -> SimplicialComplex:
    """A random forest on at most ``vertices`` vertices with at most ``facets`` facets.

    Facets are attached one at a time: a new facet is a proper part of an existing
    facet plus fresh vertices, or a fresh component. Results are re-checked with
    ``is_forest`` and retried, so every returned complex really is a forest.
    """
    if vertices < 1 or facets < 1:
        raise DomainError("random_forest needs at least one vertex and one facet")
    rng = random.Random(seed)
    names = tuple(f"x{i}" for i in range(vertices))
    for attempt in range(RANDOM_FOREST_ATTEMPTS):
        first = rng.randint(1, min(3, vertices))
        masks = [(1 << first) - 1]
        used = first
        while len(masks) < facets and used < vertices:
            if rng.random() < 0.15:
                shared = 0
            else:
                parent = rng.choice(masks)
                shared = 0
                for vertex in bits(parent):
                    if rng.random() < 0.5:
                        shared |= 1 << vertex
                if shared == parent:
                    shared &= ~(1 << rng.choice(list(bits(parent))))
            fresh = rng.randint(1, min(2, vertices - used))
            masks.append(shared | (((1 << fresh) - 1) << used))
            used += fresh
        candidate = from_masks(names[:used], masks)
        if is_forest(candidate):
            return candidate
        logger.debug(f"random_forest attempt {attempt} produced a non-forest {candidate}")
    raise GenerationError(
        f"No forest found in {RANDOM_FOREST_ATTEMPTS} attempts "
        f"(vertices={vertices}, facets={facets}, seed={seed})"
    )
