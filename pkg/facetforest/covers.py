"""Vertex covers, minimal primes and the height/dimension dictionary."""
from collections import namedtuple
from typing import Iterable, List, Optional, Sequence

from .complex import SimplicialComplex, VertexSet
from .exceptions import DomainError
from .ideal import (
    MonomialIdeal,
    facet_complex,
    localization_components,
    nonface_complex,
    zero_ideal,
)
from .util import bits, popcount

CoverSet = namedtuple("CoverSet", ["cover", "minimal"])
PrimeCheck = namedtuple("PrimeCheck", ["holds", "prime", "generators", "bound"])


def _sort_key(universe: Sequence[str]):
    return lambda mask: VertexSet(tuple(universe), mask).sort_key


def minimal_transversals(masks: Sequence[int]) -> List[int]:
    """Minimal sets meeting every set in ``masks``.

    Branch and bound in the style of MMCS: pick the uncovered set with the fewest
    candidate vertices, branch on each of them, and prune as soon as some chosen
    vertex is left without a critical set (a set it alone covers). The candidate
    pool shrinks along each branch so every minimal transversal is found once.
    An empty family gives ``[0]``; a family containing the empty set gives ``[]``.
    """
    family = sorted(set(masks), key=popcount)
    if not family:
        return [0]
    if family[0] == 0:
        return []
    found: List[int] = []

    def every_vertex_critical(cover: int) -> bool:
        for vertex in bits(cover):
            alone = 1 << vertex
            if not any(member & cover == alone for member in family):
                return False
        return True

    def search(cover: int, candidates: int, uncovered: List[int]):
        if not uncovered:
            found.append(cover)
            return
        target = min(uncovered, key=lambda member: popcount(member & candidates))
        choices = target & candidates
        candidates &= ~choices
        for vertex in bits(choices):
            grown = cover | 1 << vertex
            if every_vertex_critical(grown):
                remaining = [member for member in uncovered if not member >> vertex & 1]
                search(grown, candidates, remaining)
            candidates |= 1 << vertex

    union = 0
    for member in family:
        union |= member
    search(0, union, family)
    return found


def is_vertex_cover(delta: SimplicialComplex, cover: VertexSet) -> bool:
    if cover.universe != delta.universe:
        cover = VertexSet.from_names(delta.universe, cover.names)
    return all(cover.mask & mask for mask in delta.masks)


def classify_cover(delta: SimplicialComplex, cover: VertexSet) -> Optional[CoverSet]:
    """``CoverSet`` for ``cover`` or None when it misses a facet."""
    if not is_vertex_cover(delta, cover):
        return None
    minimal = all(
        not is_vertex_cover(delta, VertexSet(delta.universe, cover.mask & ~(1 << vertex)))
        for vertex in bits(cover.mask)
    )
    return CoverSet(cover, minimal)


def minimal_vertex_covers(delta: SimplicialComplex) -> List[VertexSet]:
    """All minimal vertex covers, ordered by (size, names)."""
    covers = sorted(minimal_transversals(delta.masks), key=_sort_key(delta.universe))
    return [VertexSet(delta.universe, mask) for mask in covers]


def covering_number(delta: SimplicialComplex) -> int:
    covers = minimal_transversals(delta.masks)
    if not covers:
        raise DomainError("The complex {∅} has no vertex cover")
    return min(popcount(mask) for mask in covers)


def is_unmixed(delta: SimplicialComplex) -> bool:
    return len({popcount(mask) for mask in minimal_transversals(delta.masks)}) <= 1


def minimal_primes(ideal: MonomialIdeal) -> List[VertexSet]:
    """Variable sets of the minimal primes: the minimal covers of the facet complex."""
    if ideal.is_zero:
        return []
    return minimal_vertex_covers(facet_complex(ideal))


def primary_decomposition_expand(ideal: MonomialIdeal) -> MonomialIdeal:
    """Rebuild ``ideal`` as the intersection of its minimal primes.

    A square-free monomial lies in the intersection when its support meets every
    prime; the minimal such supports generate the result.
    """
    primes = [prime.mask for prime in minimal_primes(ideal)]
    if not primes:
        return zero_ideal(ideal.universe)
    members = [
        mask
        for mask in range(1, 1 << ideal.nvars)
        if all(mask & prime for prime in primes)
    ]
    return MonomialIdeal.from_masks(ideal.universe, members)


def height(ideal: MonomialIdeal) -> int:
    if ideal.is_zero:
        return 0
    return covering_number(facet_complex(ideal))


def dim_quotient(ideal: MonomialIdeal) -> int:
    """Krull dimension of R/I."""
    return ideal.nvars - height(ideal)


def cover_complement_duality(ideal: MonomialIdeal) -> bool:
    """Facets of the non-face complex are the complements of the minimal covers."""
    full = (1 << ideal.nvars) - 1
    facets = set(nonface_complex(ideal).masks)
    complements = {full & ~cover for cover in minimal_transversals(ideal.masks)}
    return facets == complements


def monomial_primes_containing(ideal: MonomialIdeal) -> Iterable[VertexSet]:
    """Every variable set S whose prime contains ``ideal``, smallest first."""
    masks = sorted(
        (
            mask
            for mask in range(1 << ideal.nvars)
            if mask and all(mask & generator for generator in ideal.masks)
        ),
        key=_sort_key(ideal.universe),
    )
    for mask in masks:
        yield VertexSet(ideal.universe, mask)


def _check_primes(ideal: MonomialIdeal, bound_for) -> PrimeCheck:
    minimal = set(minimal_transversals(ideal.masks))
    for prime in monomial_primes_containing(ideal):
        # a minimal prime localizes to itself: every component is an isolated variable
        parts, isolated = localization_components(ideal, prime)
        count = len(isolated) + sum(len(part.generators) for part in parts)
        if prime.mask in minimal and parts:
            return PrimeCheck(False, prime, count, len(prime))
        bound = bound_for(prime)
        if count > bound:
            return PrimeCheck(False, prime, count, bound)
    return PrimeCheck(True, None, None, None)


def satisfies_f1(ideal: MonomialIdeal) -> PrimeCheck:
    """Generator count of every localization at a prime p ⊇ I is at most ht p.

    At a minimal prime the localization must be the prime itself.
    """
    return _check_primes(ideal, len)


def mu_inequality(ideal: MonomialIdeal) -> PrimeCheck:
    """Generator count of every localization at p ⊇ I is at most max(ht I, ht p - 1)."""
    ideal_height = height(ideal)
    return _check_primes(ideal, lambda prime: max(ideal_height, len(prime) - 1))
