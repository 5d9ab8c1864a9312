"""Square-free monomial ideals and their translations to and from complexes.

A square-free monomial is identified with its support, so an ideal is an antichain
of vertex sets over a universe of variable names. The unit ideal is never
represented; asking for it raises ``UnitIdealError``.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .complex import (
    SimplicialComplex,
    Universe,
    VertexSet,
    connected_components,
    from_masks,
    reindex,
)
from .exceptions import MalformedInputError, UnitIdealError
from .util import bits, minimal_masks, popcount


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generating set of a square-free monomial ideal."""

    universe: Universe
    generators: Tuple[VertexSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        if len(set(self.universe)) != len(self.universe):
            raise MalformedInputError(f"Duplicate variable names in {list(self.universe)}")
        for generator in self.generators:
            if generator.universe != self.universe:
                raise MalformedInputError(
                    f"Generator {generator} is not over {list(self.universe)}"
                )
            if not generator.mask:
                raise UnitIdealError("The unit ideal cannot be represented")
        masks = [generator.mask for generator in self.generators]
        if len(minimal_masks(masks)) != len(masks):
            raise MalformedInputError("Generators must be minimal; use MonomialIdeal.from_masks()")
        object.__setattr__(
            self, "generators", tuple(sorted(self.generators, key=lambda g: g.sort_key))
        )

    @classmethod
    def from_masks(cls, universe: Sequence[str], masks: Iterable[int]) -> "MonomialIdeal":
        """The ideal generated by the monomials with supports ``masks``, minimalized."""
        universe = tuple(universe)
        kept = minimal_masks(masks)
        if 0 in kept:
            raise UnitIdealError("The monomial 1 generates the unit ideal")
        return cls(universe, tuple(VertexSet(universe, mask) for mask in kept))

    @classmethod
    def from_names(
        cls, generators: Iterable[Iterable[str]], universe: Optional[Sequence[str]] = None
    ) -> "MonomialIdeal":
        generators = [list(generator) for generator in generators]
        if universe is None:
            universe = tuple(dict.fromkeys(name for gen in generators for name in gen))
        universe = tuple(universe)
        return cls.from_masks(
            universe, (VertexSet.from_names(universe, gen).mask for gen in generators)
        )

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        return tuple(generator.mask for generator in self.generators)

    @property
    def nvars(self) -> int:
        return len(self.universe)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def generator_names(self) -> List[List[str]]:
        return [list(generator.names) for generator in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join("*".join(g.names) for g in self.generators) + ")"


def zero_ideal(universe: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(tuple(universe), ())


def facet_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    """One generator per facet; the void complex gives the zero ideal."""
    return MonomialIdeal.from_masks(delta.universe, delta.masks)


def _is_face(masks: Sequence[int], candidate: int) -> bool:
    return any(candidate & mask == candidate for mask in masks)


def nonface_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    """Generated by the minimal non-faces of ``delta``.

    Candidates of size k+1 are built level by level from faces of size k, and only
    kept when every k-subset is a face, so the whole subset lattice is never scanned.
    """
    if delta.is_void:
        raise UnitIdealError("The void complex has the unit ideal as non-face ideal")
    masks = delta.masks
    vertex_mask = delta.vertices.mask
    minimal_nonfaces = [1 << v for v in range(len(delta.universe)) if not vertex_mask >> v & 1]
    level = [1 << v for v in bits(vertex_mask)]
    while level:
        known = set(level)
        next_level = []
        for face in level:
            top = face.bit_length()
            for vertex in bits(vertex_mask >> top << top):
                candidate = face | 1 << vertex
                if any(candidate & ~(1 << v) not in known for v in bits(face)):
                    continue
                if _is_face(masks, candidate):
                    next_level.append(candidate)
                else:
                    minimal_nonfaces.append(candidate)
        level = next_level
    return MonomialIdeal.from_masks(delta.universe, minimal_nonfaces)


def facet_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex whose facets are the generator supports."""
    return SimplicialComplex(ideal.universe, ideal.generators)


def _independent(generators: Sequence[int], candidate: int) -> bool:
    return not any(g & candidate == g for g in generators)


def nonface_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    """Complex of supports of monomials outside ``ideal``.

    Facets are the maximal sets containing no generator support, found by a
    depth-first include/exclude search over the variables.
    """
    n = ideal.nvars
    generators = ideal.masks
    found: List[int] = []

    def extend(current: int, vertex: int):
        if vertex == n:
            if all(
                not _independent(generators, current | 1 << other)
                for other in range(n)
                if not current >> other & 1
            ):
                found.append(current)
            return
        with_vertex = current | 1 << vertex
        if _independent(generators, with_vertex):
            extend(with_vertex, vertex + 1)
        extend(current, vertex + 1)

    extend(0, 0)
    return from_masks(ideal.universe, found)


def contains(ideal: MonomialIdeal, monomial: VertexSet) -> bool:
    """Whether the square-free monomial with support ``monomial`` lies in ``ideal``."""
    if monomial.universe != ideal.universe:
        monomial = VertexSet.from_names(ideal.universe, monomial.names)
    return not _independent(ideal.masks, monomial.mask)


def _as_support(ideal: MonomialIdeal, variables) -> VertexSet:
    if isinstance(variables, VertexSet):
        if variables.universe == ideal.universe:
            return variables
        return VertexSet.from_names(ideal.universe, variables.names)
    return VertexSet.from_names(ideal.universe, variables)


def localize(ideal: MonomialIdeal, variables) -> MonomialIdeal:
    """Localize at the monomial prime generated by ``variables``.

    Every variable outside the prime becomes a unit, so each generator is
    restricted to ``variables`` and the result lives over those variables only.
    """
    support = _as_support(ideal, variables)
    for generator in ideal.masks:
        if not generator & support.mask:
            raise UnitIdealError(
                f"{support} does not contain the ideal: generator "
                f"{VertexSet(ideal.universe, generator)} becomes a unit"
            )
    universe = support.names
    return MonomialIdeal.from_masks(
        universe, (reindex(g & support.mask, ideal.universe, universe) for g in ideal.masks)
    )


def extend_universe(ideal: MonomialIdeal, names: Iterable[str]) -> MonomialIdeal:
    """The same generators in a polynomial ring with the extra variables ``names``."""
    names = tuple(names)
    clash = set(names).intersection(ideal.universe)
    if clash or len(set(names)) != len(names):
        raise MalformedInputError(f"Variables {sorted(clash) or list(names)} are not fresh")
    return MonomialIdeal.from_masks(ideal.universe + names, ideal.masks)


def localization_components(
    ideal: MonomialIdeal, variables
) -> Tuple[List[MonomialIdeal], List[str]]:
    """Split a localization into the facet ideals of its connected components.

    A component consisting of a single vertex is a variable that is itself a
    generator; those are returned separately. The generator count of the
    localization is the sum over both parts.
    """
    local = localize(ideal, variables)
    ideals: List[MonomialIdeal] = []
    isolated: List[str] = []
    for component in connected_components(facet_complex(local)):
        if len(component.facets) == 1 and popcount(component.masks[0]) == 1:
            isolated.append(component.facets[0].names[0])
        else:
            ideals.append(facet_ideal(component))
    return ideals, isolated


def prime_ideal(universe: Sequence[str], variables: Iterable[str]) -> MonomialIdeal:
    """The monomial prime generated by ``variables``."""
    universe = tuple(universe)
    support = VertexSet.from_names(universe, variables)
    return MonomialIdeal.from_masks(universe, (1 << v for v in bits(support.mask)))
