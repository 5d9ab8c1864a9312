"""Koszul homology of monomial ideals, module depth, sliding depth and strong CM.

Everything is computed one multidegree at a time over the search box [0, σ],
σ being the componentwise sum of the generator degrees, and confirmed on
enlarged boxes before an answer is returned.
"""
from collections import namedtuple
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from .config import get_settings
from .covers import dim_quotient
from .exceptions import BoxStabilityError, DomainError, ResourceLimitError
from .graded.base import (
    AbstractGradedModule,
    BettiTable,
    Multidegree,
    Relation,
    add,
    join,
)
from .graded.koszul import KoszulHomologyModule
from .graded.presented import PresentedModule
from .ideal import MonomialIdeal
from .linalg import RATIONAL, FieldSpec
from .logging import logger

KoszulDescriptor = namedtuple("KoszulDescriptor", ["ideal", "q", "basis_degrees"])
HomologyDepth = namedtuple("HomologyDepth", ["i", "nonzero", "depth", "bound", "passed", "box"])


@dataclass(frozen=True)
class MultigradedPresentation:
    """Generators and homogeneous relations of a Z^n-graded module over k[universe].

    A relation is ``Relation(degree, terms)`` with terms ``(generator, coefficient,
    exponent)``; each exponent plus its generator degree equals the relation degree.
    """

    universe: Tuple[str, ...]
    field: FieldSpec
    generator_degrees: Tuple[Multidegree, ...]
    relations: Tuple[Relation, ...]
    box: Multidegree

    @property
    def nvars(self) -> int:
        return len(self.universe)

    def is_homogeneous(self) -> bool:
        return all(
            add(exponent, self.generator_degrees[k]) == relation.degree
            for relation in self.relations
            for k, _, exponent in relation.terms
        )

    def module(self) -> PresentedModule:
        return PresentedModule(self.nvars, self.generator_degrees, self.relations, self.field)


@dataclass(frozen=True)
class DepthReport:
    n: int
    q: int
    field: FieldSpec
    per_i: Tuple[HomologyDepth, ...]
    sliding_depth: bool
    strongly_cm: Optional[bool]
    box: Multidegree


def _check_caps(ideal: MonomialIdeal, max_vars: Optional[int], max_gens: Optional[int]):
    settings = get_settings().override(koszul_max_vars=max_vars, koszul_max_gens=max_gens)
    if ideal.nvars > settings.koszul_max_vars:
        raise ResourceLimitError(
            f"{ideal.nvars} variables exceed the Koszul cap of {settings.koszul_max_vars}"
        )
    if len(ideal.generators) > settings.koszul_max_gens:
        raise ResourceLimitError(
            f"{len(ideal.generators)} generators exceed the Koszul cap of "
            f"{settings.koszul_max_gens}"
        )


def _rounds(rounds: Optional[int]) -> int:
    return get_settings().koszul_box_rounds if rounds is None else rounds


def koszul_descriptor(ideal: MonomialIdeal) -> KoszulDescriptor:
    """Degrees of the basis elements e_S of every Koszul stage."""
    module = KoszulHomologyModule(ideal, 0, RATIONAL)
    q = len(ideal.generators)
    return KoszulDescriptor(ideal, q, {i: module.stage(i) for i in range(q + 1)})


def koszul_component(
    ideal: MonomialIdeal, i: int, a: Multidegree, field: FieldSpec = RATIONAL
) -> Tuple[DomainMatrix, DomainMatrix]:
    """The degree-a slice (∂_{i+1,a}, ∂_{i,a}) of K_{i+1} → K_i → K_{i-1}."""
    if i < 0:
        raise DomainError(f"Homological index {i} is negative")
    a = tuple(a)
    if len(a) != ideal.nvars or any(x < 0 for x in a):
        raise DomainError(f"{a} is not a multidegree over {ideal.nvars} variables")
    module = KoszulHomologyModule(ideal, i, field)
    return module.differential(i + 1, a), module.differential(i, a)


def koszul_homology_module(
    ideal: MonomialIdeal,
    i: int,
    field: FieldSpec = RATIONAL,
    *,
    max_vars: Optional[int] = None,
    max_gens: Optional[int] = None,
) -> KoszulHomologyModule:
    _check_caps(ideal, max_vars, max_gens)
    return KoszulHomologyModule(ideal, i, field)


def _presentation_of(
    module: AbstractGradedModule, universe: Tuple[str, ...], rounds: int
) -> MultigradedPresentation:
    """Minimal presentation over [0, σ], re-derived on boxes grown by 1 until it agrees."""
    box = module.stable_degree()
    generators, relations = module.minimal_presentation(box)
    shape = _presentation_shape(generators, relations)
    previous_box, previous_shape = box, shape
    stable = rounds == 0
    for _ in range(rounds):
        bigger = tuple(x + 1 for x in box)
        larger = module.minimal_presentation(bigger)
        larger_shape = _presentation_shape(*larger)
        if larger_shape == shape:
            stable = True
            break
        logger.info(f"Presentation changed when the box grew from {box} to {bigger}")
        previous_box, previous_shape = box, shape
        box, (generators, relations), shape = bigger, larger, larger_shape
    if not stable:
        raise BoxStabilityError(
            f"Presentation still changing after {rounds} box enlargements",
            (previous_box, box),
            (previous_shape, shape),
        )
    return MultigradedPresentation(
        universe,
        module.field,
        tuple(generator.degree for generator in generators),
        tuple(relations),
        box,
    )


def _presentation_shape(generators, relations) -> Dict[Tuple[str, Multidegree], int]:
    shape: Dict[Tuple[str, Multidegree], int] = {}
    for generator in generators:
        key = ("generator", generator.degree)
        shape[key] = shape.get(key, 0) + 1
    for relation in relations:
        key = ("relation", relation.degree)
        shape[key] = shape.get(key, 0) + 1
    return shape


def koszul_homology_presentation(
    ideal: MonomialIdeal,
    i: int,
    field: FieldSpec = RATIONAL,
    *,
    rounds: Optional[int] = None,
    max_vars: Optional[int] = None,
    max_gens: Optional[int] = None,
) -> MultigradedPresentation:
    """Minimal generators and relations of H_i of the Koszul complex on the generators of I."""
    module = koszul_homology_module(ideal, i, field, max_vars=max_vars, max_gens=max_gens)
    return _presentation_of(module, ideal.universe, _rounds(rounds))


ModuleLike = Union[MultigradedPresentation, AbstractGradedModule]


def _as_module(module: ModuleLike) -> AbstractGradedModule:
    if isinstance(module, MultigradedPresentation):
        return module.module()
    return module


def tor_betti(module: ModuleLike, *, rounds: Optional[int] = None) -> BettiTable:
    """Graded Betti numbers of a module, from Tor against the residue field."""
    return _as_module(module).stable_betti_table(_rounds(rounds))


def betti_table(module: ModuleLike, *, rounds: Optional[int] = None) -> List[Dict]:
    """Betti numbers as rows ``{"index", "degree", "rank"}`` for reports."""
    return [
        {"index": entry.index, "degree": list(entry.degree), "rank": entry.rank}
        for entry in tor_betti(module, rounds=rounds).entries
    ]


def depth_module(module: ModuleLike, *, rounds: Optional[int] = None) -> int:
    """depth = n - pd; the zero module has no depth."""
    table = tor_betti(module, rounds=rounds)
    if table.is_zero:
        raise DomainError("The zero module has infinite depth")
    return table.depth


def _homology_depths(
    ideal: MonomialIdeal,
    field: FieldSpec,
    rounds: Optional[int],
    max_vars: Optional[int],
    max_gens: Optional[int],
) -> List[Tuple[int, Optional[int], Multidegree]]:
    _check_caps(ideal, max_vars, max_gens)
    depths = []
    for i in range(len(ideal.generators) + 1):
        module = KoszulHomologyModule(ideal, i, field)
        table = tor_betti(module, rounds=rounds)
        depth = None if table.is_zero else table.depth
        logger.debug(f"H_{i} of the Koszul complex on {ideal}: depth {depth}")
        depths.append((i, depth, table.box))
    return depths


def _report(
    ideal: MonomialIdeal,
    field: FieldSpec,
    depths: List[Tuple[int, Optional[int], Multidegree]],
    strongly_cm: bool,
) -> DepthReport:
    n, q = ideal.nvars, len(ideal.generators)
    target = dim_quotient(ideal)
    rows = []
    for i, depth, box in depths:
        nonzero = depth is not None
        bound = target if strongly_cm else n - q + i
        if not nonzero:
            passed = True
        elif strongly_cm:
            passed = depth == bound
        else:
            passed = depth >= bound
        rows.append(HomologyDepth(i, nonzero, depth, bound, passed, box))
    sliding = all(depth is None or depth >= n - q + i for i, depth, _ in depths)
    strong = all(depth is None or depth == target for _, depth, _ in depths)
    return DepthReport(
        n,
        q,
        field,
        tuple(rows),
        sliding,
        strong if strongly_cm else None,
        join([box for _, _, box in depths], n),
    )


def sliding_depth_check(
    ideal: MonomialIdeal,
    field: FieldSpec = RATIONAL,
    *,
    rounds: Optional[int] = None,
    max_vars: Optional[int] = None,
    max_gens: Optional[int] = None,
) -> DepthReport:
    """depth H_i ≥ n - q + i for every nonzero Koszul homology module H_i."""
    depths = _homology_depths(ideal, field, rounds, max_vars, max_gens)
    return _report(ideal, field, depths, strongly_cm=False)


def strongly_cm_check(
    ideal: MonomialIdeal,
    field: FieldSpec = RATIONAL,
    *,
    rounds: Optional[int] = None,
    max_vars: Optional[int] = None,
    max_gens: Optional[int] = None,
) -> DepthReport:
    """Every nonzero Koszul homology module has depth dim R/I."""
    depths = _homology_depths(ideal, field, rounds, max_vars, max_gens)
    return _report(ideal, field, depths, strongly_cm=True)


def quotient_presentation(
    ideal: MonomialIdeal, field: FieldSpec = RATIONAL
) -> MultigradedPresentation:
    """R/I presented by one generator in degree 0 and the generators of I as relations."""
    n = ideal.nvars
    zero = tuple(0 for _ in range(n))
    relations = tuple(
        Relation(degree, ((0, field.domain.one, degree),))
        for degree in (tuple(mask >> t & 1 for t in range(n)) for mask in ideal.masks)
    )
    box = join([relation.degree for relation in relations], n)
    return MultigradedPresentation(ideal.universe, field, (zero,), relations, box)
