"""Reduced simplicial homology and Cohen-Macaulay tests for k[x]/𝓕(Δ).

Cohen-Macaulayness is decided with Reisner's criterion on the non-face complex
Γ = δ𝓝(𝓕(Δ)): the ring is CM over k exactly when every link of Γ has vanishing
reduced homology below its top dimension. Depth uses the skeleton criterion
depth k[Γ] = 1 + max{i : the i-skeleton of Γ is CM}.
"""
from collections import namedtuple
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from .complex import SimplicialComplex, VertexSet, dim, faces, link, skeleton
from .ideal import MonomialIdeal, facet_ideal, nonface_complex
from .linalg import RATIONAL, FieldSpec, matrix, rank, zeros
from .logging import logger
from .util import bits

CMReport = namedtuple("CMReport", ["cm", "field", "witness", "depth", "dim"])
ReisnerWitness = namedtuple("ReisnerWitness", ["face", "index"])


@dataclass(frozen=True)
class ChainComplex:
    """Augmented simplicial chain complex: degrees -1 .. dim, ∂_d maps degree d to d-1."""

    field: FieldSpec
    dimensions: Tuple[int, ...]
    boundaries: Dict[int, DomainMatrix]

    @property
    def top(self) -> int:
        return len(self.dimensions) - 2

    def dimension(self, degree: int) -> int:
        return self.dimensions[degree + 1]

    def check(self) -> bool:
        """Whether ∂_d ∘ ∂_{d+1} vanishes for every d."""
        for degree in range(0, self.top):
            lower, upper = self.boundaries[degree], self.boundaries[degree + 1]
            if lower.shape[1] != upper.shape[0]:
                return False
            if 0 in lower.shape or 0 in upper.shape:
                continue
            if not (lower * upper).is_zero_matrix:
                return False
        return True


def chain_complex(delta: SimplicialComplex, field: FieldSpec = RATIONAL) -> ChainComplex:
    top = dim(delta)
    by_degree: List[List[int]] = [[] for _ in range(top + 2)]
    for face in faces(delta):
        by_degree[len(face)].append(face.mask)
    boundaries: Dict[int, DomainMatrix] = {}
    for degree in range(0, top + 1):
        rows = {mask: row for row, mask in enumerate(by_degree[degree])}
        entries = zeros(len(rows), len(by_degree[degree + 1]), field)
        for column, mask in enumerate(by_degree[degree + 1]):
            for position, vertex in enumerate(bits(mask)):
                entries[rows[mask & ~(1 << vertex)]][column] = field.scalar(
                    1 if position % 2 == 0 else -1
                )
        boundaries[degree] = matrix(entries, (len(rows), len(by_degree[degree + 1])), field)
    return ChainComplex(field, tuple(len(masks) for masks in by_degree), boundaries)


def reduced_homology_ranks(delta: SimplicialComplex, field: FieldSpec = RATIONAL) -> List[int]:
    """Ranks of H̃_i(Δ; k) for i = -1 .. dim Δ (the void complex gives ``[0]``)."""
    chains = chain_complex(delta, field)
    ranks = {degree: rank(m) for degree, m in chains.boundaries.items()}
    return [
        chains.dimension(degree) - ranks.get(degree, 0) - ranks.get(degree + 1, 0)
        for degree in range(-1, chains.top + 1)
    ]


def reisner_witness(
    gamma: SimplicialComplex, field: FieldSpec = RATIONAL
) -> Optional[ReisnerWitness]:
    """First face whose link has reduced homology below its top degree, or None if CM."""
    for face in faces(gamma):
        local = link(gamma, face)
        top = dim(local)
        for index, value in zip(range(-1, top), reduced_homology_ranks(local, field)):
            if value:
                logger.debug(f"Link of {face} has H̃_{index} of rank {value} over {field}")
                return ReisnerWitness(face, index)
    return None


def is_cm_stanley_reisner(gamma: SimplicialComplex, field: FieldSpec = RATIONAL) -> bool:
    return reisner_witness(gamma, field) is None


def _skeleton_depth(gamma: SimplicialComplex, field: FieldSpec) -> int:
    depth = 0
    for i in range(0, dim(gamma) + 1):
        if not is_cm_stanley_reisner(skeleton(gamma, i), field):
            break
        depth = i + 1
    return depth


def is_cm(delta: SimplicialComplex, field: FieldSpec = RATIONAL) -> CMReport:
    """Cohen-Macaulay test for k[x]/𝓕(Δ) with a failing link as witness."""
    return cm_report(facet_ideal(delta), field)


def cm_report(ideal: MonomialIdeal, field: FieldSpec = RATIONAL) -> CMReport:
    if ideal.is_zero:
        return CMReport(True, field, None, ideal.nvars, ideal.nvars)
    gamma = nonface_complex(ideal)
    krull = dim(gamma) + 1
    witness = reisner_witness(gamma, field)
    if witness is None:
        return CMReport(True, field, None, krull, krull)
    return CMReport(False, field, witness, _skeleton_depth(gamma, field), krull)


def depth_sr(delta: SimplicialComplex, field: FieldSpec = RATIONAL) -> int:
    """Depth of k[universe]/𝓕(Δ); the zero ideal gives the number of variables."""
    return depth_of_quotient(facet_ideal(delta), field)


def depth_of_quotient(ideal: MonomialIdeal, field: FieldSpec = RATIONAL) -> int:
    if ideal.is_zero:
        return ideal.nvars
    return _skeleton_depth(nonface_complex(ideal), field)


def witness_names(witness: Optional[ReisnerWitness]) -> Optional[Tuple[List[str], int]]:
    if witness is None:
        return None
    face: VertexSet = witness.face
    return list(face.names), witness.index
