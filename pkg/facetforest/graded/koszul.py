from itertools import combinations
from typing import Dict, List, Tuple

from sympy.polys.matrices import DomainMatrix

from ..ideal import MonomialIdeal
from ..linalg import FieldSpec, Subquotient, Vector, identity, kernel, matrix, zeros
from .base import AbstractGradedModule, Multidegree, add, leq, unit

KoszulBasis = List[Tuple[Tuple[int, ...], Multidegree]]


class KoszulHomologyModule(AbstractGradedModule):
    """H_i of the Koszul complex on the generators M_1, ..., M_q of a monomial ideal.

    The basis element e_S of K_i has degree Σ_{j∈S} deg M_j. In degree a, K_{i,a}
    has one basis vector x^(a - deg e_S) e_S for each |S| = i with deg e_S ≤ a, so
    the slice is indexed by the sets S alone and multiplication by x_t is the
    inclusion of index sets.
    """

    def __init__(self, ideal: MonomialIdeal, i: int, field: FieldSpec):
        super().__init__(ideal.nvars, field)
        self.ideal = ideal
        self.i = i
        self.generator_degrees = [
            tuple(mask >> t & 1 for t in range(ideal.nvars)) for mask in ideal.masks
        ]
        self._stages: Dict[int, KoszulBasis] = {}
        self._slices: Dict[Tuple[int, Multidegree], List[Tuple[int, ...]]] = {}

    def stage(self, i: int) -> KoszulBasis:
        """Every (S, deg e_S) with |S| = i."""
        if i not in self._stages:
            q = len(self.generator_degrees)
            basis = []
            if 0 <= i <= q:
                for chosen in combinations(range(q), i):
                    degree = tuple(0 for _ in range(self.nvars))
                    for j in chosen:
                        degree = add(degree, self.generator_degrees[j])
                    basis.append((chosen, degree))
            self._stages[i] = basis
        return self._stages[i]

    def slice_basis(self, i: int, a: Multidegree) -> List[Tuple[int, ...]]:
        key = (i, a)
        if key not in self._slices:
            self._slices[key] = [chosen for chosen, degree in self.stage(i) if leq(degree, a)]
        return self._slices[key]

    def differential(self, i: int, a: Multidegree) -> DomainMatrix:
        """∂_{i,a}: K_{i,a} → K_{i-1,a}, ∂ e_S = Σ_{j∈S} (-1)^{#{s∈S : s<j}} M_j e_{S∖j}."""
        columns = self.slice_basis(i, a)
        rows = self.slice_basis(i - 1, a) if i > 0 else []
        position = {chosen: row for row, chosen in enumerate(rows)}
        entries = zeros(len(rows), len(columns), self.field)
        one = self.field.domain.one
        for column, chosen in enumerate(columns):
            for index, j in enumerate(chosen):
                smaller = chosen[:index] + chosen[index + 1 :]
                entries[position[smaller]][column] = one if index % 2 == 0 else -one
        return matrix(entries, (len(rows), len(columns)), self.field)

    def _component(self, a: Multidegree) -> Subquotient:
        size = len(self.slice_basis(self.i, a))
        outgoing = self.differential(self.i, a)
        cycles = kernel(outgoing, self.field) if outgoing.shape[0] else identity(size, self.field)
        incoming = self.differential(self.i + 1, a)
        boundaries = [list(column) for column in zip(*incoming.to_list())] if size else []
        return Subquotient(size, cycles, boundaries, self.field)

    def _ambient_multiply(self, t: int, a: Multidegree, vectors: List[Vector]) -> List[Vector]:
        source = self.slice_basis(self.i, a)
        target = self.slice_basis(self.i, add(a, unit(self.nvars, t)))
        position = {chosen: index for index, chosen in enumerate(target)}
        zero = self.field.domain.zero
        images = []
        for vector in vectors:
            image = [zero] * len(target)
            for chosen, value in zip(source, vector):
                image[position[chosen]] = value
            images.append(image)
        return images

    def stable_degree(self) -> Multidegree:
        """σ = componentwise sum of the generator degrees; every deg e_S lies below it."""
        total = tuple(0 for _ in range(self.nvars))
        for degree in self.generator_degrees:
            total = add(total, degree)
        return total
