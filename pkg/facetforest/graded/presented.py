from typing import List, Sequence

from ..linalg import FieldSpec, Subquotient, Vector, identity
from .base import AbstractGradedModule, Multidegree, Relation, add, join, leq, unit


class PresentedModule(AbstractGradedModule):
    """The cokernel of a homogeneous map between free modules.

    Generator k sits in degree ``generator_degrees[k]``; each relation is a
    homogeneous combination of generators. In degree a the free module has one
    basis vector per generator of degree ≤ a, and the relations of degree ≤ a
    span the submodule that is divided out.
    """

    def __init__(
        self,
        nvars: int,
        generator_degrees: Sequence[Multidegree],
        relations: Sequence[Relation],
        field: FieldSpec,
    ):
        super().__init__(nvars, field)
        self.generator_degrees = [tuple(d) for d in generator_degrees]
        self.relations = list(relations)

    def _present(self, a: Multidegree) -> List[int]:
        return [k for k, degree in enumerate(self.generator_degrees) if leq(degree, a)]

    def _component(self, a: Multidegree) -> Subquotient:
        present = self._present(a)
        position = {k: index for index, k in enumerate(present)}
        zero = self.field.domain.zero
        spanning = []
        for relation in self.relations:
            if not leq(relation.degree, a):
                continue
            vector = [zero] * len(present)
            for k, coefficient, _ in relation.terms:
                vector[position[k]] = self.field.scalar(coefficient)
            spanning.append(vector)
        return Subquotient(len(present), identity(len(present), self.field), spanning, self.field)

    def _ambient_multiply(self, t: int, a: Multidegree, vectors: List[Vector]) -> List[Vector]:
        source = self._present(a)
        target = self._present(add(a, unit(self.nvars, t)))
        position = {k: index for index, k in enumerate(target)}
        zero = self.field.domain.zero
        images = []
        for vector in vectors:
            image = [zero] * len(target)
            for k, value in zip(source, vector):
                image[position[k]] = value
            images.append(image)
        return images

    def stable_degree(self) -> Multidegree:
        degrees = self.generator_degrees + [relation.degree for relation in self.relations]
        return join(degrees, self.nvars)
