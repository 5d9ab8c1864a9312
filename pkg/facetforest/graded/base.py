"""This module defines an abstract multigraded module class that must be used when
   adding new ways of describing modules over k[x_1, ..., x_n]."""
import abc
from collections import namedtuple
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from ..exceptions import BoxStabilityError
from ..linalg import (
    FieldSpec,
    Subquotient,
    Vector,
    from_columns,
    identity,
    kernel,
    matrix,
    rank,
    zeros,
)
from ..logging import logger

Multidegree = Tuple[int, ...]

BettiEntry = namedtuple("BettiEntry", ["index", "degree", "rank"])
Generator = namedtuple("Generator", ["degree", "coordinates"])
Relation = namedtuple("Relation", ["degree", "terms"])


def unit(n: int, t: int) -> Multidegree:
    return tuple(1 if s == t else 0 for s in range(n))


def add(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def subtract(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: Multidegree, b: Multidegree) -> bool:
    return all(x <= y for x, y in zip(a, b))


def join(degrees: Sequence[Multidegree], n: int) -> Multidegree:
    """Componentwise maximum (the zero degree for an empty list)."""
    return tuple(max((d[t] for d in degrees), default=0) for t in range(n))


def box_degrees(upper: Multidegree) -> List[Multidegree]:
    """Every degree in [0, upper], by total degree and then lexicographically."""
    degrees = list(product(*(range(bound + 1) for bound in upper)))
    return sorted(degrees, key=lambda a: (sum(a), a))


class BettiTable:
    """Nonzero graded Betti numbers β_{j,a} = dim Tor_j(M, k)_a found inside ``box``."""

    def __init__(self, nvars: int, entries: Sequence[BettiEntry], box: Multidegree):
        self.nvars = nvars
        self.entries = tuple(sorted(entries, key=lambda e: (e.index, sum(e.degree), e.degree)))
        self.box = box

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def projective_dimension(self) -> int:
        return max(entry.index for entry in self.entries)

    @property
    def depth(self) -> int:
        """Auslander-Buchsbaum: depth = n - pd."""
        return self.nvars - self.projective_dimension

    def totals(self) -> List[int]:
        sums = [0] * (self.nvars + 1)
        for entry in self.entries:
            sums[entry.index] += entry.rank
        return sums

    def as_dict(self) -> Dict[Tuple[int, Multidegree], int]:
        return {(entry.index, entry.degree): entry.rank for entry in self.entries}

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"BettiTable(nvars={self.nvars}, entries={list(self.entries)}, box={self.box})"


class AbstractGradedModule(abc.ABC):
    """
    A finitely generated Z^n-graded module described one degree at a time.

    Subclasses supply each graded piece as a subquotient of some coordinate space
    together with the action of the variables on that space. Everything else
    (multiplication in the chosen bases, Tor against the residue field, Betti
    tables and minimal presentations) is computed here and cached per instance.
    """

    def __init__(self, nvars: int, field: FieldSpec):
        self.nvars = nvars
        self.field = field
        self._components: Dict[Multidegree, Subquotient] = {}
        self._multiplications: Dict[Tuple[int, Multidegree], List[Vector]] = {}
        self._tor: Dict[Multidegree, Tuple[int, ...]] = {}

    @abc.abstractmethod
    def _component(self, a: Multidegree) -> Subquotient:
        """The degree-a piece as a subquotient of a coordinate space."""

    @abc.abstractmethod
    def _ambient_multiply(self, t: int, a: Multidegree, vectors: List[Vector]) -> List[Vector]:
        """Multiply coordinate vectors of degree a by x_t, landing in degree a + e_t."""

    @abc.abstractmethod
    def stable_degree(self) -> Multidegree:
        """A degree σ such that x_t acts bijectively from degree a to a + e_t once a_t ≥ σ_t.

        Tor against k then vanishes outside the box [0, σ].
        """

    def component(self, a: Multidegree) -> Subquotient:
        if a not in self._components:
            self._components[a] = self._component(a)
        return self._components[a]

    def dim(self, a: Multidegree) -> int:
        if any(x < 0 for x in a):
            return 0
        return self.component(a).dim

    def multiply(self, t: int, a: Multidegree) -> List[Vector]:
        """Images of the basis of degree a under x_t, in the basis of degree a + e_t."""
        key = (t, a)
        if key not in self._multiplications:
            source = self.component(a)
            target = self.component(add(a, unit(self.nvars, t)))
            images = self._ambient_multiply(t, a, source.representatives)
            self._multiplications[key] = target.coordinates(images)
        return self._multiplications[key]

    def multiply_vector(self, t: int, a: Multidegree, coordinates: Vector) -> Vector:
        domain = self.field.domain
        columns = self.multiply(t, a)
        size = self.dim(add(a, unit(self.nvars, t)))
        result = [domain.zero] * size
        for coefficient, column in zip(coordinates, columns):
            if coefficient:
                for row in range(size):
                    result[row] += coefficient * column[row]
        return result

    def tor(self, a: Multidegree) -> Tuple[int, ...]:
        """dim Tor_j(M, k)_a for j = 0 .. n, from the Koszul complex on the variables.

        In degree a the complex is ⊕_{|T|=j} M_{a - e_T} with
        d(m ⊗ e_T) = Σ_{t∈T} sign(t, T) x_t m ⊗ e_{T∖t}.
        """
        if a in self._tor:
            return self._tor[a]
        n = self.nvars
        support = [t for t in range(n) if a[t] > 0]
        blocks: List[Dict[Tuple[int, ...], Tuple[int, int]]] = []
        sizes: List[int] = []
        for j in range(len(support) + 1):
            offsets: Dict[Tuple[int, ...], Tuple[int, int]] = {}
            offset = 0
            for chosen in combinations(support, j):
                size = self.dim(subtract(a, _indicator(n, chosen)))
                offsets[chosen] = (offset, size)
                offset += size
            blocks.append(offsets)
            sizes.append(offset)
        ranks = [0] * (len(support) + 2)
        for j in range(1, len(support) + 1):
            if not sizes[j] or not sizes[j - 1]:
                continue
            entries = zeros(sizes[j - 1], sizes[j], self.field)
            for chosen, (column_offset, size) in blocks[j].items():
                if not size:
                    continue
                source = subtract(a, _indicator(n, chosen))
                for position, t in enumerate(chosen):
                    smaller = chosen[:position] + chosen[position + 1 :]
                    row_offset, target_size = blocks[j - 1][smaller]
                    negate = position % 2 == 1
                    for column, image in enumerate(self.multiply(t, source)):
                        for row in range(target_size):
                            value = -image[row] if negate else image[row]
                            if value:
                                entries[row_offset + row][column_offset + column] += value
            ranks[j] = rank(matrix(entries, (sizes[j - 1], sizes[j]), self.field))
        result = [0] * (n + 1)
        for j in range(len(support) + 1):
            result[j] = sizes[j] - ranks[j] - ranks[j + 1]
        self._tor[a] = tuple(result)
        return self._tor[a]

    def betti_table(self, box: Multidegree) -> BettiTable:
        entries = []
        for a in box_degrees(box):
            for j, value in enumerate(self.tor(a)):
                if value:
                    entries.append(BettiEntry(j, a, value))
        return BettiTable(self.nvars, entries, box)

    def stable_betti_table(self, rounds: int) -> BettiTable:
        """Betti table over [0, σ], confirmed by enlarging the box by 1 up to ``rounds`` times."""
        box = self.stable_degree()
        table = self.betti_table(box)
        if not rounds:
            return table
        previous_box, previous_table = box, table
        for _ in range(rounds):
            bigger = tuple(x + 1 for x in box)
            enlarged = self.betti_table(bigger)
            if enlarged == table:
                return table
            logger.info(f"Betti table changed when the box grew from {box} to {bigger}")
            previous_box, previous_table = box, table
            box, table = bigger, enlarged
        raise BoxStabilityError(
            f"Betti table still changing after {rounds} enlargements of the box",
            (previous_box, box),
            (previous_table.as_dict(), table.as_dict()),
        )

    def monomial_image(self, a: Multidegree, exponent: Multidegree, coordinates: Vector) -> Vector:
        """Multiply an element of degree a by the monomial x^exponent."""
        current, vector = a, coordinates
        for t, power in enumerate(exponent):
            for _ in range(power):
                vector = self.multiply_vector(t, current, vector)
                current = add(current, unit(self.nvars, t))
        return vector

    def minimal_generators(self, box: Multidegree) -> List[Generator]:
        """Elements of degree ≤ box whose classes span M_a / Σ x_t M_{a-e_t} in each degree."""
        found = []
        for a in box_degrees(box):
            size = self.dim(a)
            if not size:
                continue
            image = []
            for t in range(self.nvars):
                if a[t] > 0:
                    image.extend(self.multiply(t, subtract(a, unit(self.nvars, t))))
            piece = Subquotient(size, identity(size, self.field), image, self.field)
            found.extend(Generator(a, rep) for rep in piece.representatives)
        return found

    def minimal_presentation(self, box: Multidegree) -> Tuple[List[Generator], List[Relation]]:
        """Minimal generators and minimal relations among them, degreewise up to ``box``.

        A relation is a tuple of (generator index, coefficient, monomial exponent)
        terms, homogeneous of its degree.
        """
        generators = self.minimal_generators(box)
        relations: List[Relation] = []
        syzygies: Dict[Multidegree, Tuple[List[int], List[Vector]]] = {}
        for a in box_degrees(box):
            present = [k for k, g in enumerate(generators) if leq(g.degree, a)]
            if not present:
                continue
            columns = [
                self.monomial_image(
                    generators[k].degree,
                    subtract(a, generators[k].degree),
                    generators[k].coordinates,
                )
                for k in present
            ]
            size = self.dim(a)
            if size:
                found = kernel(from_columns(columns, size, self.field), self.field)
            else:
                found = identity(len(present), self.field)
            syzygies[a] = (present, found)
            if not found:
                continue
            lifted = []
            position = {k: p for p, k in enumerate(present)}
            for t in range(self.nvars):
                below = subtract(a, unit(self.nvars, t))
                if below not in syzygies:
                    continue
                below_present, below_found = syzygies[below]
                for vector in below_found:
                    moved = [self.field.domain.zero] * len(present)
                    for index, value in zip(below_present, vector):
                        moved[position[index]] = value
                    lifted.append(moved)
            piece = Subquotient(len(present), found, lifted, self.field)
            for rep in piece.representatives:
                terms = tuple(
                    (k, value, subtract(a, generators[k].degree))
                    for k, value in zip(present, rep)
                    if value
                )
                relations.append(Relation(a, terms))
        return generators, relations


def _indicator(n: int, chosen: Sequence[int]) -> Multidegree:
    return tuple(1 if t in chosen else 0 for t in range(n))
