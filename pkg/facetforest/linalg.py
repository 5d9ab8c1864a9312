"""Exact linear algebra over QQ and GF(p) on top of sympy's DomainMatrix."""
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import MalformedInputError

Vector = List[Any]

MAX_PRIME = 2**31


@lru_cache(maxsize=None)
def _prime_field(p: int):
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals or a prime field GF(p)."""

    kind: str = "rational"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise MalformedInputError("The rational field takes no characteristic")
        elif self.kind == "prime":
            if self.p is None or not (2 <= self.p < MAX_PRIME and isprime(self.p)):
                raise MalformedInputError(f"{self.p} is not a prime below 2^31")
        else:
            raise MalformedInputError(f"Unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Read ``q``, a bare prime such as ``2``, or ``p:<prime>``."""
        value = text.strip().lower()
        if value in ("q", "qq", "rational"):
            return cls()
        if value.startswith("p:"):
            value = value[2:]
        try:
            p = int(value)
        except ValueError:
            raise MalformedInputError(f"Unrecognised field {text!r}") from None
        return cls("prime", p)

    @property
    def domain(self):
        return QQ if self.kind == "rational" else _prime_field(self.p)

    def scalar(self, value) -> Any:
        return self.domain.convert(value)

    def __str__(self) -> str:
        return "QQ" if self.kind == "rational" else f"GF({self.p})"


RATIONAL = FieldSpec()
DEFAULT_FIELDS = (RATIONAL, FieldSpec("prime", 2), FieldSpec("prime", 3), FieldSpec("prime", 5))


def matrix(
    rows: Sequence[Sequence[Any]], shape: Tuple[int, int], field: FieldSpec
) -> DomainMatrix:
    domain = field.domain
    converted = [[domain.convert(entry) for entry in row] for row in rows]
    return DomainMatrix(converted, shape, domain)


def zeros(nrows: int, ncols: int, field: FieldSpec) -> List[Vector]:
    zero = field.domain.zero
    return [[zero] * ncols for _ in range(nrows)]


def from_columns(columns: Sequence[Vector], nrows: int, field: FieldSpec) -> DomainMatrix:
    rows = [[column[r] for column in columns] for r in range(nrows)]
    return matrix(rows, (nrows, len(columns)), field)


def rank(m: DomainMatrix) -> int:
    nrows, ncols = m.shape
    if not nrows or not ncols:
        return 0
    return m.rank()


def kernel(m: DomainMatrix, field: FieldSpec) -> List[Vector]:
    """A basis of the null space, one vector per basis element."""
    nrows, ncols = m.shape
    if not ncols:
        return []
    if not nrows:
        return identity(ncols, field)
    return [list(row) for row in m.nullspace().to_list()]


def identity(size: int, field: FieldSpec) -> List[Vector]:
    vectors = zeros(size, size, field)
    for i in range(size):
        vectors[i][i] = field.domain.one
    return vectors


def pivot_columns(columns: Sequence[Vector], nrows: int, field: FieldSpec) -> List[int]:
    """Positions of a maximal independent subfamily, chosen left to right."""
    if not columns or not nrows:
        return []
    _, pivots = from_columns(columns, nrows, field).rref()
    return list(pivots)


class Subquotient:
    """The quotient Z/B of subspaces B ⊆ Z ⊆ k^d, with chosen coset representatives.

    ``representatives`` are vectors of Z whose classes form a basis of Z/B, and
    ``coordinates`` expresses vectors of Z in that basis (ignoring B).
    """

    def __init__(
        self,
        ambient: int,
        spanning: Sequence[Vector],
        relations: Sequence[Vector],
        field: FieldSpec,
    ):
        self.ambient = ambient
        self.field = field
        kept = pivot_columns(relations, ambient, field)
        self.relation_basis = [list(relations[j]) for j in kept]
        combined = self.relation_basis + [list(v) for v in spanning]
        offset = len(self.relation_basis)
        self.representatives = [
            combined[j] for j in pivot_columns(combined, ambient, field) if j >= offset
        ]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, vectors: Sequence[Vector]) -> List[Vector]:
        if not self.dim:
            return [[] for _ in vectors]
        if not vectors:
            return []
        basis = self.relation_basis + self.representatives
        size = len(basis)
        reduced, pivots = from_columns(basis + list(vectors), self.ambient, self.field).rref()
        if list(pivots[:size]) != list(range(size)) or len(pivots) > size:
            raise ValueError("Vector outside the subspace spanned by the subquotient")
        rows = reduced.to_list()
        offset = len(self.relation_basis)
        return [
            [rows[r][size + k] for r in range(offset, size)] for k in range(len(vectors))
        ]
