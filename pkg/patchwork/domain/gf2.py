"""
Álgebra linear sobre F2 com palavras inteiras.
O bit i de um inteiro representa a coordenada i. Ortantes usam '+' = 0 e '-' = 1,
então o ortante base de Q^n é o inteiro 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from patchwork.core.exceptions import InvalidInputError

MINUS_SIGNS = ("-", "−")


def dot(a: int, b: int) -> int:
    """Produto escalar padrão em F2."""
    return (a & b).bit_count() & 1


def reduce_coords(coords: Sequence[int]) -> int:
    """Redução módulo 2 de um vetor inteiro."""
    bits = 0
    for i, c in enumerate(coords):
        if c & 1:
            bits |= 1 << i
    return bits


def parse_orthant(text: str, n: Optional[int] = None) -> int:
    """Converte uma string de sinais ('+', '-' ou '−') em palavra de bits."""
    if n is not None and len(text) != n:
        raise InvalidInputError(f"orthant '{text}'", f"must have length {n}")
    bits = 0
    for i, ch in enumerate(text):
        if ch in MINUS_SIGNS:
            bits |= 1 << i
        elif ch != "+":
            raise InvalidInputError(
                f"orthant '{text}'", f"Invalid sign character '{ch}'"
            )
    return bits


def format_orthant(bits: int, n: int) -> str:
    return "".join("-" if (bits >> i) & 1 else "+" for i in range(n))


def gf2_rank(rows: Iterable[int]) -> int:
    """Posto sobre F2 por eliminação com pivô no bit mais alto."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            p = row.bit_length() - 1
            if p not in pivots:
                pivots[p] = row
                break
            row ^= pivots[p]
    return len(pivots)


def _echelon(vectors: Iterable[int]) -> dict[int, int]:
    """Forma escalonada reduzida indexada pelo pivô de cada linha."""
    pivots: dict[int, int] = {}
    for v in vectors:
        for p in sorted(pivots, reverse=True):
            if (v >> p) & 1:
                v ^= pivots[p]
        if not v:
            continue
        p = v.bit_length() - 1
        for q, row in pivots.items():
            if (row >> p) & 1:
                pivots[q] = row ^ v
        pivots[p] = v
    return pivots


@dataclass(frozen=True)
class F2Subspace:
    """
    Subespaço de F2^n em forma escalonada reduzida canônica.
    Dois subespaços iguais têm exatamente a mesma base, então a igualdade é estrutural.
    """

    n: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, n: int, vectors: Iterable[int]) -> "F2Subspace":
        pivots = _echelon(vectors)
        return cls(n, tuple(pivots[p] for p in sorted(pivots, reverse=True)))

    @classmethod
    def zero(cls, n: int) -> "F2Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "F2Subspace":
        return cls(n, tuple(1 << i for i in reversed(range(n))))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivot_mask(self) -> int:
        mask = 0
        for row in self.basis:
            mask |= 1 << (row.bit_length() - 1)
        return mask

    def reduce(self, v: int) -> int:
        """Representante de v + V com zeros em todos os pivôs (o menor inteiro da classe)."""
        for row in self.basis:
            if (v >> (row.bit_length() - 1)) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def orthogonal(self) -> "F2Subspace":
        """Anulador pelo pareamento padrão; dimensão n - dim."""
        pivots = {row.bit_length() - 1: row for row in self.basis}
        vectors = []
        for j in range(self.n):
            if j in pivots:
                continue
            x = 1 << j
            for p, row in pivots.items():
                if (row >> j) & 1:
                    x |= 1 << p
            vectors.append(x)
        return F2Subspace.span(self.n, vectors)

    def __add__(self, other: "F2Subspace") -> "F2Subspace":
        return F2Subspace.span(self.n, self.basis + other.basis)

    def intersection(self, other: "F2Subspace") -> "F2Subspace":
        return (self.orthogonal() + other.orthogonal()).orthogonal()

    def elements(self) -> Iterator[int]:
        """Enumera os 2^dim elementos."""
        for mask in range(1 << self.dim):
            v = 0
            for i, row in enumerate(self.basis):
                if (mask >> i) & 1:
                    v ^= row
            yield v

    def complement_representatives(self) -> list[int]:
        """Representantes canônicos de F2^n / V, em ordem crescente."""
        free = [j for j in range(self.n) if not (self.pivot_mask >> j) & 1]
        reps = []
        for mask in range(1 << len(free)):
            v = 0
            for i, j in enumerate(free):
                if (mask >> i) & 1:
                    v |= 1 << j
            reps.append(v)
        return sorted(reps)


@dataclass(frozen=True)
class F2AffineSubspace:
    """Classe lateral base + direction; a base é o menor membro visto como inteiro."""

    base: int
    direction: F2Subspace

    @classmethod
    def of(cls, base: int, direction: F2Subspace) -> "F2AffineSubspace":
        return cls(direction.reduce(base), direction)

    @classmethod
    def from_members(
        cls, n: int, members: Sequence[int]
    ) -> Optional["F2AffineSubspace"]:
        """Constrói a classe lateral gerada pelos membros; None se eles não formam uma."""
        if not members:
            return None
        first = members[0]
        direction = F2Subspace.span(n, (m ^ first for m in members))
        coset = cls.of(first, direction)
        if len(set(members)) != coset.size:
            return None
        return coset

    @property
    def n(self) -> int:
        return self.direction.n

    @property
    def size(self) -> int:
        return 1 << self.direction.dim

    def contains(self, s: int) -> bool:
        return self.direction.contains(s ^ self.base)

    def members(self) -> list[int]:
        return sorted(self.base ^ v for v in self.direction.elements())

    def translate(self, v: int) -> "F2AffineSubspace":
        return F2AffineSubspace.of(self.base ^ v, self.direction)

    def intersect(self, other: "F2AffineSubspace") -> Optional["F2AffineSubspace"]:
        return intersect_cosets(self, other)


def intersect_cosets(
    a: F2AffineSubspace, b: F2AffineSubspace
) -> Optional[F2AffineSubspace]:
    """
    Interseção afim sobre F2; None quando vazia.
    Resolve u + v = a + b com u em U e v em V acompanhando a parte de U.
    """
    rows: dict[int, tuple[int, int]] = {}
    for value, u_part in [(r, r) for r in a.direction.basis] + [
        (r, 0) for r in b.direction.basis
    ]:
        for p in sorted(rows, reverse=True):
            if (value >> p) & 1:
                value ^= rows[p][0]
                u_part ^= rows[p][1]
        if value:
            rows[value.bit_length() - 1] = (value, u_part)

    target = a.base ^ b.base
    acc = 0
    for p in sorted(rows, reverse=True):
        if (target >> p) & 1:
            target ^= rows[p][0]
            acc ^= rows[p][1]
    if target:
        return None

    return F2AffineSubspace.of(a.base ^ acc, a.direction.intersection(b.direction))
