"""
Motor de homologia celular sobre F2.
Complexos são guardados por classes de células coladas; o bordo de cada célula é
a soma formal das suas faces de codimensão 1, todas com coeficiente 1.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from patchwork.core.config import get_settings, get_worker_count
from patchwork.domain.gf2 import gf2_rank
from patchwork.domain.lattice import Simplex

logger = logging.getLogger(__name__)

# Abaixo disso a criação dos processos custa mais que a eliminação.
PARALLEL_RANK_MIN_CELLS = 20000


class GluedCellId(NamedTuple):
    """Cópia s(σ) de um simplexo, com s reduzido módulo T2⊥ da face mínima."""

    simplex: Simplex
    orthant_class: int


@dataclass
class CellComplex:
    """
    Complexo celular: células por dimensão e, para cada m-célula, os índices das
    (m-1)-células do seu bordo.
    """

    cells: list[list[GluedCellId]]
    boundary: list[list[tuple[int, ...]]]
    index: list[dict[GluedCellId, int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.index:
            self.index = [{c: i for i, c in enumerate(cells)} for cells in self.cells]

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def cell_total(self) -> int:
        return sum(self.counts())

    def euler_characteristic(self) -> int:
        return sum((-1) ** m * c for m, c in enumerate(self.counts()))

    def cofaces(self, dim: int) -> list[list[int]]:
        """Para cada célula de dimensão dim, as (dim+1)-células que a têm no bordo."""
        result: list[list[int]] = [[] for _ in self.cells[dim]]
        if dim + 1 <= self.top_dim:
            for j, faces in enumerate(self.boundary[dim + 1]):
                for i in faces:
                    result[i].append(j)
        return result


def boundary_rows(complex_: CellComplex, m: int) -> list[int]:
    """Linhas de ∂_m como máscaras de bits; vazia fora de 1..top_dim."""
    if m <= 0 or m > complex_.top_dim:
        return []
    rows = []
    for faces in complex_.boundary[m]:
        row = 0
        for i in faces:
            row ^= 1 << i
        rows.append(row)
    return rows


def boundary_ranks(complex_: CellComplex) -> list[int]:
    """
    Postos de ∂_0, ..., ∂_{top+1}.

    A eliminação é Python puro e presa ao GIL; complexos grandes repartem as
    matrizes entre processos (PATCHWORK_THREADS), os demais ficam sequenciais.
    """
    matrices = [boundary_rows(complex_, m) for m in range(complex_.top_dim + 2)]
    workers = min(get_worker_count(), len(matrices))
    if workers > 1 and complex_.cell_total() >= PARALLEL_RANK_MIN_CELLS:
        logger.debug("boundary_ranks: %d processes", workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(gf2_rank, matrices))
    return [gf2_rank(rows) for rows in matrices]


def betti_f2(complex_: CellComplex) -> list[int]:
    """b_m = c_m - posto ∂_m - posto ∂_{m+1}."""
    top = complex_.top_dim
    if top < 0:
        return []
    ranks = boundary_ranks(complex_)
    counts = complex_.counts()
    betti = [counts[m] - ranks[m] - ranks[m + 1] for m in range(top + 1)]
    logger.debug("betti_f2: cells=%s betti=%s", counts, betti)
    return betti


def _closure(complex_: CellComplex) -> list[list[frozenset[int]]]:
    """Faces (em qualquer codimensão) de cada célula, como índices globais."""
    offsets = [0]
    for cells in complex_.cells:
        offsets.append(offsets[-1] + len(cells))
    below: list[list[frozenset[int]]] = [[frozenset() for _ in complex_.cells[0]]]
    for m in range(1, complex_.top_dim + 1):
        layer = []
        for faces in complex_.boundary[m]:
            acc: set[int] = set()
            for i in faces:
                acc.add(offsets[m - 1] + i)
                acc |= below[m - 1][i]
            layer.append(frozenset(acc))
        below.append(layer)
    return below


def barycentric_betti(complex_: CellComplex) -> Optional[list[int]]:
    """
    Oráculo: homologia simplicial da subdivisão baricêntrica (complexo de ordem do
    poset de faces). Devolve None acima de PATCHWORK_ORACLE_CELL_LIMIT células.
    """
    limit = get_settings().oracle_cell_limit
    if complex_.cell_total() > limit:
        logger.info(
            "Barycentric oracle skipped: %d cells > %d", complex_.cell_total(), limit
        )
        return None

    below = _closure(complex_)
    flat_below = [b for layer in below for b in layer]

    # cadeias c_0 < ... < c_j, terminando em cada célula
    chains_by_len: dict[int, set[tuple[int, ...]]] = {}

    def extend(chain: tuple[int, ...]) -> None:
        chains_by_len.setdefault(len(chain), set()).add(chain)
        for lower in flat_below[chain[0]]:
            extend((lower,) + chain)

    for x in range(len(flat_below)):
        extend((x,))

    top = max(chains_by_len) - 1
    simplices = [sorted(chains_by_len.get(j + 1, ())) for j in range(top + 1)]
    index = [{s: i for i, s in enumerate(layer)} for layer in simplices]

    ranks = [0] * (top + 2)
    for j in range(1, top + 1):
        rows = []
        for chain in simplices[j]:
            row = 0
            for drop in range(len(chain)):
                row ^= 1 << index[j - 1][chain[:drop] + chain[drop + 1 :]]
            rows.append(row)
        ranks[j] = gf2_rank(rows)
    return [len(simplices[j]) - ranks[j] - ranks[j + 1] for j in range(top + 1)]
