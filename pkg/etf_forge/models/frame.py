from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from ..core.cyclotomic import Cyclotomic
from .group import Permutation

Row = Tuple[Cyclotomic, ...]
Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class FrameMatrix:
    """d x n synthesis matrix; column j is the frame vector named labels[j]"""
    d: int
    n: int
    order: int
    entries: Tuple[Row, ...] = field(repr=False)
    labels: Tuple[Any, ...] = field(repr=False)

    def column(self, j: int) -> Row:
        return tuple(row[j] for row in self.entries)


@dataclass(frozen=True)
class GramMatrix:
    """G[j][k] = <phi_j, phi_k>, linear in the first argument"""
    n: int
    order: int
    entries: Tuple[Row, ...] = field(repr=False)
    labels: Tuple[Any, ...] = field(repr=False)

    def __getitem__(self, jk: Tuple[int, int]) -> Cyclotomic:
        j, k = jk
        return self.entries[j][k]

    @property
    def diagonal(self) -> Cyclotomic:
        return self.entries[0][0]


@dataclass(frozen=True)
class TripleTable:
    """Triple products on ordered triples of distinct indices"""
    n: int
    order: int
    values: Dict[Triple, Cyclotomic] = field(repr=False)
    labels: Tuple[Any, ...] = field(repr=False)

    def __getitem__(self, jkl: Triple) -> Cyclotomic:
        return self.values[jkl]


@dataclass(frozen=True)
class RowOperator:
    """
    Generalized permutation matrix acting on column vectors.

    Entry r of the input is multiplied by phases[r] and lands in row
    row_map[r].
    """
    row_map: Permutation
    phases: Row = field(repr=False)

    def apply(self, vector: Row) -> Row:
        out = [None] * len(vector)
        for r, value in enumerate(vector):
            out[self.row_map(r)] = self.phases[r] * value
        return tuple(out)

    def to_matrix(self) -> Tuple[Row, ...]:
        d = len(self.phases)
        zero = self.phases[0] - self.phases[0]
        rows = [[zero] * d for _ in range(d)]
        for r in range(d):
            rows[self.row_map(r)][r] = self.phases[r]
        return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class PaleySymmetryGenerators:
    modulation_perms: Tuple[Permutation, ...]
    translation_perm: Permutation
    galois_perm: Permutation
    modulations: Tuple[RowOperator, ...] = field(repr=False)
    translation: RowOperator = field(repr=False)
    galois: RowOperator = field(repr=False)

    def pairs(self):
        """(operator, induced column permutation) for every generator"""
        yield from zip(self.modulations, self.modulation_perms)
        yield self.translation, self.translation_perm
        yield self.galois, self.galois_perm

    def column_generators(self) -> Tuple[Permutation, ...]:
        return self.modulation_perms + (self.translation_perm, self.galois_perm)
