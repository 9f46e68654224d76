from dataclasses import dataclass
from typing import Tuple

from ..core.cyclotomic import Cyclotomic

NO_LABEL = -1


@dataclass(frozen=True)
class PairLabelTable:
    """
    Inner products compressed to integer labels.

    labels[j][k] is the label of <phi_j, phi_k> for j != k and NO_LABEL on
    the diagonal; two pairs share a label exactly when their values agree.
    """
    n: int
    labels: Tuple[Tuple[int, ...], ...]
    values: Tuple[Cyclotomic, ...]
    conj: Tuple[int, ...]

    def label(self, j: int, k: int) -> int:
        return self.labels[j][k]

    def value_of_label(self, label: int) -> Cyclotomic:
        return self.values[label]


@dataclass(frozen=True)
class TripleLabelTable:
    """Triple products compressed to integer labels, flattened as j*n*n + k*n + l"""
    n: int
    labels: Tuple[int, ...]
    values: Tuple[Cyclotomic, ...]
    conj: Tuple[int, ...]

    def label(self, j: int, k: int, l: int) -> int:
        return self.labels[(j * self.n + k) * self.n + l]

    def value_of_label(self, label: int) -> Cyclotomic:
        return self.values[label]
