from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Iterable, List, Tuple

from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from ..core.exceptions import BudgetExceededError, UsageError


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., n-1}, stored by its images"""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise UsageError(f"not a permutation: {list(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            cycle = list(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: i -> self(other(i))"""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inverse = [0] * self.n
        for i, j in enumerate(self.images):
            inverse[j] = i
        return Permutation(tuple(inverse))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cycle decomposition including fixed points, each cycle led by its smallest point"""
        seen = set()
        result = []
        for start in range(self.n):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            result.append(tuple(cycle))
        return result

    def apply_to_block(self, block: Iterable[int]) -> Tuple[int, ...]:
        return tuple(sorted(self.images[i] for i in block))

    def to_sympy(self) -> SympyPermutation:
        return SympyPermutation(list(self.images))


@dataclass(frozen=True)
class PermGroup:
    """
    A permutation group on {0, ..., n-1} given by generators and its order.

    Membership, subgroup tests and element listing go through sympy's
    Schreier-Sims implementation; the order is whatever the producer
    established (orbit-stabilizer bookkeeping or Schreier-Sims).
    """
    n: int
    generators: Tuple[Permutation, ...]
    order: int
    base_orbit_sizes: Tuple[int, ...] = field(default=(), compare=False)

    @cached_property
    def sympy_group(self) -> PermutationGroup:
        gens = [g.to_sympy() for g in self.generators] or [SympyPermutation(list(range(self.n)))]
        return PermutationGroup(gens)

    def contains(self, perm: Permutation) -> bool:
        if perm.n != self.n:
            return False
        if perm.is_identity():
            return True
        return self.sympy_group.contains(perm.to_sympy())

    def elements(self, cap: int) -> List[Permutation]:
        """Materialize every element when the order is at most cap"""
        if self.order > cap:
            raise BudgetExceededError(
                f"group of order {self.order} exceeds the element cap {cap}",
                report={"order": self.order, "group_cap": cap},
            )
        return sorted(Permutation(tuple(g.array_form)) for g in self.sympy_group.generate())

    def schreier_sims_order(self) -> int:
        return int(self.sympy_group.order())


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n=n, generators=(), order=1)


def symmetric_group(n: int) -> PermGroup:
    """S_n from a transposition and an n-cycle"""
    if n == 1:
        return trivial_group(1)
    transposition = Permutation.from_cycles(n, [(0, 1)])
    if n == 2:
        return PermGroup(n=2, generators=(transposition,), order=2)
    cycle = Permutation(tuple(list(range(1, n)) + [0]))
    return PermGroup(n=n, generators=(transposition, cycle), order=factorial(n))


def generated_group(n: int, generators: Iterable[Permutation]) -> PermGroup:
    """Group generated by explicit permutations; order from Schreier-Sims"""
    gens = tuple(sorted({g for g in generators if not g.is_identity()}))
    unsized = PermGroup(n=n, generators=gens, order=0)
    return PermGroup(n=n, generators=gens, order=unsized.schreier_sims_order())
