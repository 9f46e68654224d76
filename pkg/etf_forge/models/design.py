from dataclasses import dataclass
from typing import Optional, Tuple

Block = Tuple[int, ...]


@dataclass(frozen=True)
class BlockDesign:
    """Distinct k-subsets of {0, ..., v-1}, kept sorted lexicographically"""
    v: int
    k: int
    blocks: Tuple[Block, ...]

    @classmethod
    def from_blocks(cls, v: int, k: int, blocks) -> "BlockDesign":
        normalized = sorted({tuple(sorted(b)) for b in blocks})
        if any(len(b) != k for b in normalized):
            raise ValueError(f"every block must have size {k}")
        if any(i < 0 or i >= v for b in normalized for i in b):
            raise ValueError(f"block entries must lie in 0..{v - 1}")
        return cls(v=v, k=k, blocks=tuple(normalized))

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, block) -> bool:
        return tuple(sorted(block)) in set(self.blocks)


@dataclass(frozen=True)
class MatroidReport:
    spark: int
    lower_bound: int
    lower_bound_attained: bool
    bender: BlockDesign
    design_degree: int
    design_lambda: Optional[int]
    binder_nonempty: bool
