from typing import List

from pydantic import BaseModel, Field

from ..models.design import BlockDesign
from ..models.group import PermGroup, Permutation


class PermGroupSchema(BaseModel):
    """Generators in one-line image form, sorted"""
    n: int = Field(..., ge=1)
    order: int = Field(..., ge=1)
    generators: List[List[int]]
    base_orbit_sizes: List[int] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, group: PermGroup) -> "PermGroupSchema":
        return cls(
            n=group.n,
            order=group.order,
            generators=[list(g.images) for g in sorted(group.generators)],
            base_orbit_sizes=list(group.base_orbit_sizes),
        )

    def to_domain(self) -> PermGroup:
        return PermGroup(
            n=self.n,
            generators=tuple(Permutation(tuple(g)) for g in self.generators),
            order=self.order,
            base_orbit_sizes=tuple(self.base_orbit_sizes),
        )


class BlockDesignSchema(BaseModel):
    """Blocks as sorted index lists, sorted lexicographically"""
    v: int = Field(..., ge=1)
    k: int = Field(..., ge=0)
    blocks: List[List[int]]

    @classmethod
    def from_domain(cls, design: BlockDesign) -> "BlockDesignSchema":
        return cls(v=design.v, k=design.k, blocks=[list(b) for b in design.blocks])

    def to_domain(self) -> BlockDesign:
        return BlockDesign.from_blocks(self.v, self.k, self.blocks)
