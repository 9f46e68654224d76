from typing import List, Optional

from pydantic import BaseModel, Field

from ..models.field import FieldSpec
from ..services.finite_field import field_new


class FieldSchema(BaseModel):
    """GF(p^s) by its monic modulus, constant term first"""
    p: int = Field(..., ge=2)
    s: int = Field(..., ge=1)
    modulus: List[int]

    @classmethod
    def from_domain(cls, field: FieldSpec) -> "FieldSchema":
        return cls(p=field.p, s=field.s, modulus=list(field.modulus))

    def to_domain(self) -> FieldSpec:
        return field_new(self.p, self.s, self.modulus)


class FieldRequest(BaseModel):
    p: int = Field(..., ge=2, description="Characteristic")
    s: int = Field(1, ge=1, description="Degree over F_p")
    modulus: Optional[List[int]] = Field(None, description="Monic modulus, constant term first")
