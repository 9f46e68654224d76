from fractions import Fraction
from typing import List, Tuple

from pydantic import BaseModel, Field, field_validator

from ..core.cyclotomic import Cyclotomic, euler_phi


class CyclotomicSchema(BaseModel):
    """Element of Q(zeta_m) as [numerator, denominator] decimal strings in the power basis"""
    m: int = Field(..., ge=1, description="Cyclotomic order")
    c: List[Tuple[str, str]] = Field(..., description="phi(m) coefficient pairs")

    @field_validator("c")
    @classmethod
    def validate_coefficients(cls, v):
        for numerator, denominator in v:
            if int(denominator) == 0:
                raise ValueError("coefficient denominator must be nonzero")
            int(numerator)
        return v

    @classmethod
    def from_domain(cls, z: Cyclotomic) -> "CyclotomicSchema":
        return cls(m=z.order, c=[(str(x.numerator), str(x.denominator)) for x in z.coeffs])

    def to_domain(self) -> Cyclotomic:
        if len(self.c) != euler_phi(self.m):
            raise ValueError(f"expected {euler_phi(self.m)} coefficients for m = {self.m}, got {len(self.c)}")
        coeffs = tuple(Fraction(int(a), int(b)) for a, b in self.c)
        z = Cyclotomic(self.m, coeffs)
        if z.coeffs != coeffs:
            raise ValueError("coefficients are not in canonical form")
        return z
