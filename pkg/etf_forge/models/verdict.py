from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..core.cyclotomic import Cyclotomic


@dataclass(frozen=True)
class DifferenceSetVerdict:
    ok: bool
    v: int
    k: int
    lam: Optional[int] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class EquiangularVerdict:
    ok: bool
    value: Optional[Cyclotomic] = None
    reason: Optional[str] = None

    @property
    def rational_value(self) -> Optional[Fraction]:
        return None if self.value is None else self.value.as_rational()


@dataclass(frozen=True)
class TightVerdict:
    ok: bool
    bound: Optional[Fraction] = None
    rank: Optional[int] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class UniformVerdict:
    ok: bool
    real_part: Optional[Cyclotomic] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class WelchVerdict:
    ok: bool
    expected: Optional[Fraction] = None
    measured: Optional[Fraction] = None


@dataclass(frozen=True)
class DesignVerdict:
    ok: bool
    t: int
    lam: Optional[int] = None
    reason: Optional[str] = None
