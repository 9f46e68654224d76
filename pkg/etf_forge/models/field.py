from dataclasses import dataclass, field
from typing import Dict, Tuple

# Coordinates over F_p in the primitive element basis alpha^0, ..., alpha^(s-1)
FfElt = Tuple[int, ...]
MatrixFp = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FieldSpec:
    """
    A concrete model of GF(p^s).

    Elements are coordinate vectors over F_p. Multiplication goes through the
    discrete-log table built from powers of the companion matrix, so
    exp_table[k] holds the coordinates of alpha^k = C^k e_1.
    """
    p: int
    s: int
    modulus: Tuple[int, ...]  # constant term first, monic leading 1 included
    companion: MatrixFp
    exp_table: Tuple[FfElt, ...] = field(repr=False, compare=False)
    log_table: Dict[FfElt, int] = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.s

    @property
    def zero(self) -> FfElt:
        return (0,) * self.s

    @property
    def one(self) -> FfElt:
        return self.exp_table[0]

    # ------------------------------
    # Element Arithmetic
    # ------------------------------
    def element(self, value) -> FfElt:
        """Coerce an int (prime fields) or a coordinate sequence"""
        if isinstance(value, int):
            if self.s != 1:
                raise ValueError("integer elements are only accepted for prime fields")
            return (value % self.p,)
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.s:
            raise ValueError(f"expected {self.s} coordinates, got {len(coords)}")
        return coords

    def add(self, x: FfElt, y: FfElt) -> FfElt:
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x: FfElt) -> FfElt:
        return tuple(-a % self.p for a in x)

    def sub(self, x: FfElt, y: FfElt) -> FfElt:
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def scalar(self, c: int, x: FfElt) -> FfElt:
        return tuple((c * a) % self.p for a in x)

    def log(self, x: FfElt) -> int:
        return self.log_table[x]

    def from_log(self, k: int) -> FfElt:
        return self.exp_table[k % (self.q - 1)]

    def mul(self, x: FfElt, y: FfElt) -> FfElt:
        if x == self.zero or y == self.zero:
            return self.zero
        return self.from_log(self.log_table[x] + self.log_table[y])

    def power(self, x: FfElt, k: int) -> FfElt:
        if x == self.zero:
            return self.zero
        return self.from_log(self.log_table[x] * k)

    def frobenius(self, x: FfElt) -> FfElt:
        return self.power(x, self.p)

    def is_square(self, x: FfElt) -> bool:
        return x != self.zero and self.log_table[x] % 2 == 0

    def elements(self) -> Tuple[FfElt, ...]:
        """All elements in the frame column order: 0, then alpha^0, alpha^1, ..."""
        return (self.zero,) + self.exp_table

    def label(self, x: FfElt):
        """An int for prime fields, the coordinate tuple otherwise"""
        return x[0] if self.s == 1 else tuple(x)


@dataclass(frozen=True)
class Intertwiner:
    """Symmetric invertible S over F_p with SC = C^T S and the normal-basis constraints"""
    S: MatrixFp
    S_inverse: MatrixFp
    residue_log: int  # the normal-basis residue is alpha^residue_log
