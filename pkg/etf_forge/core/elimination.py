"""
Fraction-free elimination over the cyclotomic integers Z[zeta_m].

Vectors are lists of integer coordinate tuples (one tuple of length phi(m)
per entry). Only the span of a vector matters here, so every vector may be
rescaled by a nonzero rational at will: residuals are kept primitive by
dividing out the integer content, and each basis vector is multiplied by
the adjugate of its pivot so that the pivot becomes the rational integer
norm N. Eliminating with such a vector needs no division:

    r' = N * r - r[pivot] * b
"""
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .cyclotomic import Cyclotomic, euler_phi, power_table, units

Coords = Tuple[int, ...]
Vector = Tuple[Coords, ...]


class RingArithmetic:
    """Integer arithmetic in Z[zeta_m] on canonical coordinate tuples"""

    def __init__(self, m: int):
        self.m = m
        self.phi = euler_phi(m)
        self.table = power_table(m)
        self.zero: Coords = (0,) * self.phi
        self.conjugators = [k for k in units(m) if k != 1]

    def _fold(self, residues: List[int]) -> Coords:
        phi = self.phi
        out = residues[:phi]
        for k in range(phi, self.m):
            c = residues[k]
            if c:
                for i, t in enumerate(self.table[k]):
                    if t:
                        out[i] += c * t
        return tuple(out)

    def mul(self, a: Coords, b: Coords) -> Coords:
        m = self.m
        residues = [0] * m
        right = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in right:
                    residues[(i + j) % m] += x * y
        return self._fold(residues)

    def galois(self, a: Coords, k: int) -> Coords:
        m = self.m
        residues = [0] * m
        for i, x in enumerate(a):
            if x:
                residues[(i * k) % m] += x
        return self._fold(residues)

    def adjugate(self, a: Coords) -> Coords:
        """Product of the nontrivial Galois conjugates, so a * adjugate(a) is the norm"""
        result = (1,) + (0,) * (self.phi - 1)
        for k in self.conjugators:
            result = self.mul(result, self.galois(a, k))
        return result

    # ------------------------------
    # Vector Operations
    # ------------------------------
    @staticmethod
    def is_zero(vector: Vector) -> bool:
        return not any(any(c) for c in vector)

    @staticmethod
    def primitive(vector: Vector) -> Vector:
        g = 0
        for coords in vector:
            for c in coords:
                if c:
                    g = gcd(g, c)
                    if g == 1:
                        return vector
        if g in (0, 1):
            return vector
        return tuple(tuple(c // g for c in coords) for coords in vector)

    def pivot_form(self, vector: Vector) -> Tuple[int, Vector, int]:
        """(pivot, b, N) with b[pivot] == (N, 0, ..., 0) and b spanning the same line"""
        pivot = next(i for i, coords in enumerate(vector) if any(coords))
        adjugate = self.adjugate(vector[pivot])
        scaled = tuple(self.mul(coords, adjugate) if any(coords) else coords for coords in vector)
        scaled = self.primitive(scaled)
        return pivot, scaled, scaled[pivot][0]

    def eliminate(self, residual: Vector, pivot: int, basis: Vector, norm: int) -> Vector:
        c = residual[pivot]
        if not any(c):
            return residual
        out = []
        for r, b in zip(residual, basis):
            if any(b):
                cb = self.mul(c, b)
                out.append(tuple(norm * x - y for x, y in zip(r, cb)))
            else:
                out.append(tuple(norm * x for x in r))
        return self.primitive(tuple(out))


def to_integral(vector: Sequence[Cyclotomic]) -> Vector:
    """Rescale by the lcm of all denominators and return integer coordinates"""
    denominator = 1
    for z in vector:
        for c in z.coeffs:
            denominator = lcm(denominator, c.denominator)
    return tuple(tuple(int(c * denominator) for c in z.coeffs) for z in vector)


class EchelonBasis:
    """Incrementally grown echelon basis of a span"""

    def __init__(self, arithmetic: RingArithmetic):
        self.arithmetic = arithmetic
        self.rows: List[Tuple[int, Vector, int]] = []

    def reduce(self, vector: Vector) -> Vector:
        for pivot, basis, norm in self.rows:
            vector = self.arithmetic.eliminate(vector, pivot, basis, norm)
        return vector

    def insert(self, vector: Vector) -> bool:
        """Add vector to the span; False when it was already dependent"""
        residual = self.reduce(vector)
        if RingArithmetic.is_zero(residual):
            return False
        self.rows.append(self.arithmetic.pivot_form(residual))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Sequence[Sequence[Cyclotomic]], order: Optional[int] = None) -> int:
    """Exact rank of a family of vectors over Q(zeta_m)"""
    if not vectors:
        return 0
    order = order or vectors[0][0].order
    basis = EchelonBasis(RingArithmetic(order))
    for vector in vectors:
        basis.insert(to_integral(vector))
    return basis.rank
