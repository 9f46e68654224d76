"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored by its coordinates in the power basis
zeta^0, ..., zeta^(phi(m)-1) after reduction modulo the m-th cyclotomic
polynomial, so two elements are equal exactly when their coordinates are.
Products are folded modulo x^m - 1 first and then reduced with a cached
table of x^k mod Phi_m.
"""
import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol, divisors, totient

from .exceptions import OrderMismatchError, UsageError

Scalar = Union[int, Fraction]

_x = Symbol("x")


# ==============================
# Cyclotomic Polynomials
# ==============================
@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """
    Integer coefficients of Phi_m, constant term first.

    Phi_m is obtained by exact division of x^m - 1 by the product of Phi_d
    over the proper divisors d of m.
    """
    if m < 1:
        raise UsageError(f"cyclotomic order must be positive, got {m}")

    denominator = Poly(1, _x)
    for d in divisors(m)[:-1]:
        denominator = denominator * Poly(list(reversed(cyclotomic_polynomial(d))), _x)

    quotient = Poly(_x**m - 1, _x).exquo(denominator)
    return tuple(int(c) for c in reversed(quotient.all_coeffs()))


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return int(totient(m))


@lru_cache(maxsize=None)
def power_table(m: int) -> Tuple[Tuple[int, ...], ...]:
    """x^k mod Phi_m for k = 0..m-1, as integer coordinate tuples of length phi(m)"""
    phi = euler_phi(m)
    poly = cyclotomic_polynomial(m)
    rows = []
    current = [0] * phi
    current[0] = 1
    for _ in range(m):
        rows.append(tuple(current))
        # multiply by x and fold the degree-phi term back with the monic Phi_m
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            current = [c - top * poly[i] for i, c in enumerate(current)]
    return tuple(rows)


@lru_cache(maxsize=None)
def units(m: int) -> Tuple[int, ...]:
    """Residues k in [1, m] coprime to m (the Galois group of Q(zeta_m))"""
    if m == 1:
        return (1,)
    return tuple(k for k in range(1, m) if gcd(k, m) == 1)


def _reduce(m: int, residues: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    """Canonical coordinates of sum residues[k] * zeta^k, with len(residues) == m"""
    phi = euler_phi(m)
    out = [Fraction(0)] * phi
    table = power_table(m)
    for k, c in enumerate(residues):
        if not c:
            continue
        if k < phi:
            out[k] += c
        else:
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += c * t
    return tuple(out)


# ==============================
# Field Elements
# ==============================
class Cyclotomic:
    """An element of Q(zeta_m) in canonical power-basis form. Immutable."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()):
        if order < 1:
            raise UsageError(f"cyclotomic order must be positive, got {order}")
        residues = [Fraction(0)] * order
        for k, c in enumerate(coeffs):
            residues[k % order] += Fraction(c)
        self.order = order
        self.coeffs = _reduce(order, residues)
        self._hash = None

    @classmethod
    def _canonical(cls, order: int, coeffs: Tuple[Fraction, ...]) -> "Cyclotomic":
        z = object.__new__(cls)
        z.order = order
        z.coeffs = coeffs
        z._hash = None
        return z

    @classmethod
    def _from_residues(cls, order: int, residues: Sequence[Scalar]) -> "Cyclotomic":
        return cls._canonical(order, _reduce(order, residues))

    # ------------------------------
    # Constructors
    # ------------------------------
    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls._canonical(order, (Fraction(0),) * euler_phi(order))

    @classmethod
    def rational(cls, order: int, value: Scalar) -> "Cyclotomic":
        coeffs = [Fraction(0)] * euler_phi(order)
        coeffs[0] = Fraction(value)
        return cls._canonical(order, tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls.rational(order, 1)

    @classmethod
    def from_exponents(cls, order: int, terms: Dict[int, Scalar]) -> "Cyclotomic":
        """Build sum c * zeta^k from a {k: c} mapping"""
        residues = [Fraction(0)] * order
        for k, c in terms.items():
            residues[k % order] += Fraction(c)
        return cls._from_residues(order, residues)

    # ------------------------------
    # Helpers
    # ------------------------------
    def _check(self, other: "Cyclotomic") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"cannot combine elements of Q(zeta_{self.order}) and Q(zeta_{other.order}); "
                f"lift both to order {self.order * other.order // gcd(self.order, other.order)} first"
            )

    def _coerce(self, other) -> Optional["Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            self._check(other)
            return other
        if isinstance(other, Rational):
            return Cyclotomic.rational(self.order, other)
        return None

    # ------------------------------
    # Ring Operations
    # ------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclotomic._canonical(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._canonical(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclotomic._canonical(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, factor: Scalar) -> "Cyclotomic":
        factor = Fraction(factor)
        return Cyclotomic._canonical(self.order, tuple(a * factor for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        m = self.order
        residues = [0] * m
        right = [(j, b) for j, b in enumerate(other.coeffs) if b]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in right:
                residues[(i + j) % m] += a * b
        return Cyclotomic._from_residues(m, residues)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def galois(self, k: int) -> "Cyclotomic":
        """Apply the automorphism zeta -> zeta^k (k coprime to m)"""
        m = self.order
        if gcd(k, m) != 1:
            raise UsageError(f"{k} is not a unit modulo {m}")
        residues = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            if c:
                residues[(i * k) % m] += c
        return Cyclotomic._from_residues(m, residues)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % self.order)

    def norm(self) -> Fraction:
        """Field norm down to Q (product over all Galois conjugates)"""
        product = Cyclotomic.one(self.order)
        for k in units(self.order):
            product = product * self.galois(k)
        return product.as_rational()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        adjugate = Cyclotomic.one(self.order)
        for k in units(self.order):
            if k != 1:
                adjugate = adjugate * self.galois(k)
        norm = (self * adjugate).as_rational()
        return adjugate.scale(1 / norm)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self.scale(Fraction(1) / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        return self * other.inverse()

    def lift(self, order: int) -> "Cyclotomic":
        """Embed into Q(zeta_order); requires self.order to divide order"""
        if order % self.order:
            raise OrderMismatchError(f"cannot lift order {self.order} into order {order}")
        step = order // self.order
        residues = [Fraction(0)] * order
        for i, c in enumerate(self.coeffs):
            if c:
                residues[i * step] += c
        return Cyclotomic._from_residues(order, residues)

    # ------------------------------
    # Predicates
    # ------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Optional[Fraction]:
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self == self.conj()

    def is_purely_imaginary(self) -> bool:
        return (self + self.conj()).is_zero()

    def approx(self) -> complex:
        """Floating-point value under zeta = exp(2 pi i / m); for display only"""
        m = self.order
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / m) for k, c in enumerate(self.coeffs) if c),
            0j,
        )

    # ------------------------------
    # Dunder Plumbing
    # ------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.as_rational() == other
        return NotImplemented

    def __hash__(self):
        # rationals hash like the int or Fraction they equal
        if self._hash is None:
            value = self.as_rational()
            self._hash = hash(value) if value is not None else hash((self.order, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z{self.order}^{k}")
            else:
                terms.append(f"{c}*z{self.order}^{k}")
        return " + ".join(terms) or "0"


# ==============================
# Module-Level Operations
# ==============================
def root_of_unity(m: int, k: int) -> Cyclotomic:
    """zeta_m^(k mod m) in canonical form"""
    if m < 1:
        raise UsageError(f"cyclotomic order must be positive, got {m}")
    return Cyclotomic.from_exponents(m, {k % m: 1})


def lift(z: Cyclotomic, order: int) -> Cyclotomic:
    return z.lift(order)


def conj(z: Cyclotomic) -> Cyclotomic:
    return z.conj()


def is_real(z: Cyclotomic) -> bool:
    return z.is_real()


def is_purely_imaginary(z: Cyclotomic) -> bool:
    return z.is_purely_imaginary()


def quadratic_residue_sum(p: int) -> Cyclotomic:
    """a = sum of zeta_p^t over the nonzero squares t of F_p"""
    residues = sorted({(t * t) % p for t in range(1, p)})
    return Cyclotomic.from_exponents(p, {t: 1 for t in residues})
