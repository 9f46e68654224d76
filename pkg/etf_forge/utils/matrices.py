from fractions import Fraction
from typing import Sequence, Tuple, Union

from ..core.cyclotomic import Cyclotomic

Matrix = Tuple[Tuple[Cyclotomic, ...], ...]


def identity(n: int, order: int, scale: Union[int, Fraction] = 1) -> Matrix:
    zero = Cyclotomic.zero(order)
    diagonal = Cyclotomic.rational(order, scale)
    return tuple(tuple(diagonal if i == j else zero for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[Cyclotomic]], b: Sequence[Sequence[Cyclotomic]]) -> Matrix:
    order = a[0][0].order
    columns = list(zip(*b))
    rows = []
    for row in a:
        nonzero = [(k, x) for k, x in enumerate(row) if x]
        out = []
        for col in columns:
            total = Cyclotomic.zero(order)
            for k, x in nonzero:
                if col[k]:
                    total = total + x * col[k]
            out.append(total)
        rows.append(tuple(out))
    return tuple(rows)


def scale(a: Sequence[Sequence[Cyclotomic]], factor) -> Matrix:
    return tuple(tuple(x * factor for x in row) for row in a)


def subtract(a: Sequence[Sequence[Cyclotomic]], b: Sequence[Sequence[Cyclotomic]]) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def conjugate_transpose(a: Sequence[Sequence[Cyclotomic]]) -> Matrix:
    return tuple(tuple(x.conj() for x in col) for col in zip(*a))


def trace(a: Sequence[Sequence[Cyclotomic]]) -> Cyclotomic:
    total = Cyclotomic.zero(a[0][0].order)
    for i, row in enumerate(a):
        total = total + row[i]
    return total


def is_zero(a: Sequence[Sequence[Cyclotomic]]) -> bool:
    return all(x.is_zero() for row in a for x in row)
