import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Optional, Sequence, Union

from sympy import factorint

from ..core.cyclotomic import Cyclotomic
from ..core.elimination import rank
from ..core.exceptions import ConsistencyError, NotEtfError, UsageError
from ..models.field import FfElt, FieldSpec
from ..models.frame import FrameMatrix, GramMatrix, TripleTable
from ..models.labels import NO_LABEL, PairLabelTable, TripleLabelTable
from ..models.verdict import EquiangularVerdict, TightVerdict, UniformVerdict, WelchVerdict
from ..utils.matrices import matmul, trace
from .finite_field import apply_matrix, field_new, intertwiner

logger = logging.getLogger(__name__)


# ==============================
# Gram Matrices
# ==============================
def make_gram(entries: Sequence[Sequence[Cyclotomic]], labels: Optional[Sequence[Any]] = None) -> GramMatrix:
    """Validate a square Hermitian matrix with constant real diagonal"""
    n = len(entries)
    if n == 0 or any(len(row) != n for row in entries):
        raise UsageError("a Gram matrix must be square and nonempty")
    order = entries[0][0].order
    rows = tuple(tuple(row) for row in entries)
    for j in range(n):
        for k in range(j, n):
            if rows[j][k].order != order:
                raise UsageError("all Gram entries must share one cyclotomic order")
            if rows[j][k] != rows[k][j].conj():
                raise UsageError(f"Gram matrix is not Hermitian at ({j}, {k})")
    diagonal = rows[0][0]
    if any(rows[j][j] != diagonal for j in range(n)):
        raise UsageError("frame is not equal-norm: Gram diagonal is not constant")
    if diagonal.as_rational() is None or diagonal.as_rational() <= 0:
        raise UsageError("Gram diagonal must be a positive rational")
    labels = tuple(labels) if labels is not None else tuple(range(n))
    return GramMatrix(n=n, order=order, entries=rows, labels=labels)


def gram(frame: FrameMatrix) -> GramMatrix:
    """G[j][k] = sum_r frame[r][j] * conj(frame[r][k])"""
    columns = [frame.column(j) for j in range(frame.n)]
    conjugates = [tuple(x.conj() for x in col) for col in columns]
    zero = Cyclotomic.zero(frame.order)
    entries = []
    for j in range(frame.n):
        row = []
        for k in range(frame.n):
            total = zero
            for x, y in zip(columns[j], conjugates[k]):
                if x and y:
                    total = total + x * y
            row.append(total)
        entries.append(row)
    return make_gram(entries, frame.labels)


def gram_squared(G: GramMatrix):
    return matmul(G.entries, G.entries)


# ==============================
# Equiangularity And Tightness
# ==============================
def check_equiangular(G: GramMatrix) -> EquiangularVerdict:
    value = None
    for j in range(G.n):
        for k in range(j + 1, G.n):
            z = G[j, k]
            modulus = z * z.conj()
            if value is None:
                value = modulus
            elif modulus != value:
                return EquiangularVerdict(
                    ok=False, reason=f"|G[{j}][{k}]|^2 = {modulus} differs from {value}"
                )
    if value is None:
        value = Cyclotomic.zero(G.order)
    return EquiangularVerdict(ok=True, value=value)


def check_tight(G: GramMatrix) -> TightVerdict:
    """G^2 = A G with A = trace(G^2) / trace(G)"""
    squared = gram_squared(G)
    numerator = trace(squared).as_rational()
    denominator = trace(G.entries).as_rational()
    if numerator is None or not denominator:
        return TightVerdict(ok=False, reason="traces are not positive rationals")
    bound = numerator / denominator
    for j in range(G.n):
        for k in range(G.n):
            if squared[j][k] != G[j, k] * bound:
                return TightVerdict(ok=False, bound=bound, reason=f"G^2 != A G at ({j}, {k})")
    measured_rank = rank(G.entries, G.order)
    if Fraction(measured_rank) != denominator / bound:
        raise ConsistencyError(
            f"tight Gram has rank {measured_rank} but trace(G)/A = {denominator / bound}"
        )
    return TightVerdict(ok=True, bound=bound, rank=measured_rank)


def require_etf(G: GramMatrix) -> TightVerdict:
    equiangular = check_equiangular(G)
    if not equiangular.ok:
        raise NotEtfError(f"not equiangular: {equiangular.reason}")
    tight = check_tight(G)
    if not tight.ok:
        raise NotEtfError(f"not tight: {tight.reason}")
    return tight


def welch_bound_check(G: GramMatrix) -> WelchVerdict:
    """|G_jk|^2 = b^2 (n-d) / (d(n-1)) for an equiangular tight Gram with diagonal b"""
    tight = require_etf(G)
    d, n = tight.rank, G.n
    b = G.diagonal.as_rational()
    expected = b * b * Fraction(n - d, d * (n - 1)) if n > 1 else Fraction(0)
    measured = check_equiangular(G).rational_value
    return WelchVerdict(ok=measured == expected, expected=expected, measured=measured)


# ==============================
# Triple Products
# ==============================
def _require_distinct(j: int, k: int, l: int) -> None:
    if j == k or k == l or l == j:
        raise UsageError(f"triple products need distinct indices, got ({j}, {k}, {l})")


def triple_product(G: GramMatrix, j: int, k: int, l: int) -> Cyclotomic:
    _require_distinct(j, k, l)
    return G[j, k] * G[k, l] * G[l, j]


def assert_triple_invariants(table: TripleTable) -> None:
    for (j, k, l), value in table.values.items():
        if table.values[(l, j, k)] != value or table.values[(j, l, k)] != value.conj():
            raise ConsistencyError(f"triple table breaks cyclic/conjugation symmetry at ({j}, {k}, {l})")


def triple_table_from_gram(G: GramMatrix) -> TripleTable:
    values = {}
    for j, k in itertools.permutations(range(G.n), 2):
        jk = G[j, k]
        for l in range(G.n):
            if l != j and l != k:
                values[(j, k, l)] = jk * G[k, l] * G[l, j]
    table = TripleTable(n=G.n, order=G.order, values=values, labels=G.labels)
    assert_triple_invariants(table)
    return table


# ==============================
# Label Tables
# ==============================
class _Interner:
    """Assigns labels in order of first appearance"""

    def __init__(self):
        self.ids: Dict[Cyclotomic, int] = {}
        self.values = []

    def __call__(self, value: Cyclotomic) -> int:
        label = self.ids.get(value)
        if label is None:
            label = self.ids[value] = len(self.values)
            self.values.append(value)
        return label


def _conjugation(interner: _Interner):
    for value in list(interner.values):
        interner(value.conj())
    return tuple(interner.ids[value.conj()] for value in interner.values)


def pair_labels(G: GramMatrix) -> PairLabelTable:
    intern = _Interner()
    rows = tuple(
        tuple(NO_LABEL if j == k else intern(G[j, k]) for k in range(G.n)) for j in range(G.n)
    )
    conj = _conjugation(intern)
    return PairLabelTable(n=G.n, labels=rows, values=tuple(intern.values), conj=conj)


def triple_labels(source: Union[GramMatrix, TripleTable]) -> TripleLabelTable:
    table = source if isinstance(source, TripleTable) else triple_table_from_gram(source)
    n = table.n
    intern = _Interner()
    flat = [NO_LABEL] * (n * n * n)
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            for l in range(n):
                if l != j and l != k:
                    flat[(j * n + k) * n + l] = intern(table.values[(j, k, l)])
    conj = _conjugation(intern)
    return TripleLabelTable(n=n, labels=tuple(flat), values=tuple(intern.values), conj=conj)


# ==============================
# Paley Triple-Product Classes
# ==============================
PALEY_CLASSES = {3: "QQQ", 2: "QQN", 1: "QNN", 0: "NNN"}


@lru_cache(maxsize=None)
def _paley_context(q: int, modulus: Optional[tuple]):
    (p, s), = factorint(q).items()
    field = field_new(p, s, modulus)
    return field, intertwiner(field).S_inverse


def paley_tp_class(
    q: Union[int, FieldSpec], j, k, l, modulus: Optional[Sequence[int]] = None
) -> str:
    """
    Count how many of j-k, k-l, l-j are residues.

    For prime powers the differences are read through the inverse
    intertwiner, matching the column labelling of the Paley frame.
    """
    if isinstance(q, FieldSpec):
        field, S_inverse = _paley_context(q.q, q.modulus)
    else:
        field, S_inverse = _paley_context(q, tuple(modulus) if modulus else None)

    points = [field.element(x) for x in (j, k, l)]
    if len(set(points)) != 3:
        raise UsageError("paley_tp_class needs three distinct field elements")

    def residue(y: FfElt) -> bool:
        return field.is_square(apply_matrix(S_inverse, y, field.p))

    a, b, c = points
    count = sum(residue(field.sub(x, y)) for x, y in ((a, b), (b, c), (c, a)))
    return PALEY_CLASSES[count]


# ==============================
# Switching Equivalence And Uniformity
# ==============================
def switching_equivalent_aligned(G1: GramMatrix, G2: GramMatrix) -> bool:
    if G1.n != G2.n:
        raise UsageError("switching equivalence needs Grams of the same size")
    require_etf(G1)
    require_etf(G2)
    if G1.order != G2.order:
        return False
    for j, k in itertools.permutations(range(G1.n), 2):
        for l in range(G1.n):
            if l != j and l != k and triple_product(G1, j, k, l) != triple_product(G2, j, k, l):
                return False
    return True


def check_3c_uniform(G: GramMatrix) -> UniformVerdict:
    require_etf(G)
    real_part = None
    for j, k, l in itertools.combinations(range(G.n), 3):
        tp = triple_product(G, j, k, l)
        value = tp + tp.conj()
        if real_part is None:
            real_part = value
        elif value != real_part:
            return UniformVerdict(ok=False, reason=f"TP + conj(TP) differs at ({j}, {k}, {l})")
    return UniformVerdict(ok=True, real_part=real_part)


def all_triple_products_imaginary(G: GramMatrix) -> bool:
    return all(
        triple_product(G, j, k, l).is_purely_imaginary()
        for j, k, l in itertools.combinations(range(G.n), 3)
    )
