import itertools
import logging
from collections import Counter
from fractions import Fraction
from math import lcm
from typing import Any, List, Optional, Sequence, Tuple

from sympy import factorint, isprime

from ..core.cyclotomic import Cyclotomic, quadratic_residue_sum, root_of_unity
from ..core.exceptions import (
    ConsistencyError,
    DegenerateComplementError,
    NotADifferenceSetError,
    NotEtfError,
    NotTightError,
    OutOfReachError,
    UsageError,
)
from ..models.design import BlockDesign
from ..models.field import FieldSpec, Intertwiner
from ..models.frame import FrameMatrix, GramMatrix, PaleySymmetryGenerators, RowOperator, TripleTable
from ..models.group import Permutation
from ..models.verdict import DifferenceSetVerdict
from ..utils.matrices import identity, is_zero, matmul, scale, subtract
from .finite_field import (
    apply_matrix,
    field_new,
    intertwiner,
    inverse_mod_p,
    matmul_mod_p,
    pairing,
    qr_set,
    require_admissible,
)
from .gram_analysis import assert_triple_invariants, check_equiangular, check_tight, gram, make_gram

logger = logging.getLogger(__name__)

GroupElement = Tuple[int, ...]


# ==============================
# Abelian Groups
# ==============================
def _check_orders(orders: Sequence[int]) -> Tuple[int, ...]:
    orders = tuple(int(m) for m in orders)
    if not orders or any(m < 2 for m in orders):
        raise UsageError(f"cyclic factor orders must all be at least 2, got {list(orders)}")
    return orders


def group_elements(orders: Sequence[int]) -> List[GroupElement]:
    """Elements of Z_m1 x ... x Z_mr in lexicographic order"""
    return list(itertools.product(*(range(m) for m in orders)))


def _element_label(orders: Sequence[int], g: GroupElement):
    return g[0] if len(orders) == 1 else g


def _normalize_subset(orders: Sequence[int], subset) -> List[GroupElement]:
    elements = []
    for x in subset:
        g = (x,) if isinstance(x, int) else tuple(x)
        if len(g) != len(orders) or any(not 0 <= c < m for c, m in zip(g, orders)):
            raise UsageError(f"{x} is not an element of Z_{' x Z_'.join(map(str, orders))}")
        if g not in elements:
            elements.append(g)
    if not elements:
        raise UsageError("subset must be nonempty")
    return elements


def _difference(orders, a: GroupElement, b: GroupElement) -> GroupElement:
    return tuple((x - y) % m for x, y, m in zip(a, b, orders))


def _sum(orders, a: GroupElement, b: GroupElement) -> GroupElement:
    return tuple((x + y) % m for x, y, m in zip(a, b, orders))


# ==============================
# Fourier Matrices And Difference Sets
# ==============================
def fourier_matrix(orders: Sequence[int]) -> FrameMatrix:
    """Kronecker product of cyclic Fourier matrices, over Q(zeta_L) with L = lcm(orders)"""
    orders = _check_orders(orders)
    L = lcm(*orders)
    weights = [L // m for m in orders]
    elements = group_elements(orders)
    roots = [root_of_unity(L, k) for k in range(L)]
    entries = tuple(
        tuple(roots[sum(a * b * w for a, b, w in zip(g, h, weights)) % L] for h in elements)
        for g in elements
    )
    N = len(elements)
    return FrameMatrix(
        d=N, n=N, order=L, entries=entries,
        labels=tuple(_element_label(orders, h) for h in elements),
    )


def is_difference_set(orders: Sequence[int], subset) -> DifferenceSetVerdict:
    orders = _check_orders(orders)
    elements = _normalize_subset(orders, subset)
    v, k = len(group_elements(orders)), len(elements)
    tally = Counter(_difference(orders, a, b) for a in elements for b in elements if a != b)
    identity_element = (0,) * len(orders)
    counts = {tally.get(g, 0) for g in group_elements(orders) if g != identity_element}
    if len(counts) != 1:
        return DifferenceSetVerdict(
            ok=False, v=v, k=k, reason=f"difference counts {sorted(counts)} are not uniform"
        )
    return DifferenceSetVerdict(ok=True, v=v, k=k, lam=counts.pop())


def etf_from_difference_set(orders: Sequence[int], subset) -> FrameMatrix:
    """Rows of the Fourier matrix indexed by a difference set, in the given order"""
    orders = _check_orders(orders)
    elements = _normalize_subset(orders, subset)
    verdict = is_difference_set(orders, elements)
    if not verdict.ok:
        raise NotADifferenceSetError(f"subset is not a difference set: {verdict.reason}")

    fourier = fourier_matrix(orders)
    index = {g: i for i, g in enumerate(group_elements(orders))}
    frame = FrameMatrix(
        d=len(elements), n=fourier.n, order=fourier.order,
        entries=tuple(fourier.entries[index[g]] for g in elements),
        labels=fourier.labels,
    )

    G = gram(frame)
    if not check_equiangular(G).ok or not check_tight(G).ok:
        raise ConsistencyError("difference-set frame failed the equiangular tight check")
    return frame


def development(orders: Sequence[int], subset) -> BlockDesign:
    """All translates subset + g, with points numbered in lexicographic group order"""
    orders = _check_orders(orders)
    elements = _normalize_subset(orders, subset)
    group = group_elements(orders)
    index = {g: i for i, g in enumerate(group)}
    blocks = [[index[_sum(orders, x, g)] for x in elements] for g in group]
    return BlockDesign.from_blocks(v=len(group), k=len(elements), blocks=blocks)


# ==============================
# Paley ETFs
# ==============================
def paley_field(q: int, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    factors = factorint(q)
    if len(factors) != 1:
        raise UsageError(f"q = {q} is not a prime power")
    (p, s), = factors.items()
    field = field_new(p, s, modulus)
    require_admissible(field)
    if q == 3:
        raise UsageError("q = 3 gives a one-dimensional Paley frame; use q > 3")
    return field


def paley_etf(q: int, modulus: Optional[Sequence[int]] = None, field: Optional[FieldSpec] = None) -> FrameMatrix:
    """
    Rows alpha^0, alpha^2, ..., alpha^(q-3); columns 0, alpha^0, alpha^1, ...
    Entry (k, y) is zeta_p^<C^{2k} e_1, y>_p.
    """
    field = field or paley_field(q, modulus)
    p = field.p
    roots = [root_of_unity(p, t) for t in range(p)]
    columns = field.elements()
    entries = tuple(
        tuple(roots[pairing(x, y, p)] for y in columns) for x in qr_set(field)
    )
    logger.info("Paley frame for q = %d: %d x %d over Q(zeta_%d)", field.q, len(entries), len(columns), p)
    return FrameMatrix(
        d=len(entries), n=len(columns), order=p, entries=entries,
        labels=tuple(field.label(y) for y in columns),
    )


def _column_permutation(field: FieldSpec, mapping) -> Permutation:
    columns = field.elements()
    index = {y: i for i, y in enumerate(columns)}
    return Permutation(tuple(index[mapping(y)] for y in columns))


def _matrix_power(field: FieldSpec, k: int):
    """C^k over F_p, negative k allowed"""
    p, C = field.p, field.companion
    if k < 0:
        C, k = inverse_mod_p(C, p), -k
    result = tuple(tuple(int(i == j) for j in range(field.s)) for i in range(field.s))
    for _ in range(k):
        result = matmul_mod_p(result, C, p)
    return result


def paley_symmetry_generators(
    q: int,
    modulus: Optional[Sequence[int]] = None,
    field: Optional[FieldSpec] = None,
    frame: Optional[FrameMatrix] = None,
    twist: Optional[Intertwiner] = None,
) -> PaleySymmetryGenerators:
    """
    Modulations M^{b}, the cyclic translation T and the Galois permutation Pi,
    each verified exactly against the frame: U phi_j = phi_sigma(j) for every column.
    """
    field = field or paley_field(q, modulus)
    frame = frame or paley_etf(field.q, field=field)
    twist = twist or intertwiner(field)
    p, d = field.p, (field.q - 1) // 2
    S, S_inv = twist.S, twist.S_inverse
    rows = qr_set(field)
    roots = [root_of_unity(p, t) for t in range(p)]
    one = Cyclotomic.one(p)
    identity_rows = Permutation.identity(d)

    modulations, modulation_perms = [], []
    for b in field.elements():
        phases = tuple(roots[pairing(x, b, p)] for x in rows)
        modulations.append(RowOperator(row_map=identity_rows, phases=phases))
        modulation_perms.append(_column_permutation(field, lambda y, b=b: field.add(y, b)))

    shift = matmul_mod_p(matmul_mod_p(S, _matrix_power(field, -2), p), S_inv, p)
    translation = RowOperator(
        row_map=Permutation(tuple((r + 1) % d for r in range(d))), phases=(one,) * d
    )
    translation_perm = _column_permutation(field, lambda y: apply_matrix(shift, y, p))

    galois = RowOperator(
        row_map=Permutation(tuple((p * r) % d for r in range(d))), phases=(one,) * d
    )
    galois_perm = _column_permutation(
        field, lambda y: apply_matrix(S, field.frobenius(apply_matrix(S_inv, y, p)), p)
    )

    generators = PaleySymmetryGenerators(
        modulation_perms=tuple(modulation_perms),
        translation_perm=translation_perm,
        galois_perm=galois_perm,
        modulations=tuple(modulations),
        translation=translation,
        galois=galois,
    )
    verify_generators(frame, generators)
    return generators


def verify_generators(frame: FrameMatrix, generators: PaleySymmetryGenerators) -> None:
    columns = [frame.column(j) for j in range(frame.n)]
    for operator, sigma in generators.pairs():
        for j, column in enumerate(columns):
            if operator.apply(column) != columns[sigma(j)]:
                raise ConsistencyError(
                    f"symmetry generator does not map column {j} to column {sigma(j)}"
                )


# ==============================
# Simplices, Bases, Complements
# ==============================
def onb_gram(n: int) -> GramMatrix:
    if n < 1:
        raise UsageError("an orthonormal basis needs n >= 1")
    return make_gram(identity(n, 1))


def simplex_gram(n: int) -> GramMatrix:
    """Diagonal n-1, off-diagonal -1: the integer-scaled regular simplex in dimension n-1"""
    if n < 2:
        raise UsageError("a simplex needs n >= 2")
    diagonal, off = Cyclotomic.rational(1, n - 1), Cyclotomic.rational(1, -1)
    return make_gram([[diagonal if j == k else off for k in range(n)] for j in range(n)])


def pad_with_basis(G: GramMatrix, extra: int) -> GramMatrix:
    """G plus extra orthogonal vectors of the same norm, appended after the old indices"""
    if extra < 1:
        raise UsageError("padding needs at least one extra vector")
    norm = G[0, 0]
    zero = Cyclotomic.zero(G.order)
    n = G.n + extra
    entries = [
        [
            G[j, k] if j < G.n and k < G.n else (norm if j == k else zero)
            for k in range(n)
        ]
        for j in range(n)
    ]
    return make_gram(entries, tuple(G.labels) + tuple(range(G.n, n)))


def naimark_gram(G: GramMatrix, A=None) -> GramMatrix:
    """A I - G for a tight Gram with G^2 = A G"""
    squared = matmul(G.entries, G.entries)
    if A is None:
        verdict = check_tight(G)
        if not verdict.ok:
            raise NotTightError(f"Naimark complement needs a tight Gram: {verdict.reason}")
        A = verdict.bound
    A = Fraction(A)
    if not is_zero(subtract(squared, scale(G.entries, A))):
        raise NotTightError(f"G^2 != {A} G")

    complement = subtract(identity(G.n, G.order, A), G.entries)
    if is_zero(complement):
        raise DegenerateComplementError("A I - G vanishes: the frame is a basis (n = d)")
    if not is_zero(subtract(matmul(complement, complement), scale(complement, A))):
        raise ConsistencyError("Naimark complement fails (A I - G)^2 = A (A I - G)")
    return make_gram(complement, G.labels)


# ==============================
# Skew-Conference ETFs
# ==============================
def conference_matrix(q: int) -> Tuple[Tuple[int, ...], ...]:
    """Bordered Paley tournament: index 0 is infinity, index x + 1 is x in F_q"""
    residues = {(t * t) % q for t in range(1, q)}

    def chi(x):
        x %= q
        return 0 if x == 0 else (1 if x in residues else -1)

    rows = [[0] + [1] * q]
    for x in range(q):
        rows.append([-1] + [chi(x - y) for y in range(q)])
    return tuple(tuple(r) for r in rows)


def conference_etf_gram(q: int) -> GramMatrix:
    """G = I + (g/q) Sigma with g = a - conj(a), giving q + 1 vectors in dimension (q + 1)/2"""
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1 or q % 4 != 3:
        raise UsageError(f"conference ETFs need a prime power q = 3 mod 4, got {q}")
    if not isprime(q):
        raise OutOfReachError(
            f"prime-power conference ETFs (q = {q}) need a sign analysis of the quadratic "
            "Gauss element that is not implemented",
            report={"q": q, "reason": "prime-power Gauss element sign analysis deferred"},
        )

    sigma = conference_matrix(q)
    n = q + 1
    for j in range(n):
        for k in range(n):
            if sigma[j][k] != -sigma[k][j]:
                raise ConsistencyError("conference matrix is not skew-symmetric")
            if sum(sigma[j][i] * sigma[k][i] for i in range(n)) != (q if j == k else 0):
                raise ConsistencyError("conference matrix fails Sigma Sigma^T = q I")

    a = quadratic_residue_sum(q)
    g = a - a.conj()
    if g * g != -q:
        raise ConsistencyError(f"quadratic Gauss element fails g^2 = -{q}")

    step = g.scale(Fraction(1, q))
    one, zero = Cyclotomic.one(q), Cyclotomic.zero(q)
    entries = [
        [one if j == k else (step * sigma[j][k] if sigma[j][k] else zero) for k in range(n)]
        for j in range(n)
    ]
    return make_gram(entries, labels=("inf",) + tuple(range(q)))


# ==============================
# Gabor-Steiner Triple Products
# ==============================
def gabor_steiner_tp_table(p: int) -> TripleTable:
    """Triple products on F_p^2, point (k, kappa) at index k * p + kappa"""
    if p < 3 or not isprime(p):
        raise UsageError(f"Gabor-Steiner tables need an odd prime, got {p}")
    points = [(k, kappa) for k in range(p) for kappa in range(p)]
    roots = [root_of_unity(p, t) for t in range(p)]
    half = (p + 1) // 2

    def omega(u, v):
        return u[0] * v[1] - v[0] * u[1]

    values = {}
    for (i, x), (j, y), (l, z) in itertools.permutations(enumerate(points), 3):
        exponent = (omega(x, z) + omega(y, x) + omega(z, y)) * half
        values[(i, j, l)] = roots[exponent % p]
    table = TripleTable(n=len(points), order=p, values=values, labels=tuple(points))
    assert_triple_invariants(table)
    return table


# ==============================
# Frame Transformations
# ==============================
def frame_from_rows(rows: Sequence[Sequence[Any]], order: int = 1, labels: Optional[Sequence[Any]] = None) -> FrameMatrix:
    """Build a frame from rows of Cyclotomic values or rationals"""
    entries = tuple(
        tuple(x if isinstance(x, Cyclotomic) else Cyclotomic.rational(order, x) for x in row)
        for row in rows
    )
    d, n = len(entries), len(entries[0])
    if n < d:
        raise UsageError(f"a frame needs at least as many vectors as dimensions ({n} < {d})")
    return FrameMatrix(
        d=d, n=n, order=order, entries=entries,
        labels=tuple(labels) if labels is not None else tuple(range(n)),
    )


def rescale_columns(frame: FrameMatrix, exponents: Sequence[int]) -> FrameMatrix:
    """phi_j -> zeta_m^{e_j} phi_j"""
    phases = [root_of_unity(frame.order, e) for e in exponents]
    entries = tuple(tuple(x * phases[j] for j, x in enumerate(row)) for row in frame.entries)
    return FrameMatrix(d=frame.d, n=frame.n, order=frame.order, entries=entries, labels=frame.labels)


def conjugate_frame(frame: FrameMatrix) -> FrameMatrix:
    entries = tuple(tuple(x.conj() for x in row) for row in frame.entries)
    return FrameMatrix(d=frame.d, n=frame.n, order=frame.order, entries=entries, labels=frame.labels)


def permute_columns(frame: FrameMatrix, sigma: Permutation) -> FrameMatrix:
    """Column j of the result is column sigma(j) of the input"""
    entries = tuple(tuple(row[sigma(j)] for j in range(frame.n)) for row in frame.entries)
    labels = tuple(frame.labels[sigma(j)] for j in range(frame.n))
    return FrameMatrix(d=frame.d, n=frame.n, order=frame.order, entries=entries, labels=labels)


def scaled_row_frame(frame: FrameMatrix, row: int, scalar) -> FrameMatrix:
    """Multiply one row by a rational scalar; |scalar| != 1 breaks tightness but not transitivity"""
    entries = tuple(
        tuple(x * Fraction(scalar) for x in r) if i == row else r
        for i, r in enumerate(frame.entries)
    )
    return FrameMatrix(d=frame.d, n=frame.n, order=frame.order, entries=entries, labels=frame.labels)


def modulation_orbit_check(frame: FrameMatrix) -> bool:
    """
    True when the columns contain the all-ones vector and are closed under
    entrywise products, i.e. the frame is the orbit of 1 under the diagonal
    operators diag(phi_j).
    """
    columns = {frame.column(j) for j in range(frame.n)}
    ones = (Cyclotomic.one(frame.order),) * frame.d
    if ones not in columns:
        return False
    return all(
        tuple(x * y for x, y in zip(a, b)) in columns for a in columns for b in columns
    )


def require_etf_frame(frame: FrameMatrix) -> GramMatrix:
    G = gram(frame)
    if not check_equiangular(G).ok or not check_tight(G).ok:
        raise NotEtfError("frame is not an equiangular tight frame")
    return G
