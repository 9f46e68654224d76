import itertools
import logging
import random
from typing import List, Optional, Sequence, Tuple

from sympy import GF, Matrix, Poly, Symbol, isprime
from sympy.polys.matrices import DomainMatrix

from ..core.config import Settings, settings as default_settings
from ..core.exceptions import ConsistencyError, OutOfReachError, UsageError
from ..models.field import FfElt, FieldSpec, Intertwiner, MatrixFp

logger = logging.getLogger(__name__)

_x = Symbol("x")


# ==============================
# F_p Linear Algebra
# ==============================
def _to_domain(rows: Sequence[Sequence[int]], p: int) -> DomainMatrix:
    return DomainMatrix.from_Matrix(Matrix(rows)).convert_to(GF(p))


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    return _to_domain(rows, p).rank()


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> List[Tuple[int, ...]]:
    """Nullspace basis read off the reduced row echelon form, one vector per free column"""
    if not rows:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]

    reduced, pivots = _to_domain(rows, p).rref()
    entries = [[int(e) % p for e in row] for row in reduced.to_list()]

    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [0] * ncols
        vector[free] = 1
        for r, pivot in enumerate(pivots):
            vector[pivot] = -entries[r][free] % p
        basis.append(tuple(vector))
    return basis


def inverse_mod_p(matrix: MatrixFp, p: int) -> MatrixFp:
    inverse = Matrix(matrix).inv_mod(p)
    return tuple(tuple(int(inverse[i, j]) % p for j in range(inverse.cols)) for i in range(inverse.rows))


def apply_matrix(matrix: MatrixFp, x: FfElt, p: int) -> FfElt:
    return tuple(sum(a * b for a, b in zip(row, x)) % p for row in matrix)


def matmul_mod_p(a: MatrixFp, b: MatrixFp, p: int) -> MatrixFp:
    columns = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in columns) for row in a)


def transpose(matrix: MatrixFp) -> MatrixFp:
    return tuple(zip(*matrix))


# ==============================
# Field Construction
# ==============================
def companion_matrix(modulus: Sequence[int], p: int) -> MatrixFp:
    """Subdiagonal ones, last column -c_0, ..., -c_{s-1}"""
    s = len(modulus) - 1
    rows = [[0] * s for _ in range(s)]
    for i in range(s):
        if i > 0:
            rows[i][i - 1] = 1
        rows[i][s - 1] = -modulus[i] % p
    return tuple(tuple(r) for r in rows)


def _powers_of_alpha(companion: MatrixFp, p: int) -> List[FfElt]:
    """C^k e_1 for k = 0, 1, ... until the orbit returns to e_1"""
    s = len(companion)
    e1 = tuple(int(i == 0) for i in range(s))
    powers = [e1]
    current = apply_matrix(companion, e1, p)
    while current != e1:
        if current == (0,) * s or len(powers) > p ** s:
            break
        powers.append(current)
        current = apply_matrix(companion, current, p)
    return powers


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    return Poly(list(reversed(modulus)), _x, modulus=p).is_irreducible


def _primitive_powers(modulus: Sequence[int], p: int) -> Optional[List[FfElt]]:
    if not _is_irreducible(modulus, p):
        return None
    powers = _powers_of_alpha(companion_matrix(modulus, p), p)
    if len(powers) != p ** (len(modulus) - 1) - 1:
        return None
    return powers


def _build(p: int, s: int, modulus: Tuple[int, ...], powers: List[FfElt]) -> FieldSpec:
    return FieldSpec(
        p=p,
        s=s,
        modulus=modulus,
        companion=companion_matrix(modulus, p),
        exp_table=tuple(powers),
        log_table={x: k for k, x in enumerate(powers)},
    )


def field_new(
    p: int,
    s: int = 1,
    modulus: Optional[Sequence[int]] = None,
    settings: Settings = default_settings,
) -> FieldSpec:
    """
    Build GF(p^s) with a primitive companion matrix.

    Without an explicit modulus, monic degree-s polynomials are scanned in
    lexicographic order of the companion matrix's last column (-c_0 first),
    and the first irreducible one whose companion matrix has order p^s - 1
    is used. For s = 1 this selects the smallest primitive root.
    """
    if not isprime(p):
        raise UsageError(f"p = {p} is not prime")
    if s < 1:
        raise UsageError(f"extension degree must be at least 1, got {s}")
    if p ** s > settings.field_bound:
        raise OutOfReachError(
            f"q = {p}^{s} exceeds the field size bound {settings.field_bound}",
            report={"q": p ** s, "field_bound": settings.field_bound},
        )

    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise UsageError(f"modulus must be monic of degree {s}, constant term first")
        powers = _primitive_powers(modulus, p)
        if powers is None:
            raise UsageError(f"modulus {list(modulus)} is not a primitive polynomial over F_{p}")
        return _build(p, s, modulus, powers)

    for column in itertools.product(range(p), repeat=s):
        if column[0] == 0:
            continue
        candidate = tuple(-c % p for c in column) + (1,)
        powers = _primitive_powers(candidate, p)
        if powers is not None:
            logger.debug("GF(%d^%d) modulus %s", p, s, candidate)
            return _build(p, s, candidate, powers)

    raise ConsistencyError(f"no primitive polynomial of degree {s} over F_{p}")


# ==============================
# Quadratic Residues
# ==============================
def qr_set(field: FieldSpec) -> Tuple[FfElt, ...]:
    """C^{2k} e_1 for k = 0, ..., (q-3)/2, in that order"""
    return tuple(field.from_log(2 * k) for k in range((field.q - 1) // 2))


def nr_set(field: FieldSpec) -> Tuple[FfElt, ...]:
    return tuple(field.from_log(2 * k + 1) for k in range((field.q - 1) // 2))


def is_paley_admissible(field: FieldSpec) -> bool:
    if field.q % 4 != 3:
        return False
    negated = {field.neg(x) for x in qr_set(field)}
    if negated != set(nr_set(field)):
        raise ConsistencyError(f"NR != -QR in GF({field.q}) although q = 3 mod 4")
    return True


def require_admissible(field: FieldSpec) -> None:
    if not is_paley_admissible(field):
        raise UsageError(f"q = {field.q} is not Paley admissible (needs q = 3 mod 4)")


def galois_orbit(field: FieldSpec, x: FfElt) -> List[FfElt]:
    orbit = [x]
    for _ in range(field.s - 1):
        orbit.append(field.frobenius(orbit[-1]))
    return orbit


def normal_basis_qr(field: FieldSpec) -> FfElt:
    """The residue C^{2b} e_1 with smallest b whose Frobenius orbit is a basis over F_p"""
    require_admissible(field)
    for b in range((field.q - 1) // 2):
        x = field.from_log(2 * b)
        if rank_mod_p(galois_orbit(field, x), field.p) == field.s:
            return x
    raise ConsistencyError(f"no quadratic residue of GF({field.q}) generates a normal basis")


def pairing(x: FfElt, y: FfElt, p: int) -> int:
    return sum(a * b for a, b in zip(x, y)) % p


# ==============================
# Intertwiner
# ==============================
def _intertwiner_equations(field: FieldSpec, residue_log: int) -> List[List[int]]:
    s, p, C = field.s, field.p, field.companion

    def var(i, j):
        return i * s + j

    rows = []
    for i in range(s):
        for j in range(i + 1, s):
            row = [0] * (s * s)
            row[var(i, j)] = 1
            row[var(j, i)] = -1 % p
            rows.append(row)

    # (SC)_ij - (C^T S)_ij = sum_k S_ik C_kj - sum_k C_ki S_kj
    for i in range(s):
        for j in range(s):
            row = [0] * (s * s)
            for k in range(s):
                row[var(i, k)] += C[k][j]
                row[var(k, j)] -= C[k][i]
            rows.append([c % p for c in row])

    orbit = [field.from_log(residue_log * p ** k) for k in range(s)]
    for k in range(s - 1):
        difference = field.sub(orbit[k], orbit[k + 1])
        row = [0] * (s * s)
        for j in range(s):
            row[var(0, j)] = difference[j]
        rows.append(row)
    return rows


def is_valid_intertwiner(field: FieldSpec, S: MatrixFp, residue: FfElt) -> bool:
    p, C = field.p, field.companion
    S = tuple(tuple(int(c) % p for c in row) for row in S)
    if S != transpose(S):
        return False
    if rank_mod_p(S, p) != field.s:
        return False
    if matmul_mod_p(S, C, p) != matmul_mod_p(transpose(C), S, p):
        return False
    orbit = galois_orbit(field, residue)
    first_row = S[0]
    return all(
        pairing(first_row, field.sub(orbit[k], orbit[k + 1]), p) == 0 for k in range(field.s - 1)
    )


def _verify_intertwiner(field: FieldSpec, S: MatrixFp, settings: Settings) -> None:
    """Check the shift and Frobenius pairing identities on (k, l, n) triples"""
    p, half = field.p, (field.q - 1) // 2

    def residue(k):
        return field.from_log(2 * k)

    def value(k, l):
        return pairing(residue(k), apply_matrix(S, residue(l), p), p)

    if half ** 3 <= settings.intertwiner_exhaustive_limit:
        triples = itertools.product(range(half), repeat=3)
    else:
        rng = random.Random(settings.seed)
        triples = (
            (rng.randrange(half), rng.randrange(half), rng.randrange(half))
            for _ in range(settings.intertwiner_sample)
        )

    for k, l, n in triples:
        base = value(k, l)
        if value(k + n, l - n) != base or value(p * k, p * l) != base:
            raise ConsistencyError(
                f"intertwiner identity fails in GF({field.q}) at (k, l, n) = ({k}, {l}, {n})"
            )


def intertwiner(field: FieldSpec, settings: Settings = default_settings) -> Intertwiner:
    require_admissible(field)
    residue = normal_basis_qr(field)
    residue_log = field.log(residue)

    if field.s == 1:
        S = ((1,),)
    else:
        s, p = field.s, field.p
        basis = nullspace_mod_p(_intertwiner_equations(field, residue_log), s * s, p)
        candidates = (tuple(tuple(v[i * s:(i + 1) * s]) for i in range(s)) for v in basis)
        S = next((M for M in candidates if rank_mod_p(M, p) == s), None)
        if S is None:
            raise ConsistencyError(f"no invertible intertwiner found for GF({field.q})")

    if not is_valid_intertwiner(field, S, residue):
        raise ConsistencyError(f"intertwiner for GF({field.q}) violates its defining constraints")
    _verify_intertwiner(field, S, settings)

    logger.info("GF(%d): intertwiner %s (residue alpha^%d)", field.q, S, residue_log)
    return Intertwiner(S=S, S_inverse=inverse_mod_p(S, field.p), residue_log=residue_log)
