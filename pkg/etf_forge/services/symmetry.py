"""
Permutation symmetries of label tables.

Automorphisms are found by a base-ordered backtracking search. The group is
assembled bottom-up along the base: at level i every candidate image of
base[i] that is not already in the orbit of the stabilizer generators found
so far is tested for an extension, so the order falls out as the product of
the basic orbit sizes without materializing the group.
"""
import itertools
import logging
from math import comb, factorial, perm, prod
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import isprime

from ..core.config import Settings
from ..core.config import settings as default_settings
from ..core.cyclotomic import Cyclotomic
from ..core.exceptions import BudgetExceededError, ConsistencyError, UsageError
from ..models.field import FieldSpec, Intertwiner
from ..models.group import PermGroup, Permutation, generated_group, symmetric_group, trivial_group
from ..models.labels import PairLabelTable, TripleLabelTable
from .finite_field import apply_matrix, intertwiner, matmul_mod_p, require_admissible

logger = logging.getLogger(__name__)

LabelTable = Union[PairLabelTable, TripleLabelTable]


# ==============================
# Label Structures
# ==============================
class _Structure:
    """
    Pair or triple labels on n points plus the derived invariants used to
    prune candidate images. Label ids are shared with a partner structure
    through a common interner so two tables can be compared.
    """

    def __init__(self, table: LabelTable, value_ids: Dict[Cyclotomic, int], signature_ids: Dict[tuple, int]):
        self.n = table.n
        self.arity = 2 if isinstance(table, PairLabelTable) else 3
        remap = [value_ids.setdefault(v, len(value_ids)) for v in table.values]
        n = self.n

        if self.arity == 2:
            self.pair = [
                [remap[table.labels[j][k]] if j != k else -1 for k in range(n)] for j in range(n)
            ]
            self.triple = None
        else:
            flat = table.labels
            self.triple = [remap[x] if x >= 0 else -1 for x in flat]
            self.pair = [[-1] * n for _ in range(n)]
            for j, k in itertools.permutations(range(n), 2):
                signature = tuple(sorted(
                    self.triple[(j * n + k) * n + l] for l in range(n) if l != j and l != k
                ))
                self.pair[j][k] = signature_ids.setdefault(signature, len(signature_ids))

        self.point = []
        for j in range(n):
            signature = ("point",) + tuple(sorted(
                (self.pair[j][k], self.pair[k][j]) for k in range(n) if k != j
            ))
            self.point.append(signature_ids.setdefault(signature, len(signature_ids)))

    def triple_label(self, j: int, k: int, l: int) -> int:
        n = self.n
        return self.triple[(j * n + k) * n + l]

    def is_uniform(self) -> bool:
        """True when every off-diagonal label agrees"""
        if self.arity == 2:
            labels = {self.pair[j][k] for j, k in itertools.permutations(range(self.n), 2)}
        else:
            labels = {x for x in self.triple if x >= 0}
        return len(labels) <= 1


def _structures(t1: LabelTable, t2: Optional[LabelTable] = None) -> Tuple[_Structure, _Structure]:
    value_ids: Dict[Cyclotomic, int] = {}
    signature_ids: Dict[tuple, int] = {}
    first = _Structure(t1, value_ids, signature_ids)
    if t2 is None:
        return first, first
    if type(t1) is not type(t2):
        raise UsageError("cannot match a pair label table against a triple label table")
    if t1.n != t2.n:
        raise UsageError(f"label tables have different sizes ({t1.n} and {t2.n})")
    return first, _Structure(t2, value_ids, signature_ids)


def _choose_base(source: _Structure) -> List[int]:
    """Most-constrained-first: the next point is the one whose invariants against placed points are rarest"""
    n = source.n
    base = [0]
    remaining = list(range(1, n))
    while remaining:
        keys = {
            x: (source.point[x],) + tuple((source.pair[b][x], source.pair[x][b]) for b in base)
            for x in remaining
        }
        class_size = {}
        for key in keys.values():
            class_size[key] = class_size.get(key, 0) + 1
        best = min(remaining, key=lambda x: (class_size[keys[x]], x))
        base.append(best)
        remaining.remove(best)
    return base


# ==============================
# Backtracking Search
# ==============================
class _SearchContext:
    """Mutable state for one automorphism or isomorphism search"""

    def __init__(self, source: _Structure, target: _Structure, settings: Settings):
        self.source = source
        self.target = target
        self.n = source.n
        self.base = _choose_base(source)
        self.node_cap = settings.search_node_cap
        self.nodes = 0
        self.generators: List[Permutation] = []

    def consistent(self, level: int, images: List[int], candidate: int) -> bool:
        source, target, base = self.source, self.target, self.base
        point = base[level]
        if source.point[point] != target.point[candidate]:
            return False
        for i in range(level):
            b, c = base[i], images[i]
            if source.pair[b][point] != target.pair[c][candidate]:
                return False
            if source.pair[point][b] != target.pair[candidate][c]:
                return False
        if source.arity == 3:
            for i, r in itertools.combinations(range(level), 2):
                if source.triple_label(base[i], base[r], point) != target.triple_label(
                    images[i], images[r], candidate
                ):
                    return False
        return True

    def extend(self, images: List[int]) -> Optional[Permutation]:
        """Complete a partial base image, or None when no completion exists"""
        level = len(images)
        if level == self.n:
            mapping = [0] * self.n
            for b, c in zip(self.base, images):
                mapping[b] = c
            return Permutation(tuple(mapping))

        used = set(images)
        for candidate in range(self.n):
            if candidate in used:
                continue
            self.nodes += 1
            if self.nodes > self.node_cap:
                raise BudgetExceededError(
                    f"symmetry search exceeded {self.node_cap} nodes",
                    report={
                        "search_node_cap": self.node_cap,
                        "partial_generators": [list(g.images) for g in sorted(self.generators)],
                        "partial": True,
                    },
                )
            if self.consistent(level, images, candidate):
                images.append(candidate)
                found = self.extend(images)
                images.pop()
                if found is not None:
                    return found
        return None


def _orbit(point: int, generators: Sequence[Permutation]) -> set:
    orbit = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = g(x)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def _automorphism_group(table: LabelTable, settings: Settings) -> PermGroup:
    n = table.n
    if n == 1:
        return trivial_group(1)
    source, _ = _structures(table)
    if source.is_uniform():
        logger.info("uniform label table on %d points: symmetric group", n)
        return symmetric_group(n)

    context = _SearchContext(source, source, settings)
    base = context.base
    orbit_sizes = [1] * n
    for level in reversed(range(n)):
        prefix = base[:level]
        point = base[level]
        level_generators = [g for g in context.generators if all(g(b) == b for b in prefix)]
        orbit = _orbit(point, level_generators)
        for candidate in range(n):
            if candidate in orbit or source.point[candidate] != source.point[point]:
                continue
            if not context.consistent(level, list(prefix), candidate):
                continue
            sigma = context.extend(list(prefix) + [candidate])
            if sigma is not None:
                context.generators.append(sigma)
                level_generators.append(sigma)
                orbit = _orbit(point, level_generators)
        orbit_sizes[level] = len(orbit)

    order = prod(orbit_sizes)
    logger.info(
        "automorphism search on %d points: order %d after %d nodes", n, order, context.nodes
    )
    return PermGroup(
        n=n,
        generators=tuple(sorted(context.generators)),
        order=order,
        base_orbit_sizes=tuple(orbit_sizes),
    )



# ==============================
# Symmetry Groups Of Label Tables
# ==============================
def vector_symmetry_group(table: PairLabelTable, settings: Settings = default_settings) -> PermGroup:
    """Permutations preserving every inner product label"""
    if not isinstance(table, PairLabelTable):
        raise UsageError("vector symmetries need a pair label table")
    return _automorphism_group(table, settings)


def line_symmetry_group(table: TripleLabelTable, settings: Settings = default_settings) -> PermGroup:
    """Permutations preserving every triple product label"""
    if not isinstance(table, TripleLabelTable):
        raise UsageError("line symmetries need a triple label table")
    return _automorphism_group(table, settings)


def find_tp_isomorphism(
    t1: TripleLabelTable, t2: TripleLabelTable, settings: Settings = default_settings
) -> Optional[Permutation]:
    """sigma with t2(sigma j, sigma k, sigma l) = t1(j, k, l), compared by value"""
    source, target = _structures(t1, t2)
    context = _SearchContext(source, target, settings)
    return context.extend([])


# ==============================
# Predicted Groups
# ==============================
def agl_subgroup(field: FieldSpec, twist: Optional[Intertwiner] = None) -> PermGroup:
    """
    x -> m x^sigma + b with m a residue, conjugated by the intertwiner S so
    that it acts on the Paley column labelling (0, alpha^0, alpha^1, ...).
    """
    require_admissible(field)
    twist = twist or intertwiner(field)
    p, s = field.p, field.s
    S, S_inv = twist.S, twist.S_inverse
    columns = field.elements()
    index = {y: i for i, y in enumerate(columns)}

    def as_permutation(mapping) -> Permutation:
        return Permutation(tuple(index[mapping(y)] for y in columns))

    generators = []
    for i in range(s):
        shift = tuple(int(i == j) for j in range(s))
        generators.append(as_permutation(lambda y, shift=shift: field.add(y, shift)))
    square = matmul_mod_p(field.companion, field.companion, p)
    twisted_square = matmul_mod_p(matmul_mod_p(S, square, p), S_inv, p)
    generators.append(as_permutation(lambda y: apply_matrix(twisted_square, y, p)))
    generators.append(
        as_permutation(lambda y: apply_matrix(S, field.frobenius(apply_matrix(S_inv, y, p)), p))
    )

    group = generated_group(field.q, generators)
    expected = field.q * (field.q - 1) // 2 * s
    if group.order != expected:
        raise ConsistencyError(
            f"semilinear group on GF({field.q}) has order {group.order}, expected {expected}"
        )
    return group


def asp_group(p: int) -> PermGroup:
    """Affine symplectic group on F_p^2, point (k, kappa) at index k * p + kappa"""
    if p < 3 or not isprime(p):
        raise UsageError(f"ASp(2, p) needs an odd prime, got {p}")

    def index(k, kappa):
        return (k % p) * p + (kappa % p)

    def affine(a, b, c, d, t0=0, t1=0) -> Permutation:
        images = [0] * (p * p)
        for k in range(p):
            for kappa in range(p):
                images[index(k, kappa)] = index(a * k + b * kappa + t0, c * k + d * kappa + t1)
        return Permutation(tuple(images))

    generators = [
        affine(1, 0, 0, 1, 1, 0),
        affine(1, 0, 0, 1, 0, 1),
        affine(1, 1, 0, 1),
        affine(1, 0, 1, 1),
    ]
    group = generated_group(p * p, generators)
    expected = p ** 3 * (p * p - 1)
    if group.order != expected:
        raise ConsistencyError(f"ASp(2, {p}) has order {group.order}, expected {expected}")
    return group


def translation_subgroup(orders: Sequence[int]) -> PermGroup:
    """Translations of Z_m1 x ... x Z_mr on its lexicographically ordered elements"""
    elements = list(itertools.product(*(range(m) for m in orders)))
    index = {g: i for i, g in enumerate(elements)}
    generators = []
    for axis, m in enumerate(orders):
        generators.append(Permutation(tuple(
            index[tuple((c + (i == axis)) % mi for i, (c, mi) in enumerate(zip(g, orders)))]
            for g in elements
        )))
    return generated_group(len(elements), generators)


# ==============================
# Transitivity And Homogeneity
# ==============================
def _orbit_size(group: PermGroup, k: int, action: str, expected: int, settings: Settings) -> int:
    bound = min(expected, group.order)
    if bound > settings.orbit_cap:
        raise BudgetExceededError(
            f"orbit of size up to {bound} exceeds the orbit cap {settings.orbit_cap}",
            report={"k": k, "bound": bound, "orbit_cap": settings.orbit_cap},
        )
    seed = tuple(range(k))
    return len(group.sympy_group.orbit(seed, action=action))


def subset_orbit_size(group: PermGroup, k: int, settings: Settings = default_settings) -> int:
    """Size of the orbit of the k-subset {0, ..., k-1}"""
    if k < 0 or k > group.n:
        raise UsageError(f"k must lie in 0..{group.n}, got {k}")
    return _orbit_size(group, k, "sets", comb(group.n, k), settings)


def is_k_transitive(group: PermGroup, k: int, settings: Settings = default_settings) -> bool:
    n = group.n
    if k < 0 or k > n:
        raise UsageError(f"k must lie in 0..{n}, got {k}")
    if k == 0:
        return True
    expected = perm(n, k)
    if group.order < expected:
        return False
    if group.order == factorial(n):
        return True
    if k == 1:
        return len(_orbit(0, group.generators)) == n
    return _orbit_size(group, k, "tuples", expected, settings) == expected


def is_k_homogeneous(group: PermGroup, k: int, settings: Settings = default_settings) -> bool:
    n = group.n
    if k < 0 or k > n:
        raise UsageError(f"k must lie in 0..{n}, got {k}")
    k = min(k, n - k)
    if k == 0:
        return True
    expected = comb(n, k)
    if group.order < expected:
        return False
    if k == 1:
        return len(_orbit(0, group.generators)) == n
    return _orbit_size(group, k, "sets", expected, settings) == expected


def homogeneity_table(group: PermGroup, max_k: int = 4, settings: Settings = default_settings) -> List[dict]:
    rows = []
    for k in range(1, min(max_k, group.n) + 1):
        rows.append({
            "k": k,
            "transitive": is_k_transitive(group, k, settings),
            "homogeneous": is_k_homogeneous(group, k, settings),
        })
    return rows


def max_homogeneity(group: PermGroup, limit: int, settings: Settings = default_settings) -> int:
    """Largest k <= limit with the group k-homogeneous, scanning upward from 1"""
    best = 0
    for k in range(1, min(limit, group.n) + 1):
        if not is_k_homogeneous(group, k, settings):
            break
        best = k
    return best


# ==============================
# Comparisons
# ==============================
def is_subgroup(g1: PermGroup, g2: PermGroup) -> bool:
    if g1.n != g2.n:
        raise UsageError("groups act on different point sets")
    if g2.order % g1.order:
        return False
    return all(g2.contains(g) for g in g1.generators)


def groups_equal(g1: PermGroup, g2: PermGroup) -> bool:
    return g1.order == g2.order and is_subgroup(g1, g2)


def preserves_blocks(group: PermGroup, blocks) -> bool:
    """Every generator maps the block set onto itself"""
    block_set = {tuple(sorted(b)) for b in blocks}
    return all(
        g.apply_to_block(b) in block_set for g in group.generators for b in block_set
    )
