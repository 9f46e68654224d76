"""
Exact dependence structure of a frame, read from its Gram matrix.

Subsets are enumerated depth-first in lexicographic order. Each node extends
the echelon basis of its prefix by one vector, so a subset costs a single
reduction. Work is split by smallest element and merged in that order, which
keeps results independent of the worker count.
"""
import itertools
import logging
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb, isqrt
from typing import List, Optional, Sequence, Tuple

from ..core.config import Settings
from ..core.config import settings as default_settings
from ..core.elimination import EchelonBasis, RingArithmetic, Vector, rank, to_integral
from ..core.exceptions import BudgetExceededError, ConsistencyError, UsageError
from ..models.design import BlockDesign, MatroidReport
from ..models.frame import GramMatrix
from ..models.group import PermGroup
from ..models.verdict import DesignVerdict
from ..utils.matrices import matmul, scale, trace
from .gram_analysis import check_equiangular, check_tight
from .symmetry import max_homogeneity, preserves_blocks

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


# ==============================
# Ranks
# ==============================
def rank_of_subset(G: GramMatrix, subset: Sequence[int]) -> int:
    """Rank of the principal Gram submatrix on subset"""
    indices = sorted(set(subset))
    if any(not 0 <= j < G.n for j in indices):
        raise UsageError(f"subset {list(subset)} leaves 0..{G.n - 1}")
    if not indices:
        return 0
    return rank([[G[j, k] for k in indices] for j in indices], G.order)


def _coordinate_vectors(G: GramMatrix) -> Tuple[int, List[Vector]]:
    """
    Columns of G restricted to a maximal independent set of rows. They have
    the same dependencies as the frame vectors and length equal to the rank.
    """
    basis = EchelonBasis(RingArithmetic(G.order))
    rows = [r for r in range(G.n) if basis.insert(to_integral(G.entries[r]))]
    vectors = [to_integral([G[r, j] for r in rows]) for j in range(G.n)]
    return len(rows), vectors


# ==============================
# Spark Bounds
# ==============================
def spark_lower_bound(d: int, n: int) -> int:
    """Smallest s with (s - 1)^2 >= d (n - 1) / (n - d)"""
    if n <= d:
        return d + 1
    target = Fraction(d * (n - 1), n - d)
    r = isqrt(target.numerator // target.denominator)
    while r * r < target:
        r += 1
    return max(2, r + 1)


def spark_lower_bound_attained(d: int, n: int, s: int) -> bool:
    if n <= d or s < 2:
        raise UsageError("the spark bound needs n > d and s >= 2")
    return (s - 1) ** 2 == Fraction(d * (n - 1), n - d)


# ==============================
# Spark Search
# ==============================
def _search_from(first: int, vectors: List[Vector], order: int, limit: int, budget: int):
    """
    DFS over subsets whose smallest element is first.

    Returns (nodes, depth, found): the smallest dependent size seen (None when
    every subset up to limit is independent) and the dependent subsets of that
    size in lexicographic order.
    """
    arithmetic = RingArithmetic(order)
    basis = EchelonBasis(arithmetic)
    n = len(vectors)
    state = {"nodes": 0, "limit": limit, "found": [], "depth": None}

    def visit(subset: List[int], j: int) -> None:
        depth = len(subset) + 1
        if depth > state["limit"]:
            return
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise BudgetExceededError(
                f"spark search exceeded the budget of {budget} subsets",
                report={"budget": budget, "first": first},
            )
        residual = basis.reduce(vectors[j])
        if arithmetic.is_zero(residual):
            if state["depth"] is None or depth < state["depth"]:
                state["depth"], state["limit"], state["found"] = depth, depth, []
            state["found"].append(tuple(subset + [j]))
            return
        if depth >= state["limit"]:
            return
        basis.rows.append(arithmetic.pivot_form(residual))
        subset.append(j)
        for k in range(j + 1, n):
            visit(subset, k)
        subset.pop()
        basis.rows.pop()

    visit([], first)
    return state["nodes"], state["depth"], state["found"]


def required_subsets(d: int, n: int, max_size: Optional[int] = None) -> int:
    """Subsets that must be visited whatever the spark turns out to be"""
    bound = min(spark_lower_bound(d, n), d, max_size or d)
    return sum(comb(n, t) for t in range(1, bound + 1))


def _dependent_subsets(G: GramMatrix, settings: Settings, jobs: Optional[int] = None,
                       max_size: Optional[int] = None):
    if max_size is not None and max_size < 2:
        raise UsageError(f"max_size must be at least 2, got {max_size}")
    d, vectors = _coordinate_vectors(G)
    n = G.n
    limit = min(d, max_size or d)
    budget = settings.budget
    needed = required_subsets(d, n, max_size)
    if needed > budget:
        raise BudgetExceededError(
            f"spark of a ({d}, {n}) frame needs at least {needed} subsets, budget is {budget}",
            report={
                "d": d, "n": n, "budget": budget, "required_subsets": needed,
                "spark_lower_bound": spark_lower_bound(d, n),
            },
        )

    jobs = jobs or settings.jobs
    args = [(first, vectors, G.order, limit, budget) for first in range(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_from, *zip(*args)))
    else:
        results = [_search_from(*a) for a in args]

    nodes = sum(r[0] for r in results)
    if nodes > budget:
        raise BudgetExceededError(
            f"spark search visited {nodes} subsets, budget is {budget}",
            report={"budget": budget, "visited": nodes},
        )
    depths = [r[1] for r in results if r[1] is not None]
    if not depths and limit < d:
        raise BudgetExceededError(
            f"no dependent subset of size <= {limit} among {n} vectors of rank {d}",
            report={"max_size": max_size, "visited": nodes, "spark_at_least": limit + 1},
        )
    if not depths:
        logger.info("(%d, %d) frame is full spark after %d subsets", d, n, nodes)
        return d, d + 1, []
    spark_value = min(depths)
    found = [s for r in results if r[1] == spark_value for s in r[2]]
    logger.info("spark %d with %d short circuits after %d subsets", spark_value, len(found), nodes)
    return d, spark_value, found


def spark(G: GramMatrix, settings: Settings = default_settings, jobs: Optional[int] = None,
          max_size: Optional[int] = None) -> int:
    """
    Size of the smallest dependent subset; d + 1 when the frame is full spark.
    With max_size the search stops at that size and a frame with no dependent
    subset that small raises BudgetExceededError carrying the lower bound.
    """
    return _dependent_subsets(G, settings, jobs, max_size)[1]


def bender(G: GramMatrix, settings: Settings = default_settings, jobs: Optional[int] = None) -> BlockDesign:
    """All dependent subsets of spark size"""
    d, s, found = _dependent_subsets(G, settings, jobs)
    if s == d + 1:
        total = comb(G.n, s)
        if total > settings.budget:
            raise BudgetExceededError(
                f"full-spark bender has {total} blocks, budget is {settings.budget}",
                report={"blocks": total, "budget": settings.budget},
            )
        return BlockDesign.from_blocks(G.n, s, itertools.combinations(range(G.n), s))
    return BlockDesign.from_blocks(G.n, s, found)


def check_circuits(G: GramMatrix, design: BlockDesign, settings: Settings = default_settings) -> int:
    """Sampled blocks are dependent with every maximal proper subset independent; returns the sample size"""
    rng = random.Random(settings.seed)
    blocks = list(design.blocks)
    sample = blocks if len(blocks) <= settings.circuit_sample else rng.sample(blocks, settings.circuit_sample)
    for block in sample:
        k = len(block)
        if rank_of_subset(G, block) != k - 1:
            raise ConsistencyError(f"bender block {list(block)} does not have rank {k - 1}")
        for sub in itertools.combinations(block, k - 1):
            if rank_of_subset(G, sub) != k - 1:
                raise ConsistencyError(f"bender block {list(block)} is not a circuit")
    return len(sample)


def binder(G: GramMatrix, settings: Settings = default_settings, force: bool = False,
           design: Optional[BlockDesign] = None) -> BlockDesign:
    """
    Spark-size subsets that are simplices for their span. For an ETF the
    search is skipped unless the spark meets the lower bound, since otherwise
    no simplex can occur; any other equal-norm frame is searched directly.
    """
    etf = _is_etf(G)
    design = design or bender(G, settings)
    d = rank(G.entries, G.order)
    s = design.k
    if etf and G.n > d and not force and not spark_lower_bound_attained(d, G.n, s):
        return BlockDesign(v=G.n, k=s, blocks=())

    blocks = []
    for block in design.blocks:
        sub = [[G[j, k] for k in block] for j in block]
        if rank(sub, G.order) != len(block) - 1:
            continue
        squared = matmul(sub, sub)
        factor = trace(squared).as_rational() / trace(sub).as_rational()
        if squared == scale(sub, factor):
            blocks.append(block)
    return BlockDesign(v=G.n, k=s, blocks=tuple(blocks))


# ==============================
# Designs
# ==============================
def is_t_design(design: BlockDesign, t: int) -> DesignVerdict:
    if t < 0 or t > design.k:
        raise UsageError(f"t must lie in 0..{design.k}, got {t}")
    if not design.blocks:
        return DesignVerdict(ok=False, t=t, reason="no blocks")
    tally = Counter(sub for block in design.blocks for sub in itertools.combinations(block, t))
    if len(tally) != comb(design.v, t):
        return DesignVerdict(ok=False, t=t, reason=f"some {t}-subsets lie in no block")
    counts = set(tally.values())
    if len(counts) != 1:
        return DesignVerdict(ok=False, t=t, reason=f"{t}-subset counts {sorted(counts)} are not constant")
    return DesignVerdict(ok=True, t=t, lam=counts.pop())


def bender_design_degree(design: BlockDesign, sym: Optional[PermGroup] = None,
                         settings: Settings = default_settings) -> DesignVerdict:
    """
    Largest t for which the bender is a t-design. A bender preserved by a
    k-homogeneous line group is at least a k-design.
    """
    best = DesignVerdict(ok=False, t=0, reason="not a 1-design")
    for t in range(1, design.k + 1):
        verdict = is_t_design(design, t)
        if not verdict.ok:
            break
        best = verdict

    if sym is not None:
        if not preserves_blocks(sym, design.blocks):
            raise ConsistencyError("a line symmetry does not preserve the bender")
        guaranteed = max_homogeneity(sym, design.k, settings)
        if best.t < guaranteed:
            raise ConsistencyError(
                f"bender is only a {best.t}-design under a {guaranteed}-homogeneous line group"
            )
    return best


def matroid_report(G: GramMatrix, sym: Optional[PermGroup] = None,
                   settings: Settings = default_settings, jobs: Optional[int] = None) -> MatroidReport:
    design = bender(G, settings, jobs)
    check_circuits(G, design, settings)
    d = rank(G.entries, G.order)
    lower = spark_lower_bound(d, G.n)
    if _is_etf(G) and design.k < lower:
        raise ConsistencyError(f"spark {design.k} is below the lower bound {lower}")
    attained = G.n > d and spark_lower_bound_attained(d, G.n, design.k)
    degree = bender_design_degree(design, sym, settings)
    return MatroidReport(
        spark=design.k,
        lower_bound=lower,
        lower_bound_attained=attained,
        bender=design,
        design_degree=degree.t,
        design_lambda=degree.lam,
        binder_nonempty=bool(binder(G, settings, design=design).blocks),
    )


def _is_etf(G: GramMatrix) -> bool:
    return check_equiangular(G).ok and check_tight(G).ok
