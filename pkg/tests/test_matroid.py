import itertools
import random
from math import comb

import pytest
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from etf_forge.core.config import Settings
from etf_forge.core.cyclotomic import euler_phi, root_of_unity
from etf_forge.core.exceptions import BudgetExceededError, UsageError
from etf_forge.services import construct, gram_analysis, matroid, symmetry


@pytest.mark.parametrize("d, n, expected", [(3, 7, 4), (5, 11, 4), (13, 27, 6), (2, 3, 3), (4, 4, 5)])
def test_spark_lower_bound(d, n, expected):
    assert matroid.spark_lower_bound(d, n) == expected


def test_lower_bound_attained():
    assert matroid.spark_lower_bound_attained(2, 3, 3)
    assert not matroid.spark_lower_bound_attained(3, 7, 4)
    with pytest.raises(UsageError):
        matroid.spark_lower_bound_attained(3, 3, 4)


def _rank_over_rationals(columns, m):
    """Rank over Q(zeta_m) read off the Q-rank of the regular representation"""
    phi = euler_phi(m)
    basis = [root_of_unity(m, i) for i in range(phi)]
    rows = []
    for r in range(len(columns[0])):
        blocks = [(column[r] * b).coeffs for column in columns for b in basis]
        for out in range(phi):
            rows.append([QQ(c[out].numerator, c[out].denominator) for c in blocks])
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ).rank() // phi


def test_rank_oracle_on_all_subsets_of_phi7(phi7, gram7):
    for size in range(1, 8):
        for subset in itertools.combinations(range(7), size):
            columns = [phi7.column(j) for j in subset]
            assert matroid.rank_of_subset(gram7, subset) == _rank_over_rationals(columns, 7)


def test_rank_oracle_on_random_subsets_of_phi11(gram11):
    phi11 = construct.paley_etf(11)
    rng = random.Random(0)
    for _ in range(1000):
        subset = rng.sample(range(11), rng.randint(1, 11))
        columns = [phi11.column(j) for j in subset]
        assert matroid.rank_of_subset(gram11, subset) == _rank_over_rationals(columns, 11)


def test_rank_of_subset_rejects_bad_indices(gram7):
    with pytest.raises(UsageError):
        matroid.rank_of_subset(gram7, [0, 7])


def test_spark_of_paley_7(gram7, settings):
    assert matroid.spark(gram7, settings) == 4
    design = matroid.bender(gram7, settings)
    assert (design.v, design.k, len(design)) == (7, 4, 35)
    assert matroid.check_circuits(gram7, design, settings) == 35


def test_spark_of_paley_11(gram11, settings):
    assert matroid.spark(gram11, settings) == 6
    assert len(matroid.bender(gram11, settings)) == comb(11, 6)


def test_dependent_circuits_are_found():
    frame = construct.frame_from_rows([[1, 0, -1, 0], [0, 1, 0, -1]])
    G = gram_analysis.gram(frame)
    design = matroid.bender(G)
    assert design.k == 2
    assert design.blocks == ((0, 2), (1, 3))


def test_results_do_not_depend_on_jobs(gram7, settings):
    assert matroid.bender(gram7, settings, jobs=2) == matroid.bender(gram7, settings, jobs=1)


def test_budget_is_enforced_up_front(gram11):
    with pytest.raises(BudgetExceededError) as info:
        matroid.spark(gram11, Settings(budget=100))
    assert info.value.report["required_subsets"] > 100
    assert info.value.report["spark_lower_bound"] == 4


def test_required_subsets():
    assert matroid.required_subsets(3, 7) == 7 + 21 + 35
    assert matroid.required_subsets(13, 27) == sum(comb(27, t) for t in range(1, 7))


def test_binder():
    simplex = construct.simplex_gram(4)
    blocks = matroid.binder(simplex)
    assert blocks.blocks == ((0, 1, 2, 3),)


def test_binder_is_empty_off_the_bound(gram7, settings):
    assert matroid.binder(gram7, settings).blocks == ()


def test_binder_finds_a_planted_simplex(settings):
    # a (3, 4)-simplex beside one orthogonal vector of the same norm
    planted = construct.pad_with_basis(construct.simplex_gram(4), 1)
    assert not gram_analysis.check_tight(planted).ok
    assert matroid.spark(planted, settings) == 4
    assert matroid.bender(planted, settings).blocks == ((0, 1, 2, 3),)
    assert matroid.binder(planted, settings).blocks == ((0, 1, 2, 3),)
    assert matroid.matroid_report(planted, settings=settings).binder_nonempty
    with pytest.raises(UsageError):
        construct.pad_with_basis(construct.simplex_gram(4), 0)


def test_spark_search_can_stop_early(gram7, gram11, settings):
    assert matroid.spark(gram7, settings, max_size=4) == 4
    assert matroid.spark(gram7, settings, max_size=3) == 4
    assert matroid.spark(gram11, settings, max_size=9) == 6
    with pytest.raises(BudgetExceededError) as info:
        matroid.spark(gram11, settings, max_size=4)
    assert info.value.report["spark_at_least"] == 5
    with pytest.raises(UsageError):
        matroid.spark(gram7, settings, max_size=1)


def test_t_designs():
    fano = construct.development([7], [1, 2, 4])
    assert matroid.is_t_design(fano, 2).lam == 1
    assert not matroid.is_t_design(fano, 3).ok
    with pytest.raises(UsageError):
        matroid.is_t_design(fano, 4)


def test_bender_design_degree(gram7, settings):
    lines = symmetry.line_symmetry_group(gram_analysis.triple_labels(gram7), settings)
    design = matroid.bender(gram7, settings)
    verdict = matroid.bender_design_degree(design, lines, settings)
    assert verdict.t == 4 and verdict.lam == 1


def test_matroid_report(gram7, settings):
    report = matroid.matroid_report(gram7, settings=settings)
    assert report.spark == 4
    assert report.lower_bound == 4
    assert not report.lower_bound_attained
    assert not report.binder_nonempty


@pytest.mark.slow
def test_spark_of_paley_27(gram27, settings):
    design = matroid.bender(gram27, settings, jobs=4)
    assert design.k == 8
    assert len(design) == 351
    assert len(design) * comb(8, 2) == 28 * comb(27, 2)
    verdict = matroid.bender_design_degree(design)
    assert verdict.t == 2 and verdict.lam == 28
    lines = symmetry.line_symmetry_group(gram_analysis.triple_labels(gram27), settings)
    assert symmetry.preserves_blocks(lines, design.blocks)
