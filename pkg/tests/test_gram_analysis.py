import itertools
import random

import pytest

from etf_forge.core.cyclotomic import Cyclotomic, root_of_unity
from etf_forge.core.exceptions import NotEtfError, UsageError
from etf_forge.models.labels import NO_LABEL
from etf_forge.services import construct, gram_analysis


def test_make_gram_validation():
    one, z = Cyclotomic.one(3), root_of_unity(3, 1)
    with pytest.raises(UsageError):
        gram_analysis.make_gram([[one, z]])
    with pytest.raises(UsageError):
        gram_analysis.make_gram([[one, z], [z, one]])
    with pytest.raises(UsageError):
        gram_analysis.make_gram([[one, z], [z.conj(), one * 2]])
    G = gram_analysis.make_gram([[one, z], [z.conj(), one]], labels=["a", "b"])
    assert G.labels == ("a", "b")


def test_paley_7_welch_bound(gram7):
    assert gram7.diagonal == 3
    equiangular = gram_analysis.check_equiangular(gram7)
    assert equiangular.rational_value == 2
    welch = gram_analysis.welch_bound_check(gram7)
    assert welch.ok and welch.expected == 2


def test_non_tight_gram(phi7):
    G = gram_analysis.gram(construct.scaled_row_frame(phi7, 0, 2))
    assert not gram_analysis.check_tight(G).ok
    with pytest.raises(NotEtfError):
        gram_analysis.require_etf(G)


def test_triple_products_need_distinct_indices(gram7):
    with pytest.raises(UsageError):
        gram_analysis.triple_product(gram7, 0, 0, 1)


def test_triple_table_identities(gram7):
    table = gram_analysis.triple_table_from_gram(gram7)
    rng = random.Random(0)
    for _ in range(50):
        j, k, l = rng.sample(range(7), 3)
        value = table[(j, k, l)]
        assert table[(k, l, j)] == value
        assert table[(l, k, j)] == value.conj()
        assert value == gram_analysis.triple_product(gram7, j, k, l)


def test_label_tables(gram7):
    pairs = gram_analysis.pair_labels(gram7)
    assert pairs.label(2, 2) == NO_LABEL
    for j, k in itertools.permutations(range(7), 2):
        label = pairs.label(j, k)
        assert pairs.value_of_label(label) == gram7[j, k]
        assert pairs.value_of_label(pairs.conj[label]) == gram7[k, j]
    triples = gram_analysis.triple_labels(gram7)
    assert triples.label(0, 1, 1) == NO_LABEL
    assert triples.value_of_label(triples.label(0, 1, 2)) == gram_analysis.triple_product(gram7, 0, 1, 2)


@pytest.mark.parametrize("triple, expected", [
    ((0, 6, 4), "QQQ"),
    ((0, 1, 2), "QNN"),
    ((0, 1, 3), "NNN"),
])
def test_paley_7_triple_classes(triple, expected):
    assert gram_analysis.paley_tp_class(7, *triple) == expected


def test_paley_triple_class_needs_distinct_points():
    with pytest.raises(UsageError):
        gram_analysis.paley_tp_class(7, 1, 1, 2)


def test_triple_classes_determine_paley_triple_products(gram7, phi7):
    """Equal classes give equal triple products on Phi_7"""
    by_class = {}
    for j, k, l in itertools.combinations(range(7), 3):
        cls = gram_analysis.paley_tp_class(7, *(phi7.labels[i] for i in (j, k, l)))
        by_class.setdefault(cls, set()).add(gram_analysis.triple_product(gram7, j, k, l))
    assert all(len(values) == 1 for values in by_class.values())


def _values_by_class(q, G, orderings):
    by_class = {}
    for j, k, l in orderings:
        cls = gram_analysis.paley_tp_class(q, *(G.labels[i] for i in (j, k, l)))
        by_class.setdefault(cls, set()).add(gram_analysis.triple_product(G, j, k, l))
    return by_class


def test_paley_7_triple_products_are_not_uniform(gram7):
    assert not gram_analysis.check_3c_uniform(gram7).ok
    by_class = _values_by_class(7, gram7, itertools.permutations(range(7), 3))
    assert sorted(by_class) == ["NNN", "QNN", "QQN", "QQQ"]
    assert all(len(values) == 1 for values in by_class.values())
    assert len(set().union(*by_class.values())) == 4


def test_triple_classes_determine_paley_27_triple_products(gram27):
    orderings = [
        ordering
        for j, k, l in itertools.combinations(range(27), 3)
        for ordering in ((j, k, l), (k, j, l))
    ]
    by_class = _values_by_class(27, gram27, orderings)
    assert len(by_class) == 4
    assert all(len(values) == 1 for values in by_class.values())
    assert len(set().union(*by_class.values())) == 4


def test_switching_equivalence(phi7, gram7):
    rescaled = gram_analysis.gram(construct.rescale_columns(phi7, [3, 1, 4, 1, 5, 2, 6]))
    assert gram_analysis.switching_equivalent_aligned(gram7, rescaled)
    conjugated = gram_analysis.gram(construct.conjugate_frame(phi7))
    assert not gram_analysis.switching_equivalent_aligned(gram7, conjugated)


def test_conference_triple_products(conference3, conference7):
    for G in (conference3, conference7):
        verdict = gram_analysis.check_3c_uniform(G)
        assert verdict.ok
        assert verdict.real_part == 0
        assert gram_analysis.all_triple_products_imaginary(G)


def test_simplex_triple_products_are_uniform():
    G = construct.simplex_gram(4)
    assert gram_analysis.check_3c_uniform(G).ok
    assert not gram_analysis.all_triple_products_imaginary(G)
