from collections import Counter

import numpy as np
import pytest

from app.domain.errors import SizeGuardExceeded
from app.domain.partitions import all_partitions, discrete, from_labels, universal


def test_partitions():
    assert len(list(all_partitions(4))) == 15
    assert from_labels([1, 0, 1]) == ((0, 2), (1,))
    assert discrete(3) == ((0,), (1,), (2,))
    assert universal(3) == ((0, 1, 2),)


@pytest.mark.parametrize(
    ("expression", "count"),
    [("C2", 2), ("C4", 3), ("C6", 4), ("Sl2", 2), ("C(2,1)", 2), ("B(1,2)", 2), ("S3", 3)],
)
def test_congruence_counts(catalog, enumeration, expression, count):
    semigroup = catalog.resolve(expression)
    congruences = enumeration.enumerate_congruences(semigroup)
    assert len(congruences) == count
    assert discrete(semigroup.order) in congruences
    assert universal(semigroup.order) in congruences
    assert all(catalog.is_congruence(semigroup, c) for c in congruences)


def test_congruences_of_a_rectangular_band(catalog, enumeration):
    # Pairs of equivalences on the rows and on the columns.
    assert len(enumeration.enumerate_congruences(catalog.resolve("B(2,3)"))) == 2 * 5


def test_congruence_guard(catalog, enumeration):
    with pytest.raises(SizeGuardExceeded):
        enumeration.enumerate_congruences(catalog.resolve("S4"))


def test_monoids_up_to_order_three(enumeration, monoid_repo):
    monoids = list(enumeration.enumerate_monoids(3))
    assert Counter(m.order for m in monoids) == {1: 1, 2: 2, 3: 7}
    assert [m.label for m in monoids[:3]] == ["M1.0", "M2.0", "M2.1"]
    assert all(m.identity == 0 for m in monoids)
    assert monoid_repo.count(3) == 7


def test_monoids_are_pairwise_non_isomorphic(enumeration):
    tables = [m.table for m in enumeration.enumerate_monoids(3) if m.order == 3]
    canonical = {
        tuple(enumeration.canonical_table(np.array(t)).ravel().tolist()) for t in tables
    }
    assert len(canonical) == len(tables)


def test_enumeration_uses_the_cache(enumeration, monoid_repo):
    list(enumeration.enumerate_monoids(2))
    monoid_repo.save_all(2, monoid_repo.get_by_order(2)[:1])
    assert sum(m.order == 2 for m in enumeration.enumerate_monoids(2)) == 1


@pytest.mark.slow
def test_monoids_of_order_four(enumeration):
    assert sum(m.order == 4 for m in enumeration.enumerate_monoids(4)) == 35


def test_monoid_guard(enumeration):
    with pytest.raises(SizeGuardExceeded):
        list(enumeration.enumerate_monoids(5))
