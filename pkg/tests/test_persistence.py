import numpy as np

from app.application.services.enumeration_service import EnumerationService
from app.infrastructure.persistence.repositories import MonoidRepository


def test_unrecorded_orders_are_not_served():
    repo = MonoidRepository("sqlite://")
    assert repo.get_by_order(2) is None
    assert repo.count(2) == 0


def test_tables_round_trip():
    repo = MonoidRepository("sqlite://")
    tables = [np.array([[0, 1], [1, 1]]), np.array([[0, 1], [1, 0]])]
    repo.save_all(2, tables)
    assert repo.count(2) == 2
    stored = repo.get_by_order(2)
    assert len(stored) == 2
    assert all(np.array_equal(a, b) for a, b in zip(stored, tables))


def test_enumeration_fills_the_cache(tmp_path):
    url = f"sqlite:///{tmp_path / 'monoids.db'}"
    first = EnumerationService(MonoidRepository(url), max_monoid_order=3)
    tables = [m.table for m in first.enumerate_monoids(3)]
    repo = MonoidRepository(url)
    assert [repo.count(n) for n in (1, 2, 3)] == [1, 2, 7]
    second = EnumerationService(repo, max_monoid_order=3)
    again = [m.table for m in second.enumerate_monoids(3)]
    assert all(np.array_equal(a, b) for a, b in zip(again, tables))
