"""
Defines repository interfaces for domain entities.
"""

from abc import ABC, abstractmethod

import numpy as np


class IMonoidRepository(ABC):
    """
    An interface for a cache of monoid tables enumerated up to isomorphism.
    """

    @abstractmethod
    def get_by_order(self, order: int) -> list[np.ndarray] | None:
        """
        Returns the cached tables of the given order.

        Args:
            order (int): The number of elements.

        Returns:
            list[np.ndarray] | None: The canonical tables, or None if the
                order has not been enumerated yet.
        """
        pass

    @abstractmethod
    def save_all(self, order: int, tables: list[np.ndarray]) -> None:
        """
        Stores the complete list of tables of the given order.

        Args:
            order (int): The number of elements.
            tables (list[np.ndarray]): The canonical tables.

        Returns:
            None
        """
        pass

    @abstractmethod
    def count(self, order: int) -> int:
        """
        Returns the number of cached tables of the given order.
        """
        pass


class InMemoryMonoidRepository(IMonoidRepository):
    """
    A dictionary-backed repository, used when no database is wanted.
    """

    def __init__(self) -> None:
        self._tables: dict[int, list[np.ndarray]] = {}

    def get_by_order(self, order: int) -> list[np.ndarray] | None:
        return self._tables.get(order)

    def save_all(self, order: int, tables: list[np.ndarray]) -> None:
        self._tables[order] = list(tables)

    def count(self, order: int) -> int:
        return len(self._tables.get(order, []))
