"""
Contains repositories for interacting with the monoid cache database.
"""

import logging
from typing import Any

import numpy as np
from sqlalchemy import and_, create_engine
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import sessionmaker

from app.domain.repositories import IMonoidRepository
from app.infrastructure.persistence.models import (
    Base,
    EnumerationRunModel,
    MonoidModel,
)

logger = logging.getLogger(__name__)


class SQLAlchemyRepository:
    """
    A class that provides a high-level interface for interacting with
    a database using SQLAlchemy.
    """

    def __init__(self, db_url: str) -> None:
        """
        Initializes a new instance of the repository.

        Args:
            db_url (str): The URL of the database.

        Returns:
            None
        """
        self.engine = create_engine(db_url)
        session = sessionmaker(bind=self.engine)
        self.session = session()

    def init_database(self) -> bool:
        """Creates the tables if they do not exist.

        Returns:
            bool: True if the database was successfully initialized,
                False otherwise.
        """

        try:
            Base.metadata.create_all(self.engine)
        except SQLAlchemyError:
            logger.exception("Error creating tables")
            return False
        else:
            return True

    def create_many(self, model: type[Base], rows: list[dict[str, Any]]) -> None:
        """
        Inserts several records in one transaction.

        Args:
            model (type[Base]): The table model.
            rows (list[dict[str, Any]]): Column values, one dict per row.

        Returns:
            None
        """

        self.session.add_all([model(**row) for row in rows])
        self.session.commit()

    def read(
        self, model: type[Base], criteria: dict[str, Any] | None = None
    ) -> list[Base]:
        """
        Reads records matching all the given column values.

        Args:
            model (type[Base]): The model class to query.
            criteria (dict[str, Any] | None): Field names and values to
                filter by.

        Returns:
            list[Base]: The matching records ordered by id.
        """

        query = self.session.query(model)
        if criteria:
            query = query.filter(
                and_(
                    *(getattr(model, name) == value for name, value in criteria.items())
                )
            )
        return query.order_by(model.id).all()


class MonoidRepository(SQLAlchemyRepository, IMonoidRepository):
    """
    Stores enumerated monoid tables; an order is only served from the cache
    once its enumeration run has been recorded as complete.
    """

    def __init__(self, db_url: str) -> None:
        super().__init__(db_url)
        self.init_database()

    def get_by_order(self, order: int) -> list[np.ndarray] | None:
        try:
            if not self.read(EnumerationRunModel, {"order": order}):
                return None
            records = self.read(MonoidModel, {"order": order})
        except SQLAlchemyError:
            logger.warning(f"Monoid cache unavailable for order {order}")
            self.session.rollback()
            return None
        return [
            np.array(record.canonical_table.split(), dtype=np.int64).reshape(
                order, order
            )
            for record in records
        ]

    def save_all(self, order: int, tables: list[np.ndarray]) -> None:
        rows = [
            {
                "order": order,
                "canonical_table": " ".join(str(int(v)) for v in table.ravel()),
                "label": f"M{order}.{k}",
            }
            for k, table in enumerate(tables)
        ]
        try:
            self.create_many(MonoidModel, rows)
            self.create_many(
                EnumerationRunModel, [{"order": order, "count": len(tables)}]
            )
        except SQLAlchemyError:
            logger.exception(f"Could not cache monoids of order {order}")
            self.session.rollback()

    def count(self, order: int) -> int:
        runs = self.read(EnumerationRunModel, {"order": order})
        return runs[0].count if runs else 0
