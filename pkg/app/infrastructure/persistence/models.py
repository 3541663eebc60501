"""
Defines database models for caching enumerated monoids.
It uses SQLAlchemy as an ORM (Object-Relational Mapping) library to interact
with the database.
"""

from sqlalchemy import Column, Integer, String, Text
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class MonoidModel(Base):
    """
    Represents one monoid table, stored in its canonical form.

    ``canonical_table`` holds the row-major entries separated by spaces.
    """

    __tablename__ = "monoid"
    id = Column(Integer, primary_key=True)
    order = Column(Integer, index=True)
    canonical_table = Column(Text)
    label = Column(String)


class EnumerationRunModel(Base):
    """
    Marks an order whose enumeration completed and was stored.
    """

    __tablename__ = "enumeration_run"
    id = Column(Integer, primary_key=True)
    order = Column(Integer, unique=True)
    count = Column(Integer)
