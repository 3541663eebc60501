"""
Membership of finite semigroups in the registered pseudovarieties, and the
table of excluded monoids with the pseudoidentities they fail.
"""

import logging
from dataclasses import dataclass

import pandas as pd

from app.application.services.catalog_service import CatalogService
from app.application.services.semigroup_service import (
    SemigroupService,
    render_assignment,
)
from app.domain.entities import FinSemigroup
from app.domain.errors import MissingIdentity
from app.domain.terms import Pseudoidentity
from app.domain.varieties import variety
from app.infrastructure.parsing.term_parser import parse_identity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExcludedFact:
    """
    A catalog monoid together with a pseudoidentity it fails and the
    least failing assignment.
    """

    semigroup: str
    identity: str
    witness: str


EXCLUDED_FACTS: tuple[ExcludedFact, ...] = (
    ExcludedFact("Sl2", "(xy)^w x = x", "x=1 y=0"),
    ExcludedFact("Sl2", "x^w = 1", "x=0"),
    ExcludedFact("C(2,1)^1", "x^(w+1) = x", "x=a"),
    ExcludedFact("C2", "x^(w+1) = x^w", "x=g"),
    ExcludedFact("C3", "x^(w+1) = x^w", "x=g"),
    ExcludedFact("C5", "x^(w+1) = x^w", "x=g"),
    ExcludedFact("B(1,2)^1", "(x^w y)^w x^w = (x^w y)^w", "x=(1,1) y=(1,2)"),
    ExcludedFact("B2^1", "((xy)^w x (xy)^w)^w = (xy)^w", "x=a y=b"),
    ExcludedFact("N^1", "xy = yx", "x=a y=b"),
    ExcludedFact("B(1,2)^1", "xy = yx", "x=(1,1) y=(1,2)"),
    ExcludedFact("B(2,1)^1", "xy = yx", "x=(1,1) y=(2,1)"),
    ExcludedFact("T^1", "x^w y = y x^w", "x=e y=a"),
)

EXCLUDED_COLUMNS = ["semigroup", "identity", "holds", "witness", "expected", "ok"]


@dataclass
class Membership:
    """
    Represents the outcome of checking a semigroup against a basis.
    """

    member: bool
    failed: Pseudoidentity | None = None
    witness: str = ""


class VarietyService:
    """
    Model checks semigroups against the bases of the variety registry.
    """

    def __init__(
        self, semigroup_service: SemigroupService, catalog_service: CatalogService
    ) -> None:
        self.semigroup_service = semigroup_service
        self.catalog_service = catalog_service

    def basis(self, name: str, basis: str = "sigma") -> list[Pseudoidentity]:
        """
        Parses a basis of the registry.

        Raises:
            UnknownVariety: If the variety or the basis is not registered.
        """

        v = variety(name)
        return [parse_identity(text, v.signature) for text in v.basis(basis)]

    def member(
        self, semigroup: FinSemigroup, name: str, basis: str = "sigma"
    ) -> Membership:
        """
        Checks whether ``semigroup`` satisfies every pseudoidentity of a
        basis of the variety ``name``.

        A semigroup without identity fails every identity mentioning 1.

        Args:
            semigroup (FinSemigroup): The semigroup to check.
            name (str): A registered variety, e.g. ``DA``.
            basis (str): ``sigma`` or, where registered, ``gamma``.

        Returns:
            Membership: Whether it is a member, and otherwise the first
                failing pseudoidentity with its least failing assignment.
        """

        for identity in self.basis(name, basis):
            try:
                holds, witness = self.semigroup_service.satisfies(semigroup, identity)
            except MissingIdentity:
                logger.debug(f"{semigroup.label} has no identity for {identity}")
                return Membership(False, identity)
            if not holds:
                return Membership(
                    False, identity, render_assignment(semigroup, witness)
                )
        return Membership(True)

    def excluded_facts(self) -> pd.DataFrame:
        """
        Checks every row of ``EXCLUDED_FACTS``.

        Returns:
            pd.DataFrame: One row per fact with the computed witness, the
                expected one and whether they agree.
        """

        rows = []
        for fact in EXCLUDED_FACTS:
            semigroup = self.catalog_service.resolve(fact.semigroup)
            identity = parse_identity(fact.identity)
            holds, witness = self.semigroup_service.satisfies(semigroup, identity)
            found = render_assignment(semigroup, witness) if witness else ""
            ok = not holds and found == fact.witness
            if not ok:
                logger.warning(
                    f"{fact.semigroup} gives {found or 'no witness'} for "
                    f"{fact.identity}, expected {fact.witness}"
                )
            rows.append(
                {
                    "semigroup": fact.semigroup,
                    "identity": fact.identity,
                    "holds": holds,
                    "witness": found,
                    "expected": fact.witness,
                    "ok": ok,
                }
            )
        return pd.DataFrame(rows, columns=EXCLUDED_COLUMNS)
