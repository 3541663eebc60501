"""
Implements use cases for building catalog objects, Rees matrix semigroups,
congruence lists and monoid enumerations
"""

from collections import Counter
from collections.abc import Callable, Iterable

import numpy as np

from app.application.dtos import (
    CatalogRequestDTO,
    CommandResultDTO,
    CongruencesRequestDTO,
    EnumerateRequestDTO,
    ReesRequestDTO,
)
from app.application.services.catalog_service import CatalogService
from app.application.services.enumeration_service import EnumerationService
from app.application.services.rees_service import ReesService
from app.domain.entities import FinSemigroup, ReesMatrix
from app.domain.errors import FormatError
from app.infrastructure.formats.semigroup_file import save_semigroup, write_semigroup


def render_partition(blocks: Iterable[Iterable[int]], name: Callable[[int], str]) -> str:
    return " ".join("{" + ",".join(name(x) for x in block) + "}" for block in blocks)


class CatalogUseCase:
    """
    Class that prints or exports a catalog object as a table file.
    """

    def __init__(self, catalog_service: CatalogService) -> None:
        """
        Initializes the use case with the catalog service.

        Parameters:
            - catalog_service (CatalogService): Resolves catalog expressions.

        Returns:
            None
        """

        self.catalog_service = catalog_service

    def execute(self, dto: CatalogRequestDTO) -> CommandResultDTO:
        """
        Parameters:
            - dto (CatalogRequestDTO): The catalog expression and an
                optional output file.

        Returns:
            CommandResultDTO: The table file text, or the path written.
        """

        semigroup = self.catalog_service.resolve(dto.expression)
        if dto.write:
            save_semigroup(semigroup, dto.write)
            return CommandResultDTO(f"wrote {semigroup.label} to {dto.write}")
        return CommandResultDTO(write_semigroup(semigroup).rstrip("\n"))


class CongruencesUseCase:
    """
    Class that lists every congruence of a small semigroup.
    """

    def __init__(
        self,
        enumeration_service: EnumerationService,
        semigroup_resolver: Callable[[str], FinSemigroup],
    ) -> None:
        self.enumeration_service = enumeration_service
        self.semigroup_resolver = semigroup_resolver

    def execute(self, dto: CongruencesRequestDTO) -> CommandResultDTO:
        semigroup = self.semigroup_resolver(dto.semigroup)
        congruences = self.enumeration_service.enumerate_congruences(semigroup)
        lines = [f"{len(congruences)} congruences"]
        lines += [render_partition(c, semigroup.name) for c in congruences]
        return CommandResultDTO("\n".join(lines))


class EnumerateUseCase:
    """
    Class that enumerates monoids of small order up to isomorphism.
    """

    def __init__(self, enumeration_service: EnumerationService) -> None:
        self.enumeration_service = enumeration_service

    def execute(self, dto: EnumerateRequestDTO) -> CommandResultDTO:
        """
        Parameters:
            - dto (EnumerateRequestDTO): The largest order, and whether to
                print every table.

        Returns:
            CommandResultDTO: The number of monoids of each order.
        """

        monoids = list(self.enumeration_service.enumerate_monoids(dto.max_order))
        counts = Counter(m.order for m in monoids)
        lines = [f"order {n}: {counts[n]}" for n in range(1, dto.max_order + 1)]
        if dto.tables:
            for monoid in monoids:
                lines.append(f"# {monoid.label}")
                lines.append(write_semigroup(monoid).rstrip("\n"))
        return CommandResultDTO("\n".join(lines))


class ReesUseCase:
    """
    Class that builds a Rees matrix semigroup and lists its congruence
    triples.
    """

    def __init__(
        self,
        rees_service: ReesService,
        semigroup_resolver: Callable[[str], FinSemigroup],
    ) -> None:
        """
        Initializes the use case.

        Parameters:
            - rees_service (ReesService): The Rees construction.
            - semigroup_resolver (Callable): Resolves the group argument.

        Returns:
            None
        """

        self.rees_service = rees_service
        self.semigroup_resolver = semigroup_resolver

    def _sandwich(self, group: FinSemigroup, text: str) -> np.ndarray:
        rows = [row.split() for row in text.split(";") if row.strip()]
        if not rows or len({len(row) for row in rows}) != 1:
            raise FormatError(f"sandwich rows must have equal length: {text!r}")
        return np.array([[group.element(v) for v in row] for row in rows])

    def execute(self, dto: ReesRequestDTO) -> CommandResultDTO:
        """
        Parameters:
            - dto (ReesRequestDTO): The group, the sandwich matrix with one
                row per element of Lambda, and the options.

        Returns:
            CommandResultDTO: The size of the semigroup and, on request,
                its congruence triples.
        """

        group = self.semigroup_resolver(dto.group)
        sandwich = self._sandwich(group, dto.sandwich)
        rees = ReesMatrix(sandwich.shape[1], sandwich.shape[0], group, sandwich)
        if dto.normalize:
            rees = self.rees_service.normalize(rees)
        semigroup = self.rees_service.build_rees(rees)
        lines = [
            f"{semigroup.label}: order {semigroup.order}, "
            f"{'normalized' if rees.normalized else 'not normalized'}",
            "sandwich: "
            + "; ".join(" ".join(group.name(v) for v in row) for row in rees.sandwich),
        ]
        if dto.triples:
            triples = self.rees_service.enumerate_triples(rees)
            lines.append(f"{len(triples)} congruence triples")
            for triple in triples:
                lines.append(
                    f"rho1={render_partition(triple.rho1, lambda i: str(i + 1))} "
                    f"rho2={render_partition(triple.rho2, lambda i: str(i + 1))} "
                    "N={" + ",".join(group.name(g) for g in sorted(triple.normal_subgroup)) + "}"
                )
        return CommandResultDTO("\n".join(lines))
