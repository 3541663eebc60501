"""
Implements use cases for model checking pseudoidentities in finite
semigroups
"""

from collections.abc import Callable

from app.application.dtos import (
    CommandResultDTO,
    MemberRequestDTO,
    SatisfiesRequestDTO,
)
from app.application.services.semigroup_service import (
    SemigroupService,
    render_assignment,
)
from app.application.services.variety_service import VarietyService
from app.domain.entities import FinSemigroup
from app.infrastructure.parsing.term_parser import parse_identity


class SatisfiesUseCase:
    """
    Class that checks one pseudoidentity in one finite semigroup.
    """

    def __init__(
        self,
        semigroup_service: SemigroupService,
        semigroup_resolver: Callable[[str], FinSemigroup],
    ) -> None:
        """
        Initializes the use case.

        Parameters:
            - semigroup_service (SemigroupService): The model checker.
            - semigroup_resolver (Callable): Turns a file path or a catalog
                expression into a semigroup.

        Returns:
            None
        """

        self.semigroup_service = semigroup_service
        self.semigroup_resolver = semigroup_resolver

    def execute(self, dto: SatisfiesRequestDTO) -> CommandResultDTO:
        """
        Prints ``true``, or ``false`` with the least failing assignment.

        Parameters:
            - dto (SatisfiesRequestDTO): The semigroup and the identity.

        Returns:
            CommandResultDTO: Exit code 1 when the identity fails.
        """

        semigroup = self.semigroup_resolver(dto.semigroup)
        holds, witness = self.semigroup_service.satisfies(
            semigroup, parse_identity(dto.identity)
        )
        if holds:
            return CommandResultDTO("true")
        return CommandResultDTO(
            f"false witness: {render_assignment(semigroup, witness)}", 1
        )


class MemberUseCase:
    """
    Class that checks a semigroup against a basis of a registered variety.
    """

    def __init__(
        self,
        variety_service: VarietyService,
        semigroup_resolver: Callable[[str], FinSemigroup],
    ) -> None:
        self.variety_service = variety_service
        self.semigroup_resolver = semigroup_resolver

    def execute(self, dto: MemberRequestDTO) -> CommandResultDTO:
        semigroup = self.semigroup_resolver(dto.semigroup)
        membership = self.variety_service.member(semigroup, dto.variety, dto.basis)
        if membership.member:
            return CommandResultDTO("member")
        detail = f"fails {membership.failed}"
        if membership.witness:
            detail += f" witness: {membership.witness}"
        return CommandResultDTO(f"not a member: {detail}", 1)


class ExcludedFactsUseCase:
    """
    Class that reproduces the table of excluded monoids.
    """

    def __init__(self, variety_service: VarietyService) -> None:
        self.variety_service = variety_service

    def execute(self) -> CommandResultDTO:
        """
        Returns:
            CommandResultDTO: The fact table; exit code 1 unless every row
                agrees with its expected witness.
        """

        table = self.variety_service.excluded_facts()
        return CommandResultDTO(
            table.to_string(index=False), 0 if table["ok"].all() else 1
        )
