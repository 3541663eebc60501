"""
Implements use case for deciding omega-identities in G and Com
"""

from app.application.dtos import (
    CommandResultDTO,
    CrossCheckRequestDTO,
    DecideRequestDTO,
)
from app.application.services.decider_service import DecidableVariety, DeciderService
from app.application.services.semigroup_service import render_assignment
from app.domain.errors import UnknownVariety
from app.domain.generators import TermGenerator
from app.infrastructure.parsing.term_parser import parse_identity

_STATUSES = ("agree", "unseparated", "unsound")


def _variety(name: str) -> DecidableVariety:
    try:
        return DecidableVariety(name)
    except ValueError as error:
        raise UnknownVariety(f"no decision procedure for {name!r}, use G or Com") from error


class DecideUseCase:
    """
    Class that decides validity of an identity in a decidable variety.
    """

    def __init__(self, decider_service: DeciderService) -> None:
        """
        Initializes the use case with the decider service.

        Parameters:
            - decider_service (DeciderService): The decision procedures.

        Returns:
            None
        """

        self.decider_service = decider_service

    def execute(self, dto: DecideRequestDTO) -> CommandResultDTO:
        """
        Prints ``valid`` or ``invalid``, followed by a separating member of
        the oracle pool when a witness was requested.

        Parameters:
            - dto (DecideRequestDTO): The variety and the identity.

        Returns:
            CommandResultDTO: Exit code 1 for an invalid identity.
        """

        variety = _variety(dto.variety)
        identity = parse_identity(dto.identity)
        if self.decider_service.decide(variety, identity):
            return CommandResultDTO("valid")

        lines = ["invalid"]
        if dto.witness:
            found = self.decider_service.find_witness(variety, identity)
            if found is None:
                lines.append("witness: none in the oracle pool")
            else:
                member, assignment = found
                lines.append(
                    f"witness: {member.label} {render_assignment(member, assignment)}"
                )
        return CommandResultDTO("\n".join(lines), 1)


class CrossCheckUseCase:
    """
    Class that compares a decision procedure with model checking on random
    identities.
    """

    def __init__(self, decider_service: DeciderService) -> None:
        self.decider_service = decider_service

    def execute(self, dto: CrossCheckRequestDTO) -> CommandResultDTO:
        """
        Parameters:
            - dto (CrossCheckRequestDTO): The variety, the number of
                identities and the generator seed.

        Returns:
            CommandResultDTO: A status summary; exit code 1 if an identity
                decided valid fails in the pool.
        """

        variety = _variety(dto.variety)
        identities = TermGenerator(dto.seed).identities(dto.count)
        table = self.decider_service.cross_validate(variety, identities)
        counts = table["status"].value_counts()
        lines = [
            f"{len(table)} identities: "
            + ", ".join(f"{counts.get(s, 0)} {s}" for s in _STATUSES)
        ]
        unsound = table[table["status"] == "unsound"]
        if not unsound.empty:
            lines.append(unsound.to_string(index=False))
        return CommandResultDTO("\n".join(lines), 1 if len(unsound) else 0)
