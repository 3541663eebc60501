"""
Implements use cases for echoing and evaluating omega-terms
"""

from collections.abc import Callable

from app.application.dtos import CommandResultDTO, EvalRequestDTO, ParseRequestDTO
from app.application.services.semigroup_service import SemigroupService
from app.domain.entities import FinSemigroup
from app.domain.errors import FormatError
from app.domain.terms import normalize_ambient, render_term
from app.infrastructure.parsing.term_parser import parse_identity, parse_term


class ParseTermUseCase:
    """
    Class that parses a term or an identity and prints it back.
    """

    def execute(self, dto: ParseRequestDTO) -> CommandResultDTO:
        """
        Parses the text and renders it, normalized unless asked otherwise.

        Parameters:
            - dto (ParseRequestDTO): The text and its signature.

        Returns:
            CommandResultDTO: The rendered term or identity.
        """

        def show(t):
            return render_term(normalize_ambient(t) if dto.normalize else t)

        if "=" in dto.text:
            identity = parse_identity(dto.text, dto.signature)
            return CommandResultDTO(f"{show(identity.lhs)} = {show(identity.rhs)}")
        return CommandResultDTO(show(parse_term(dto.text, dto.signature)))


class EvaluateTermUseCase:
    """
    Class that evaluates a term in a finite semigroup.
    """

    def __init__(
        self,
        semigroup_service: SemigroupService,
        semigroup_resolver: Callable[[str], FinSemigroup],
    ) -> None:
        """
        Initializes the use case.

        Parameters:
            - semigroup_service (SemigroupService): The evaluator.
            - semigroup_resolver (Callable): Turns a file path or a catalog
                expression into a semigroup.

        Returns:
            None
        """

        self.semigroup_service = semigroup_service
        self.semigroup_resolver = semigroup_resolver

    def execute(self, dto: EvalRequestDTO) -> CommandResultDTO:
        """
        Evaluates the term under the assignment and prints the element name.

        Parameters:
            - dto (EvalRequestDTO): Semigroup, term and assignment.

        Returns:
            CommandResultDTO: The value of the term.
        """

        semigroup = self.semigroup_resolver(dto.semigroup)
        assignment = {}
        for item in filter(None, (part.strip() for part in dto.assignment.split(","))):
            letter, sep, value = item.partition("=")
            if not sep:
                raise FormatError(f"bad assignment {item!r}, expected letter=element")
            assignment[letter.strip()] = semigroup.element(value.strip())
        value = self.semigroup_service.eval_term(
            semigroup, parse_term(dto.term), assignment
        )
        return CommandResultDTO(semigroup.name(value))
