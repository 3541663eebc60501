"""
Defines data transfer objects (DTOs) for the command-line use cases.
"""

from dataclasses import dataclass

from app.domain.terms import Signature


@dataclass
class CommandResultDTO:
    """Data Transfer Object for the printed result of a command."""

    output: str
    exit_code: int = 0


@dataclass
class ParseRequestDTO:
    """Data Transfer Object for echoing a term or identity."""

    text: str
    signature: Signature = Signature.MONOID
    normalize: bool = True


@dataclass
class EvalRequestDTO:
    """Data Transfer Object for evaluating a term in a semigroup."""

    semigroup: str
    term: str
    assignment: str  # e.g. "x=a, y=0", element names or indices


@dataclass
class SatisfiesRequestDTO:
    """Data Transfer Object for model checking a pseudoidentity."""

    semigroup: str
    identity: str


@dataclass
class DecideRequestDTO:
    """Data Transfer Object for deciding an identity in G or Com."""

    variety: str
    identity: str
    witness: bool = False


@dataclass
class CheckProofRequestDTO:
    """Data Transfer Object for checking a proof script."""

    path: str
    audit: str | None = None  # pool specification
    expand_macros: bool = False


@dataclass
class CorpusRequestDTO:
    """Data Transfer Object for replaying a proof corpus."""

    path: str
    audit: str | None = None


@dataclass
class CatalogRequestDTO:
    """Data Transfer Object for printing or exporting a catalog object."""

    expression: str
    write: str | None = None


@dataclass
class CongruencesRequestDTO:
    """Data Transfer Object for listing the congruences of a semigroup."""

    semigroup: str


@dataclass
class EnumerateRequestDTO:
    """Data Transfer Object for enumerating small monoids."""

    max_order: int
    tables: bool = False


@dataclass
class ReesRequestDTO:
    """Data Transfer Object for building a Rees matrix semigroup."""

    group: str
    sandwich: str  # rows separated by ";", e.g. "0 0; 0 1"
    triples: bool = False
    normalize: bool = False


@dataclass
class MemberRequestDTO:
    """Data Transfer Object for checking membership in a variety."""

    semigroup: str
    variety: str
    basis: str = "sigma"


@dataclass
class CrossCheckRequestDTO:
    """Data Transfer Object for comparing a decider with its oracle pool."""

    variety: str
    count: int
    seed: int
