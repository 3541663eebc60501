"""
Seeded random generation of omega-terms and identities with constant
exponents.
"""

import random
from dataclasses import dataclass

from app.domain.exponents import Exponent, Finite, OmegaPlus
from app.domain.terms import Letter, Power, Pseudoidentity, Term, concat


@dataclass
class TermGenerator:
    """
    Draws terms over ``alphabet`` of nesting depth at most ``max_depth``.
    Finite exponents range over 1..``max_finite`` and omega exponents over
    omega + z with |z| <= ``max_shift``.
    """

    seed: int
    alphabet: str = "xyz"
    max_depth: int = 3
    max_finite: int = 6
    max_shift: int = 4
    max_width: int = 3

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed)

    def exponent(self) -> Exponent:
        if self.rng.random() < 0.5:
            return Finite(self.rng.randint(1, self.max_finite))
        return OmegaPlus(self.rng.randint(-self.max_shift, self.max_shift))

    def term(self, depth: int | None = None) -> Term:
        depth = self.max_depth if depth is None else depth
        roll = self.rng.random()
        if depth == 0 or roll < 0.3:
            return Letter(self.rng.choice(self.alphabet))
        if roll < 0.65:
            width = self.rng.randint(2, self.max_width)
            return concat(*(self.term(depth - 1) for _ in range(width)))
        return Power(self.term(depth - 1), self.exponent())

    def identity(self) -> Pseudoidentity:
        return Pseudoidentity(self.term(), self.term())

    def identities(self, count: int) -> list[Pseudoidentity]:
        return [self.identity() for _ in range(count)]
