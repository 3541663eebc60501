"""
Defines data entities used throughout the application.
"""

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from app.domain.errors import NotAGroup, NotAssociative, Rejection, SemigroupError
from app.domain.exponents import AnyExponent
from app.domain.partitions import Partition
from app.domain.terms import Context, Pseudoidentity, Signature, Term


@dataclass(frozen=True, eq=False)
class FinSemigroup:
    """
    Represents a finite semigroup or monoid by its multiplication table.

    Row a, column b of ``table`` holds the index of the product ab.  The
    table is validated for associativity on construction and frozen.
    """

    table: np.ndarray
    identity: int | None = None
    names: tuple[str, ...] | None = None
    signature: Signature = Signature.SEMIGROUP
    label: str = ""

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or not table.size:
            raise SemigroupError(f"table must be a nonempty square array: {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise SemigroupError("table entries must be element indices")
        left = table[table, :]
        right = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            raise NotAssociative(tuple(int(v) for v in bad[0]))
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

        identity = self.identity
        if identity is not None and not self._is_identity(identity):
            raise SemigroupError(f"element {identity} is not an identity")
        if identity is None and self.signature is Signature.MONOID:
            identity = self.find_identity()
            if identity is None:
                raise SemigroupError("a monoid needs an identity element")
            object.__setattr__(self, "identity", identity)
        if self.names is not None:
            if len(self.names) != n:
                raise SemigroupError(f"expected {n} names, got {len(self.names)}")
            object.__setattr__(self, "names", tuple(self.names))

    def _is_identity(self, e: int) -> bool:
        n = self.order
        return bool(
            (self.table[e] == np.arange(n)).all()
            and (self.table[:, e] == np.arange(n)).all()
        )

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def name(self, element: int) -> str:
        return self.names[element] if self.names else str(element)

    def element(self, name: str) -> int:
        """Looks an element up by name, or by its index written in digits."""
        if self.names and name in self.names:
            return self.names.index(name)
        if name.isdigit() and int(name) < self.order:
            return int(name)
        raise SemigroupError(f"unknown element {name!r}")

    def find_identity(self) -> int | None:
        for e in range(self.order):
            if self._is_identity(e):
                return e
        return None

    @cached_property
    def idempotents(self) -> list[int]:
        return [int(e) for e in np.flatnonzero(np.diag(self.table) == np.arange(self.order))]

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_group(self) -> bool:
        e = self.find_identity()
        return e is not None and bool((self.table == e).any(axis=1).all())

    @cached_property
    def inverses(self) -> np.ndarray:
        """
        Inverse of each element.

        Raises:
            NotAGroup: If the semigroup is not a group.
        """

        e = self.find_identity()
        if e is None or not self.is_group():
            raise NotAGroup(f"{self.label or 'semigroup'} is not a group")
        return np.argmax(self.table == e, axis=1)

    @cached_property
    def cycles(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Index, period and power sequence of every element.

        Returns:
            tuple: ``index[s]``, ``period[s]`` and ``powers[s, m - 1] = s^m``
                for 1 <= m < index[s] + period[s].
        """

        n = self.order
        index = np.zeros(n, dtype=np.int64)
        period = np.zeros(n, dtype=np.int64)
        sequences: list[list[int]] = []
        for s in range(n):
            seen: dict[int, int] = {}
            sequence: list[int] = []
            x, m = s, 1
            while x not in seen:
                seen[x] = m
                sequence.append(x)
                x, m = int(self.table[x, s]), m + 1
            index[s] = seen[x]
            period[s] = m - seen[x]
            sequences.append(sequence)
        width = max(len(seq) for seq in sequences)
        powers = np.zeros((n, width), dtype=np.int64)
        for s, sequence in enumerate(sequences):
            powers[s, : len(sequence)] = sequence
        return index, period, powers

    @cached_property
    def period_lcm(self) -> int:
        """Least common multiple of all element periods."""
        return math.lcm(*set(self.cycles[1].tolist()))


@dataclass(frozen=True, eq=False)
class ReesMatrix:
    """
    Represents the data (I, G, Lambda, P) of a Rees matrix semigroup.

    Indices are 0-based; ``sandwich[lam, i]`` is the entry p_{lam,i}.
    """

    i_size: int
    lambda_size: int
    group: FinSemigroup
    sandwich: np.ndarray

    def __post_init__(self) -> None:
        sandwich = np.array(self.sandwich, dtype=np.int64).reshape(
            self.lambda_size, self.i_size
        )
        if sandwich.min() < 0 or sandwich.max() >= self.group.order:
            raise SemigroupError("sandwich entries must be group elements")
        sandwich.setflags(write=False)
        object.__setattr__(self, "sandwich", sandwich)

    @property
    def normalized(self) -> bool:
        e = self.group.find_identity()
        return bool((self.sandwich[0, :] == e).all() and (self.sandwich[:, 0] == e).all())


@dataclass(frozen=True)
class CongruenceTriple:
    """
    Represents the data (rho1, rho2, N) of a congruence on a Rees matrix
    semigroup.
    """

    rho1: Partition
    rho2: Partition
    normal_subgroup: frozenset[int]


@dataclass(frozen=True)
class GroupWord:
    """
    Represents a freely reduced word of the free group.
    """

    syllables: tuple[tuple[str, int], ...] = ()

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(
            letter if exp == 1 else f"{letter}^{exp}" for letter, exp in self.syllables
        )


ComVector = dict[str, AnyExponent]


# --- proof scripts ---------------------------------------------------------

Substitution = Mapping[str, Term]


@dataclass(frozen=True)
class HypJust:
    name: str
    sigma: Substitution = field(default_factory=dict)
    context: Context | None = None


@dataclass(frozen=True)
class ReflJust:
    term: Term | None = None


@dataclass(frozen=True)
class SymJust:
    ref: str


@dataclass(frozen=True)
class TransJust:
    left: str
    right: str


@dataclass(frozen=True)
class CtxJust:
    ref: str
    context: Context


@dataclass(frozen=True)
class SubstJust:
    ref: str
    sigma: Substitution


@dataclass(frozen=True)
class AmbientJust:
    """An instance of one of the fixed schemas valid in all finite monoids."""

    schema: str
    params: Mapping[str, AnyExponent] = field(default_factory=dict)
    sigma: Substitution = field(default_factory=dict)
    context: Context | None = None


@dataclass(frozen=True)
class IhJust:
    """Introduces an induction hypothesis; the step's claim is assumed."""


@dataclass(frozen=True)
class InductionJust:
    base: str
    step: str
    start: int = 1


@dataclass(frozen=True)
class LimitJust:
    ref: str


@dataclass(frozen=True)
class InstJust:
    ref: str
    n: int


@dataclass(frozen=True)
class MulJust:
    """Side-by-side multiplication of two proved identities."""

    left: str
    right: str


@dataclass(frozen=True)
class IterateJust:
    """From u = A u B derive the schematic u = A^k u B^k."""

    ref: str
    left: Term
    right: Term
    start: int = 1


Justification = (
    HypJust
    | ReflJust
    | SymJust
    | TransJust
    | CtxJust
    | SubstJust
    | AmbientJust
    | IhJust
    | InductionJust
    | LimitJust
    | InstJust
    | MulJust
    | IterateJust
)


@dataclass
class Step:
    """
    Represents one justified line of a proof script.
    """

    id: str
    justification: Justification
    claim: Pseudoidentity | None = None
    line: int = 0


@dataclass
class ProofScript:
    """
    Represents hypotheses, justified steps and a goal.
    """

    signature: Signature
    hypotheses: dict[str, Pseudoidentity]
    steps: list[Step]
    goal: Pseudoidentity | None
    name: str = ""
    expected_reject: str | None = None


@dataclass(frozen=True)
class ProvedFact:
    """
    A claim established by a step.

    A schematic claim holds for every parameter value k >= ``start``,
    under the induction hypotheses named in ``assumptions``.
    """

    claim: Pseudoidentity
    assumptions: frozenset[str] = frozenset()
    start: int = 1


@dataclass
class CheckResult:
    """
    Represents the outcome of checking a proof script.
    """

    accepted: bool
    rejection: Rejection | None = None
    facts: dict[str, ProvedFact] = field(default_factory=dict)
    expanded: list[Step] = field(default_factory=list)
