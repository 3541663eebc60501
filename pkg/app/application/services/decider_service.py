"""
Decision procedures for constant omega-identities in the pseudovarieties of
all finite groups (G) and of all finite commutative monoids (Com).
"""

import concurrent.futures
import functools
import logging
from enum import StrEnum

import pandas as pd

from app.application.services.catalog_service import CatalogService
from app.application.services.semigroup_service import (
    SemigroupService,
    render_assignment,
)
from app.domain.entities import ComVector, FinSemigroup, GroupWord
from app.domain.errors import SizeGuardExceeded, SymbolicExponentError
from app.domain.exponents import (
    ONE,
    ZERO,
    Exponent,
    Finite,
    OmegaPlus,
    exp_add,
    exp_mul,
    is_symbolic,
)
from app.domain.terms import (
    Concat,
    Letter,
    Power,
    Pseudoidentity,
    Term,
    Unit,
    render_term,
)

logger = logging.getLogger(__name__)


class DecidableVariety(StrEnum):
    G = "G"
    COM = "Com"


Syllables = tuple[tuple[str, int], ...]


def _join(u: Syllables, v: Syllables) -> Syllables:
    """Product of two freely reduced words, cancelling only at the seam."""
    i, j = len(u), 0
    while i and j < len(v) and u[i - 1][0] == v[j][0]:
        exp = u[i - 1][1] + v[j][1]
        if exp:
            return u[: i - 1] + ((v[j][0], exp),) + v[j + 1 :]
        i, j = i - 1, j + 1
    return u[:i] + v[j:]


def _inverse(word: Syllables) -> Syllables:
    return tuple((letter, -exp) for letter, exp in reversed(word))


def _power(word: Syllables, k: int, limit: int) -> Syllables:
    """
    Raises a freely reduced word to the power ``k`` by writing it as
    c r c^-1 with r cyclically reduced, so that w^k = c r^k c^-1.

    Raises:
        SizeGuardExceeded: If the reduced power has more than ``limit``
            syllables.
    """

    if k < 0:
        word, k = _inverse(word), -k
    if not word or k == 0:
        return ()
    i, j = 0, len(word) - 1
    while i < j and word[i][0] == word[j][0] and word[i][1] == -word[j][1]:
        i, j = i + 1, j - 1
    conjugator, core = word[:i], word[i : j + 1]
    if len(core) == 1:
        letter, exp = core[0]
        return conjugator + ((letter, exp * k),) + _inverse(conjugator)
    if core[0][0] == core[-1][0]:
        # a^p m a^q = a^-q (a^(p+q) m) a^q
        letter, q = core[-1]
        conjugator = _join(conjugator, ((letter, -q),))
        core = ((letter, core[0][1] + q),) + core[1:-1]
    if len(core) * k > limit:
        raise SizeGuardExceeded(
            f"a power of {len(core)} syllables to the {k} exceeds {limit}"
        )
    return _join(_join(conjugator, core * k), _inverse(conjugator))


def _require_constant(t: Term, exp: object) -> None:
    if is_symbolic(exp):
        raise SymbolicExponentError(f"symbolic exponent in {render_term(t)}")


class DeciderService:
    """
    Decides validity of omega-identities in G and Com, and searches the
    oracle pools for separating witnesses.
    """

    def __init__(
        self,
        semigroup_service: SemigroupService,
        catalog_service: CatalogService,
        thread_works: int = 1,
        max_word_length: int = 10_000_000,
    ) -> None:
        """
        Initializes the DeciderService.

        Args:
            semigroup_service (SemigroupService): Model checker used by the
                witness search.
            catalog_service (CatalogService): Source of the oracle pools.
            thread_works (int): Number of workers for cross-validation.
            max_word_length (int): Largest number of syllables a reduced
                group word may reach.

        Returns:
            None
        """

        self.semigroup_service = semigroup_service
        self.catalog_service = catalog_service
        self.thread_works = thread_works
        self.max_word_length = max_word_length

    # --- groups ----------------------------------------------------------

    def _group_syllables(self, t: Term) -> Syllables:
        match t:
            case Letter(name):
                return ((name, 1),)
            case Unit():
                return ()
            case Concat(parts):
                return functools.reduce(_join, map(self._group_syllables, parts), ())
            case Power(base, exp):
                _require_constant(t, exp)
                inner = self._group_syllables(base)
                match exp:
                    case Finite(n):
                        return _power(inner, n, self.max_word_length)
                    case OmegaPlus(z):
                        return _power(inner, z, self.max_word_length)
        raise TypeError(f"cannot read {t!r} as a group word")

    def to_group_word(self, t: Term) -> GroupWord:
        """
        Reads a term as a group word, with omega read as 0, and freely
        reduces it.

        Raises:
            SymbolicExponentError: If ``t`` has a symbolic exponent.
            SizeGuardExceeded: If the reduced word outgrows ``max_word_length``.
        """

        return GroupWord(self._group_syllables(t))

    def decide_group(self, u: Term, v: Term) -> bool:
        """Tells whether every finite group satisfies u = v."""
        return self.to_group_word(u) == self.to_group_word(v)

    # --- commutative monoids ----------------------------------------------

    def _accumulate(self, t: Term, multiplier: Exponent, into: ComVector) -> None:
        match t:
            case Letter(name):
                into[name] = exp_add(into.get(name, ZERO), multiplier)
            case Concat(parts):
                for part in parts:
                    self._accumulate(part, multiplier, into)
            case Power(base, exp):
                _require_constant(t, exp)
                self._accumulate(base, exp_mul(multiplier, exp), into)

    def com_vector(self, t: Term) -> ComVector:
        """
        Total exponent of every letter of ``t``: each occurrence contributes
        the product of the exponents enclosing it.

        Raises:
            SymbolicExponentError: If ``t`` has a symbolic exponent.
        """

        vector: ComVector = {}
        self._accumulate(t, ONE, vector)
        return dict(sorted(vector.items()))

    def decide_com(self, u: Term, v: Term) -> bool:
        """Tells whether every finite commutative monoid satisfies u = v."""
        left, right = self.com_vector(u), self.com_vector(v)
        return all(
            left.get(name, ZERO) == right.get(name, ZERO)
            for name in left.keys() | right.keys()
        )

    # --- dispatch and witnesses -------------------------------------------

    def decide(self, variety: DecidableVariety, identity: Pseudoidentity) -> bool:
        if variety is DecidableVariety.G:
            return self.decide_group(identity.lhs, identity.rhs)
        return self.decide_com(identity.lhs, identity.rhs)

    def pool(self, variety: DecidableVariety) -> list[FinSemigroup]:
        if variety is DecidableVariety.G:
            return self.catalog_service.group_pool()
        return self.catalog_service.commutative_pool()

    def find_witness(
        self,
        variety: DecidableVariety,
        identity: Pseudoidentity,
        pool: list[FinSemigroup] | None = None,
    ) -> tuple[FinSemigroup, dict[str, int]] | None:
        """
        Searches the oracle pool of ``variety`` for a member failing
        ``identity``.

        Returns:
            tuple[FinSemigroup, dict[str, int]] | None: The first failing
                member with its least failing assignment, or None.
        """

        for member in pool if pool is not None else self.pool(variety):
            holds, witness = self.semigroup_service.satisfies(member, identity)
            if not holds:
                logger.debug(f"{identity} fails in {member.label}")
                return member, witness
        return None

    def cross_validate(
        self,
        variety: DecidableVariety,
        identities: list[Pseudoidentity],
        pool: list[FinSemigroup] | None = None,
    ) -> pd.DataFrame:
        """
        Compares the decision procedure with a witness search in the oracle
        pool, one identity per worker.

        Returns:
            pd.DataFrame: One row per identity.  ``status`` is ``agree``,
                ``unsound`` when a valid identity fails in the pool, or
                ``unseparated`` when no member fails an invalid identity.
        """

        members = pool if pool is not None else self.pool(variety)

        def compare(identity: Pseudoidentity) -> dict:
            valid = self.decide(variety, identity)
            found = self.find_witness(variety, identity, members)
            witness = ""
            if found is not None:
                member, assignment = found
                witness = f"{member.label} {render_assignment(member, assignment)}"
            if valid:
                status = "agree" if found is None else "unsound"
            else:
                status = "agree" if found is not None else "unseparated"
            return {
                "identity": str(identity),
                "decided": "valid" if valid else "invalid",
                "witness": witness,
                "status": status,
            }

        logger.info(
            f"Cross-validating {len(identities)} identities in {variety} "
            f"against {len(members)} pool members"
        )
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=self.thread_works
        ) as executor:
            rows = list(executor.map(compare, identities))
        table = pd.DataFrame(rows, columns=["identity", "decided", "witness", "status"])
        unsound = int((table["status"] == "unsound").sum())
        if unsound:
            logger.warning(f"{unsound} identities decided valid fail in the pool")
        return table
