"""
Model checking of omega-terms and pseudoidentities in finite semigroups.
"""

import concurrent.futures
import logging
from collections.abc import Mapping

import numpy as np

from app.domain.entities import FinSemigroup
from app.domain.errors import (
    MissingIdentity,
    SignatureError,
    SymbolicExponentError,
    UnassignedLetter,
)
from app.domain.exponents import Exponent, Finite, OmegaPlus, is_symbolic
from app.domain.terms import (
    Concat,
    Hole,
    Letter,
    Power,
    Pseudoidentity,
    Term,
    Unit,
    letters,
    render_term,
)

logger = logging.getLogger(__name__)

# Above this many assignments the first letter is split across workers.
_CHUNK_THRESHOLD = 1 << 16


class SemigroupService:
    """
    Evaluates terms and checks pseudoidentities over finite semigroups.
    """

    def __init__(self, thread_works: int = 1) -> None:
        """
        Initializes the service.

        Args:
            thread_works (int): Worker threads used to split large
                assignment spaces.

        Returns:
            None
        """

        self.thread_works = thread_works

    def index_period(self, semigroup: FinSemigroup, s: int) -> tuple[int, int]:
        """
        Returns the smallest i, p >= 1 with s^(i+p) = s^i.
        """

        index, period, _ = semigroup.cycles
        return int(index[s]), int(period[s])

    def power_array(
        self, semigroup: FinSemigroup, xs: np.ndarray, e: Exponent
    ) -> np.ndarray:
        """
        Raises every element of ``xs`` to the exponent ``e``.

        Huge finite exponents are reduced modulo index and period instead of
        being multiplied out.

        Args:
            semigroup (FinSemigroup): The semigroup.
            xs (np.ndarray): Element indices, any shape.
            e (Exponent): A constant exponent.

        Returns:
            np.ndarray: The powers, same shape as ``xs``.

        Raises:
            MissingIdentity: If ``e`` is 0 and there is no identity.
        """

        xs = np.asarray(xs, dtype=np.int64)
        index_all, period_all, powers = semigroup.cycles
        index, period = index_all[xs], period_all[xs]
        match e:
            case Finite(0):
                if semigroup.identity is None:
                    raise MissingIdentity(
                        f"{semigroup.label or 'semigroup'} has no identity for x^0"
                    )
                return np.full_like(xs, semigroup.identity)
            case Finite(n):
                if n > semigroup.order:
                    n = semigroup.order + (n - semigroup.order) % semigroup.period_lcm
                exponent = np.where(n < index, n, index + (n - index) % period)
            case OmegaPlus(z):
                idempotent = (index + period - 1) // period * period
                exponent = index + (idempotent + z - index) % period
            case _:
                raise SymbolicExponentError(f"cannot evaluate exponent {e!r}")
        return powers[xs, exponent - 1]

    def power(self, semigroup: FinSemigroup, s: int, e: Exponent) -> int:
        """Returns s^e."""
        return int(self.power_array(semigroup, np.asarray(s), e))

    def _evaluate(
        self, semigroup: FinSemigroup, t: Term, values: Mapping[str, np.ndarray]
    ) -> np.ndarray:
        match t:
            case Letter(name):
                if name not in values:
                    raise UnassignedLetter(f"letter {name} is not assigned")
                return values[name]
            case Unit():
                if semigroup.identity is None:
                    raise MissingIdentity(
                        f"{semigroup.label or 'semigroup'} has no identity for 1"
                    )
                return np.asarray(semigroup.identity, dtype=np.int64)
            case Concat(parts):
                result = self._evaluate(semigroup, parts[0], values)
                for part in parts[1:]:
                    result = semigroup.table[result, self._evaluate(semigroup, part, values)]
                return result
            case Power(base, exp):
                if is_symbolic(exp):
                    raise SymbolicExponentError(
                        f"symbolic exponent in {render_term(t)}"
                    )
                return self.power_array(
                    semigroup, self._evaluate(semigroup, base, values), exp
                )
            case Hole():
                raise SignatureError("cannot evaluate a context")
        raise TypeError(f"not a term: {t!r}")

    def eval_term(
        self, semigroup: FinSemigroup, t: Term, assignment: Mapping[str, int]
    ) -> int:
        """
        Evaluates ``t`` under one assignment of letters to elements.

        Raises:
            UnassignedLetter: If a letter of ``t`` has no value.
            SymbolicExponentError: If ``t`` has a symbolic exponent.
        """

        values = {k: np.asarray(v, dtype=np.int64) for k, v in assignment.items()}
        return int(self._evaluate(semigroup, t, values))

    def _grid(
        self, order: int, names: list[str], fixed: Mapping[str, int]
    ) -> dict[str, np.ndarray]:
        free = [name for name in names if name not in fixed]
        values: dict[str, np.ndarray] = {
            name: np.asarray(v, dtype=np.int64) for name, v in fixed.items()
        }
        for axis, name in enumerate(free):
            shape = [1] * len(free)
            shape[axis] = order
            values[name] = np.arange(order, dtype=np.int64).reshape(shape)
        return values

    def _first_mismatch(
        self,
        semigroup: FinSemigroup,
        identity: Pseudoidentity,
        names: list[str],
        fixed: Mapping[str, int],
    ) -> dict[str, int] | None:
        values = self._grid(semigroup.order, names, fixed)
        free = [name for name in names if name not in fixed]
        shape = (semigroup.order,) * len(free)
        lhs = np.broadcast_to(self._evaluate(semigroup, identity.lhs, values), shape)
        rhs = np.broadcast_to(self._evaluate(semigroup, identity.rhs, values), shape)
        mismatch = (lhs != rhs).ravel()
        if not mismatch.any():
            return None
        position = np.unravel_index(int(np.argmax(mismatch)), shape)
        witness = dict(fixed)
        witness.update({name: int(v) for name, v in zip(free, position)})
        return {name: witness[name] for name in names}

    def satisfies(
        self, semigroup: FinSemigroup, identity: Pseudoidentity
    ) -> tuple[bool, dict[str, int] | None]:
        """
        Checks a pseudoidentity over all assignments.

        Args:
            semigroup (FinSemigroup): The semigroup to check.
            identity (Pseudoidentity): A pseudoidentity with constant
                exponents.

        Returns:
            tuple[bool, dict[str, int] | None]: Whether it holds, and the
                lexicographically least failing assignment otherwise.
        """

        names = sorted(set(letters(identity.lhs)) | set(letters(identity.rhs)))
        size = semigroup.order ** len(names)
        if size <= _CHUNK_THRESHOLD or self.thread_works <= 1:
            witness = self._first_mismatch(semigroup, identity, names, {})
            return witness is None, witness

        first = names[0]
        logger.info(
            f"Checking {identity} over {size} assignments with "
            f"{self.thread_works} workers"
        )
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=self.thread_works
        ) as executor:
            chunks = list(
                executor.map(
                    lambda v: self._first_mismatch(
                        semigroup, identity, names, {first: v}
                    ),
                    range(semigroup.order),
                )
            )
        for witness in chunks:
            if witness is not None:
                return False, witness
        return True, None

    def satisfies_all(
        self, semigroup: FinSemigroup, identities: list[Pseudoidentity]
    ) -> bool:
        return all(self.satisfies(semigroup, identity)[0] for identity in identities)


def render_assignment(semigroup: FinSemigroup, assignment: Mapping[str, int]) -> str:
    """Renders an assignment as ``x=a y=b`` using element names."""
    return " ".join(
        f"{name}={semigroup.name(value)}" for name, value in assignment.items()
    )
