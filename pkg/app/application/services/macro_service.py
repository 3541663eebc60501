"""
Expands the derived proof steps ``mul`` and ``iterate`` into primitive
steps.
"""

import logging
from collections.abc import Mapping

from app.domain.entities import (
    CtxJust,
    IhJust,
    InductionJust,
    IterateJust,
    MulJust,
    ProvedFact,
    Step,
    TransJust,
)
from app.domain.exponents import IntConst, Nu, Sum
from app.domain.terms import (
    Context,
    Hole,
    Power,
    Pseudoidentity,
    Term,
    concat,
)

logger = logging.getLogger(__name__)


class MacroService:
    """
    Rewrites macro steps into ``ctx``, ``trans``, ``ih`` and ``induction``
    steps.  Generated step ids extend the macro's id with a dotted suffix.
    """

    def is_macro(self, step: Step) -> bool:
        return isinstance(step.justification, MulJust | IterateJust)

    def expand_step(self, step: Step, facts: Mapping[str, ProvedFact]) -> list[Step]:
        """
        Expands one macro step; the final generated step keeps the id and
        claim of ``step``.

        Args:
            step (Step): A ``mul`` or ``iterate`` step.
            facts (Mapping[str, ProvedFact]): The facts of earlier steps.

        Returns:
            list[Step]: The primitive steps, in order.

        Raises:
            KeyError: If a referenced step has no fact yet.
        """

        match step.justification:
            case MulJust(left, right):
                return self._expand_mul(step, facts[left].claim, facts[right].claim)
            case IterateJust(ref, a, b, start):
                return self._expand_iterate(step, facts[ref].claim, a, b, start)
        return [step]

    def _expand_mul(
        self, step: Step, first: Pseudoidentity, second: Pseudoidentity
    ) -> list[Step]:
        left, right = step.justification.left, step.justification.right
        return [
            Step(
                f"{step.id}.l",
                CtxJust(left, Context(concat(Hole(), second.lhs))),
                line=step.line,
            ),
            Step(
                f"{step.id}.r",
                CtxJust(right, Context(concat(first.rhs, Hole()))),
                line=step.line,
            ),
            Step(
                step.id,
                TransJust(f"{step.id}.l", f"{step.id}.r"),
                step.claim,
                step.line,
            ),
        ]

    def _expand_iterate(
        self, step: Step, base: Pseudoidentity, a: Term, b: Term, start: int
    ) -> list[Step]:
        ref = step.justification.ref
        u, sig = base.lhs, base.signature
        around = Context(concat(a, Hole(), b))
        family = Pseudoidentity(
            u, concat(Power(a, Nu()), u, Power(b, Nu())), sig
        )
        steps: list[Step] = []

        # L(1) is the premise itself; L(i) follows from L(i - 1) and it.
        base_id = ref
        for i in range(2, start + 1):
            steps += [
                Step(f"{step.id}.b{i}c", CtxJust(base_id, around), line=step.line),
                Step(
                    f"{step.id}.b{i}",
                    TransJust(ref, f"{step.id}.b{i}c"),
                    line=step.line,
                ),
            ]
            base_id = f"{step.id}.b{i}"

        steps += [
            Step(f"{step.id}.ih", IhJust(), family, step.line),
            Step(f"{step.id}.c", CtxJust(f"{step.id}.ih", around), line=step.line),
            Step(
                f"{step.id}.s",
                TransJust(ref, f"{step.id}.c"),
                Pseudoidentity(
                    u,
                    concat(
                        Power(a, Sum(Nu(), IntConst(1))),
                        u,
                        Power(b, Sum(Nu(), IntConst(1))),
                    ),
                    sig,
                ),
                step.line,
            ),
            Step(
                step.id,
                InductionJust(base_id, f"{step.id}.s", start),
                step.claim or family,
                step.line,
            ),
        ]
        logger.debug(f"Expanded iterate step {step.id} into {len(steps)} steps")
        return steps
