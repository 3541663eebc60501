"""
Checks proof scripts: every step is verified against the facts of earlier
steps, with claims compared modulo equalities valid in all finite monoids.
"""

import dataclasses
import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from app.application.services.macro_service import MacroService
from app.domain.entities import (
    AmbientJust,
    CheckResult,
    CtxJust,
    HypJust,
    IhJust,
    InductionJust,
    InstJust,
    IterateJust,
    Justification,
    LimitJust,
    MulJust,
    ProofScript,
    ProvedFact,
    ReflJust,
    Step,
    SubstJust,
    SymJust,
    TransJust,
)
from app.domain.errors import (
    ContextError,
    ExponentError,
    ProofRejected,
    RejectReason,
    Rejection,
    SignatureError,
)
from app.domain.exponents import (
    AnyExponent,
    Finite,
    Nu,
    IntConst,
    Sum,
    sym_add,
    sym_limit,
    sym_mul,
)
from app.domain.terms import (
    Context,
    Letter,
    Power,
    Pseudoidentity,
    Signature,
    Term,
    check_signature,
    concat,
    is_constant,
    map_exponents,
    normalize_ambient,
    plug,
    reverse_term,
    substitute,
    substitute_parameter,
    term_threshold,
    term_valid_from,
)

logger = logging.getLogger(__name__)

_X, _Y = Letter("x"), Letter("y")


@dataclass(frozen=True)
class AmbientSchema:
    """
    An identity scheme valid in every finite monoid, instantiated by
    choosing its exponent parameters.
    """

    name: str
    params: tuple[str, ...]
    build: Callable[..., tuple[Term, Term]]
    text: str

    def instance(
        self, params: Mapping[str, AnyExponent], signature: Signature
    ) -> Pseudoidentity:
        lhs, rhs = self.build(*(params[p] for p in self.params))
        return Pseudoidentity(lhs, rhs, signature)


_SCHEMAS = {
    schema.name: schema
    for schema in (
        AmbientSchema(
            "A3",
            ("a", "b"),
            lambda a, b: (concat(Power(_X, a), Power(_X, b)), Power(_X, sym_add(a, b))),
            "x^a x^b = x^(a+b)",
        ),
        AmbientSchema(
            "A4",
            ("a", "b"),
            lambda a, b: (Power(Power(_X, a), b), Power(_X, sym_mul(a, b))),
            "(x^a)^b = x^(ab)",
        ),
        AmbientSchema(
            "A6",
            ("a",),
            lambda a: (
                concat(Power(concat(_X, _Y), a), _X),
                concat(_X, Power(concat(_Y, _X), a)),
            ),
            "(xy)^a x = x(yx)^a",
        ),
    )
}


def ambient_schemas() -> list[AmbientSchema]:
    """The fixed list of ambient schemas usable in ``ambient`` steps."""
    return list(_SCHEMAS.values())


class _Rejected(Exception):
    def __init__(self, step_id: str, reason: RejectReason, detail: str) -> None:
        super().__init__(detail)
        self.rejection = Rejection(step_id, reason, detail)


def _references(just: Justification) -> list[str]:
    match just:
        case SymJust(ref) | CtxJust(ref, _) | SubstJust(ref, _) | LimitJust(ref):
            return [ref]
        case InstJust(ref, _) | IterateJust(ref, _, _, _):
            return [ref]
        case TransJust(left, right) | MulJust(left, right):
            return [left, right]
        case InductionJust(base, step, _):
            return [base, step]
    return []


def _same(a: Pseudoidentity, b: Pseudoidentity) -> bool:
    return normalize_ambient(a.lhs) == normalize_ambient(b.lhs) and normalize_ambient(
        a.rhs
    ) == normalize_ambient(b.rhs)


def _is_schematic(claim: Pseudoidentity) -> bool:
    return not (is_constant(claim.lhs) and is_constant(claim.rhs))


def _instantiate(claim: Pseudoidentity, value: AnyExponent) -> Pseudoidentity:
    return Pseudoidentity(
        substitute_parameter(claim.lhs, value),
        substitute_parameter(claim.rhs, value),
        claim.signature,
    )


class ProofService:
    """
    Verifies proof scripts step by step.
    """

    def __init__(self, macro_service: MacroService, max_factorial_arg: int = 12) -> None:
        """
        Initializes the service.

        Args:
            macro_service (MacroService): Expands ``mul`` and ``iterate``.
            max_factorial_arg (int): Largest n accepted by ``inst`` steps.

        Returns:
            None
        """

        self.macro_service = macro_service
        self.max_factorial_arg = max_factorial_arg

    # --- entry points ----------------------------------------------------

    def check_script(self, script: ProofScript) -> CheckResult:
        """
        Checks every step of ``script`` in order and then its goal.

        Args:
            script (ProofScript): The script to check.

        Returns:
            CheckResult: Acceptance, or the first rejected step with its
                reason.  ``expanded`` lists the primitive steps checked.
        """

        facts: dict[str, ProvedFact] = {}
        expanded: list[Step] = []
        try:
            self._check_hypotheses(script)
            self._check_ids(script)
            ids = [step.id for step in script.steps]
            for position, step in enumerate(script.steps):
                self._check_references(step, facts, set(ids[position + 1 :]))
                for sub in self._primitive_steps(step, facts):
                    self._check_references(sub, facts, set())
                    try:
                        facts[sub.id] = self._check_step(script, sub, facts)
                    except _Rejected as rejected:
                        if sub.id != step.id:
                            rejected.rejection = Rejection(
                                step.id,
                                rejected.rejection.reason,
                                f"{sub.id}: {rejected.rejection.detail}",
                            )
                        raise
                    expanded.append(sub)
            self._check_goal(script, facts)
        except _Rejected as rejected:
            logger.info(f"Rejected {script.name or 'script'}: {rejected.rejection}")
            return CheckResult(False, rejected.rejection, facts, expanded)
        logger.info(f"Accepted {script.name or 'script'} ({len(expanded)} steps)")
        return CheckResult(True, None, facts, expanded)

    def require_accepted(self, script: ProofScript) -> CheckResult:
        """
        Raises:
            ProofRejected: If the script is rejected.
        """

        result = self.check_script(script)
        if not result.accepted:
            raise ProofRejected(result.rejection)
        return result

    def expand_macros(self, script: ProofScript) -> ProofScript:
        """
        Returns the script with every macro step replaced by its expansion.

        Raises:
            ProofRejected: If the script is rejected.
        """

        result = self.require_accepted(script)
        return dataclasses.replace(script, steps=result.expanded)

    # --- structure -------------------------------------------------------

    def _check_hypotheses(self, script: ProofScript) -> None:
        for name, hyp in script.hypotheses.items():
            if _is_schematic(hyp):
                raise _Rejected(
                    f"hyp {name}",
                    RejectReason.SYMBOLIC_HYPOTHESIS,
                    f"hypothesis {hyp} mentions the parameter",
                )
            if hyp.signature is not script.signature:
                raise _Rejected(
                    f"hyp {name}",
                    RejectReason.MIXED_SIGNATURE,
                    f"hypothesis is in {hyp.signature} signature",
                )

    def _check_ids(self, script: ProofScript) -> None:
        seen: set[str] = set()
        for step in script.steps:
            if step.id in seen:
                raise _Rejected(
                    step.id, RejectReason.DUPLICATE_STEP, "step id already used"
                )
            seen.add(step.id)

    def _check_references(
        self, step: Step, facts: Mapping[str, ProvedFact], later: set[str]
    ) -> None:
        for ref in _references(step.justification):
            if ref in facts:
                continue
            if ref in later or ref == step.id:
                raise _Rejected(
                    step.id, RejectReason.FORWARD_REFERENCE, f"step {ref} comes later"
                )
            raise _Rejected(step.id, RejectReason.UNKNOWN_STEP, f"no step {ref}")

    def _primitive_steps(
        self, step: Step, facts: Mapping[str, ProvedFact]
    ) -> list[Step]:
        if not self.macro_service.is_macro(step):
            return [step]
        try:
            return self.macro_service.expand_step(step, facts)
        except (ContextError, SignatureError) as error:
            raise _Rejected(step.id, RejectReason.BAD_CONTEXT, str(error)) from error

    def _check_goal(self, script: ProofScript, facts: Mapping[str, ProvedFact]) -> None:
        if script.goal is None:
            raise _Rejected("goal", RejectReason.GOAL_NOT_REACHED, "no goal")
        for fact in facts.values():
            if fact.assumptions or _is_schematic(fact.claim):
                continue
            if _same(fact.claim, script.goal) or _same(
                fact.claim, script.goal.flipped()
            ):
                return
        raise _Rejected(
            "goal",
            RejectReason.GOAL_NOT_REACHED,
            f"no closed step proves {script.goal}",
        )

    # --- steps -----------------------------------------------------------

    def _check_step(
        self, script: ProofScript, step: Step, facts: Mapping[str, ProvedFact]
    ) -> ProvedFact:
        try:
            return self._derive(script, step, facts)
        except ContextError as error:
            raise _Rejected(step.id, RejectReason.BAD_CONTEXT, str(error)) from error
        except ExponentError as error:
            raise _Rejected(
                step.id, RejectReason.ILL_FORMED_EXPONENT, str(error)
            ) from error

    def _derive(
        self, script: ProofScript, step: Step, facts: Mapping[str, ProvedFact]
    ) -> ProvedFact:
        sig = script.signature
        match step.justification:
            case HypJust(name, sigma, context):
                if name not in script.hypotheses:
                    raise _Rejected(
                        step.id,
                        RejectReason.UNKNOWN_HYPOTHESIS,
                        f"no hypothesis {name}",
                    )
                derived = self._specialize(
                    step, script.hypotheses[name], sigma, context
                )
                return self._settle(step, ProvedFact(derived), sig, either=True)

            case ReflJust(term):
                if term is None:
                    if step.claim is None or normalize_ambient(
                        step.claim.lhs
                    ) != normalize_ambient(step.claim.rhs):
                        raise _Rejected(
                            step.id, RejectReason.REFL_MISMATCH, "sides differ"
                        )
                    derived = step.claim
                else:
                    derived = Pseudoidentity(term, term, sig)
                    if step.claim is not None and not _same(step.claim, derived):
                        raise _Rejected(
                            step.id,
                            RejectReason.REFL_MISMATCH,
                            f"{step.claim} is not an instance of {derived}",
                        )
                return self._settle(step, ProvedFact(derived), sig)

            case SymJust(ref):
                fact = facts[ref]
                return self._settle(
                    step, dataclasses.replace(fact, claim=fact.claim.flipped()), sig
                )

            case TransJust(left, right):
                first, second = facts[left], facts[right]
                if normalize_ambient(first.claim.rhs) != normalize_ambient(
                    second.claim.lhs
                ):
                    raise _Rejected(
                        step.id,
                        RejectReason.SIDE_MISMATCH,
                        f"right side of {left} differs from left side of {right}",
                    )
                return self._settle(
                    step,
                    ProvedFact(
                        Pseudoidentity(first.claim.lhs, second.claim.rhs, sig),
                        first.assumptions | second.assumptions,
                        max(first.start, second.start),
                    ),
                    sig,
                )

            case CtxJust(ref, context):
                fact = facts[ref]
                derived = self._specialize(step, fact.claim, {}, context)
                return self._settle(
                    step, dataclasses.replace(fact, claim=derived), sig
                )

            case SubstJust(ref, sigma):
                fact = facts[ref]
                derived = self._specialize(step, fact.claim, sigma, None)
                return self._settle(
                    step, dataclasses.replace(fact, claim=derived), sig
                )

            case AmbientJust(name, params, sigma, context):
                schema = _SCHEMAS.get(name)
                if schema is None:
                    raise _Rejected(
                        step.id, RejectReason.BAD_SCHEMA, f"no ambient schema {name}"
                    )
                missing = [p for p in schema.params if p not in params]
                if missing:
                    raise _Rejected(
                        step.id,
                        RejectReason.BAD_SCHEMA,
                        f"{name} needs parameters {', '.join(missing)}",
                    )
                derived = self._specialize(
                    step, schema.instance(params, sig), sigma, context
                )
                return self._settle(step, ProvedFact(derived), sig)

            case IhJust():
                if step.claim is None or not _is_schematic(step.claim):
                    raise _Rejected(
                        step.id,
                        RejectReason.NOT_SCHEMATIC,
                        "an induction hypothesis needs a schematic claim",
                    )
                return self._settle(
                    step, ProvedFact(step.claim, frozenset({step.id})), sig
                )

            case InductionJust(base, inductive, start):
                return self._induction(step, facts, base, inductive, start, sig)

            case LimitJust(ref):
                fact = self._closed_schematic(step, facts[ref])
                derived = Pseudoidentity(
                    map_exponents(fact.claim.lhs, self._limit(sig)),
                    map_exponents(fact.claim.rhs, self._limit(sig)),
                    sig,
                )
                return self._settle(step, ProvedFact(derived), sig)

            case InstJust(ref, n):
                fact = self._closed_schematic(step, facts[ref])
                if n > self.max_factorial_arg:
                    raise _Rejected(
                        step.id,
                        RejectReason.ILL_FORMED_EXPONENT,
                        f"n={n} exceeds the cap {self.max_factorial_arg}",
                    )
                threshold = max(
                    term_threshold(fact.claim.lhs, sig),
                    term_threshold(fact.claim.rhs, sig),
                )
                if n < threshold or math.factorial(n) < fact.start:
                    raise _Rejected(
                        step.id,
                        RejectReason.BELOW_THRESHOLD,
                        f"n={n} is below the threshold of {fact.claim}",
                    )
                derived = _instantiate(fact.claim, Finite(math.factorial(n)))
                return self._settle(step, ProvedFact(derived), sig)

        raise _Rejected(step.id, RejectReason.BAD_SCHEMA, "unknown justification")

    @staticmethod
    def _limit(sig: Signature) -> Callable[[AnyExponent], AnyExponent]:
        return lambda e: sym_limit(e, sig.minimum_exponent)

    def _specialize(
        self,
        step: Step,
        claim: Pseudoidentity,
        sigma: Mapping[str, Term],
        context: Context | None,
    ) -> Pseudoidentity:
        lhs, rhs = substitute(claim.lhs, sigma), substitute(claim.rhs, sigma)
        if context is not None:
            lhs, rhs = plug(context, lhs), plug(context, rhs)
            try:
                check_signature(lhs, claim.signature)
                check_signature(rhs, claim.signature)
            except SignatureError as error:
                raise _Rejected(
                    step.id, RejectReason.BAD_CONTEXT, str(error)
                ) from error
        return Pseudoidentity(lhs, rhs, claim.signature)

    def _closed_schematic(self, step: Step, fact: ProvedFact) -> ProvedFact:
        if fact.assumptions:
            raise _Rejected(
                step.id,
                RejectReason.OPEN_ASSUMPTION,
                f"depends on open assumptions {', '.join(sorted(fact.assumptions))}",
            )
        if not _is_schematic(fact.claim):
            raise _Rejected(
                step.id, RejectReason.NOT_SCHEMATIC, f"{fact.claim} is constant"
            )
        return fact

    def _induction(
        self,
        step: Step,
        facts: Mapping[str, ProvedFact],
        base_id: str,
        inductive_id: str,
        start: int,
        sig: Signature,
    ) -> ProvedFact:
        base, inductive = facts[base_id], facts[inductive_id]
        hypotheses = sorted(inductive.assumptions)
        if step.claim is not None:
            hypotheses = [
                h for h in hypotheses if _same(facts[h].claim, step.claim)
            ]
        if len(hypotheses) != 1:
            raise _Rejected(
                step.id,
                RejectReason.INDUCTION_STEP,
                "the step must rest on exactly one matching induction hypothesis",
            )
        ih = hypotheses[0]
        family = step.claim or facts[ih].claim
        if not _is_schematic(family):
            raise _Rejected(step.id, RejectReason.NOT_SCHEMATIC, f"{family} is constant")
        valid_from = max(
            term_valid_from(family.lhs, sig), term_valid_from(family.rhs, sig)
        )
        if start < valid_from:
            raise _Rejected(
                step.id,
                RejectReason.INDUCTION_BASE,
                f"{family} has valid exponents only from k={valid_from}",
            )
        if ih in base.assumptions or not _same(
            base.claim, _instantiate(family, Finite(start))
        ):
            raise _Rejected(
                step.id,
                RejectReason.INDUCTION_BASE,
                f"base does not prove the case k={start} of {family}",
            )
        successor = _instantiate(family, Sum(Nu(), IntConst(1)))
        if not _same(inductive.claim, successor) or inductive.start > start:
            raise _Rejected(
                step.id,
                RejectReason.INDUCTION_STEP,
                f"step does not prove {successor}",
            )
        return self._settle(
            step,
            ProvedFact(
                family,
                (base.assumptions | inductive.assumptions) - {ih},
                start,
            ),
            sig,
        )

    def _settle(
        self, step: Step, fact: ProvedFact, sig: Signature, either: bool = False
    ) -> ProvedFact:
        """
        Validates a derived fact and matches it against the step's claim.
        """

        claim = fact.claim
        if step.claim is not None:
            if not (
                _same(step.claim, claim)
                or (either and _same(step.claim, claim.flipped()))
            ):
                raise _Rejected(
                    step.id,
                    RejectReason.CLAIM_MISMATCH,
                    f"derived {claim}, claimed {step.claim}",
                )
            claim = step.claim
        try:
            for side in (fact.claim.lhs, fact.claim.rhs, claim.lhs, claim.rhs):
                check_signature(side, sig)
        except SignatureError as error:
            raise _Rejected(
                step.id, RejectReason.MIXED_SIGNATURE, str(error)
            ) from error
        start = max(
            fact.start,
            *(
                term_valid_from(side, sig)
                for side in (fact.claim.lhs, fact.claim.rhs, claim.lhs, claim.rhs)
            ),
        )
        return ProvedFact(
            Pseudoidentity(claim.lhs, claim.rhs, sig), fact.assumptions, start
        )


# --- script transformations ----------------------------------------------


def flip_hypotheses(script: ProofScript) -> ProofScript:
    """Swaps the sides of every hypothesis."""
    return dataclasses.replace(
        script,
        hypotheses={name: hyp.flipped() for name, hyp in script.hypotheses.items()},
        name=f"{script.name} (flipped)" if script.name else "",
        expected_reject=None,
    )


def _mirror(claim: Pseudoidentity | None) -> Pseudoidentity | None:
    if claim is None:
        return None
    return Pseudoidentity(
        reverse_term(claim.lhs), reverse_term(claim.rhs), claim.signature
    )


def _mirror_sigma(sigma: Mapping[str, Term]) -> dict[str, Term]:
    return {name: reverse_term(image) for name, image in sigma.items()}


def _mirror_context(context: Context | None) -> Context | None:
    return None if context is None else Context(reverse_term(context.term))


def _mirror_step(step: Step) -> list[Step]:
    claim = _mirror(step.claim)
    match step.justification:
        case HypJust(name, sigma, context):
            just = HypJust(name, _mirror_sigma(sigma), _mirror_context(context))
        case ReflJust(term):
            just = ReflJust(None if term is None else reverse_term(term))
        case CtxJust(ref, context):
            just = CtxJust(ref, _mirror_context(context))
        case SubstJust(ref, sigma):
            just = SubstJust(ref, _mirror_sigma(sigma))
        case MulJust(left, right):
            just = MulJust(right, left)
        case IterateJust(ref, a, b, start):
            just = IterateJust(ref, reverse_term(b), reverse_term(a), start)
        case AmbientJust("A3", params, sigma, context) if {"a", "b"} <= params.keys():
            just = AmbientJust(
                "A3",
                {"a": params["b"], "b": params["a"]},
                _mirror_sigma(sigma),
                _mirror_context(context),
            )
        case AmbientJust("A6", params, sigma, context):
            # The mirror image of an A6 instance is the reversed instance.
            inner = Step(
                f"{step.id}.m",
                AmbientJust(
                    "A6", params, _mirror_sigma(sigma), _mirror_context(context)
                ),
                line=step.line,
            )
            return [inner, Step(step.id, SymJust(inner.id), claim, step.line)]
        case AmbientJust(name, params, sigma, context):
            just = AmbientJust(
                name, params, _mirror_sigma(sigma), _mirror_context(context)
            )
        case other:
            just = other
    return [Step(step.id, just, claim, step.line)]


def dual_script(script: ProofScript) -> ProofScript:
    """
    Mirrors a script left to right: every term is reversed, and the
    justifications are adjusted so that the mirrored script proves the
    mirrored goal.
    """

    return ProofScript(
        signature=script.signature,
        hypotheses={
            name: _mirror(hyp) for name, hyp in script.hypotheses.items()
        },
        steps=[mirrored for step in script.steps for mirrored in _mirror_step(step)],
        goal=_mirror(script.goal),
        name=f"{script.name} (dual)" if script.name else "",
    )
