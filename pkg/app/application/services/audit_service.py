"""
Soundness audit of accepted proof scripts: every closed fact is model
checked in every pool member satisfying the hypotheses.
"""

import concurrent.futures
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import pandas as pd

from app.application.services.catalog_service import CatalogService
from app.application.services.enumeration_service import EnumerationService
from app.application.services.proof_service import ProofService
from app.application.services.semigroup_service import (
    SemigroupService,
    render_assignment,
)
from app.domain.entities import FinSemigroup, ProofScript, ProvedFact
from app.domain.errors import (
    ExponentError,
    FormatError,
    KappaError,
    MissingIdentity,
)
from app.domain.exponents import Finite
from app.domain.terms import (
    Pseudoidentity,
    Signature,
    is_constant,
    substitute_parameter,
    term_valid_from,
)

logger = logging.getLogger(__name__)

# Schematic facts are checked at k = n! for these n.
INSTANCE_RANGE = range(1, 5)

VIOLATION_COLUMNS = ["semigroup", "step", "claim", "k", "witness"]


@dataclass
class AuditReport:
    """
    Represents the outcome of auditing one script over a pool.
    """

    script: str
    checked: int = 0
    skipped: int = 0
    violations: pd.DataFrame = field(
        default_factory=lambda: pd.DataFrame(columns=VIOLATION_COLUMNS)
    )

    @property
    def sound(self) -> bool:
        return self.violations.empty


def instances(
    fact: ProvedFact, signature: Signature
) -> list[tuple[int | None, Pseudoidentity]]:
    """
    The constant identities an audit checks for one closed fact: the fact
    itself when constant, else its instances at k = n! for n in
    ``INSTANCE_RANGE`` with k at least the start of the family.
    """

    claim = fact.claim
    if is_constant(claim.lhs) and is_constant(claim.rhs):
        return [(None, claim)]
    first = max(
        fact.start,
        term_valid_from(claim.lhs, signature),
        term_valid_from(claim.rhs, signature),
    )
    result = []
    for n in INSTANCE_RANGE:
        k = math.factorial(n)
        if k < first:
            continue
        try:
            value = Finite(k)
            result.append(
                (
                    k,
                    Pseudoidentity(
                        substitute_parameter(claim.lhs, value),
                        substitute_parameter(claim.rhs, value),
                        claim.signature,
                    ),
                )
            )
        except ExponentError:
            logger.debug(f"{claim} has no instance at k={k}")
    return result


def _error_row(
    member: FinSemigroup,
    error: KappaError,
    step: str = "",
    claim: str = "",
    k: int | None = None,
) -> dict:
    return {
        "semigroup": member.label,
        "step": step,
        "claim": claim,
        "k": k,
        "witness": f"error: {error}",
    }


class AuditService:
    """
    Model checks the facts of accepted scripts against pools of finite
    monoids and semigroups.
    """

    def __init__(
        self,
        proof_service: ProofService,
        semigroup_service: SemigroupService,
        catalog_service: CatalogService,
        enumeration_service: EnumerationService,
        semigroup_loader: Callable[[str], FinSemigroup] | None = None,
        thread_works: int = 8,
    ) -> None:
        """
        Initializes the service.

        Args:
            proof_service (ProofService): Checks the script first.
            semigroup_service (SemigroupService): The model checker.
            catalog_service (CatalogService): Source of the named pools.
            enumeration_service (EnumerationService): Source of the
                ``monoids:N`` pools.
            semigroup_loader (Callable[[str], FinSemigroup] | None): Reads
                ``file:PATH`` pool items.
            thread_works (int): Pool members audited in parallel.

        Returns:
            None
        """

        self.proof_service = proof_service
        self.semigroup_service = semigroup_service
        self.catalog_service = catalog_service
        self.enumeration_service = enumeration_service
        self.semigroup_loader = semigroup_loader
        self.thread_works = thread_works

    def resolve_pool(self, spec: str) -> list[FinSemigroup]:
        """
        Builds a pool from ``+``-joined items: ``monoids:N``, ``catalog``,
        ``groups``, ``com``, ``file:PATH`` or any catalog expression.

        Raises:
            FormatError: If an item is not understood.
        """

        pool: list[FinSemigroup] = []
        for item in (part.strip() for part in spec.split("+")):
            if item.startswith("monoids:"):
                try:
                    order = int(item.removeprefix("monoids:"))
                except ValueError as error:
                    raise FormatError(f"bad pool item {item!r}") from error
                pool.extend(self.enumeration_service.enumerate_monoids(order))
            elif item == "catalog":
                pool.extend(self.catalog_service.catalog_pool())
            elif item == "groups":
                pool.extend(self.catalog_service.group_pool())
            elif item == "com":
                pool.extend(self.catalog_service.commutative_pool())
            elif item.startswith("file:"):
                if self.semigroup_loader is None:
                    raise FormatError(f"cannot load {item!r}: no file loader")
                pool.append(self.semigroup_loader(item.removeprefix("file:")))
            elif item:
                try:
                    pool.append(self.catalog_service.resolve(item))
                except KappaError as error:
                    raise FormatError(f"bad pool item {item!r}: {error}") from error
        logger.info(f"Pool {spec!r} has {len(pool)} members")
        return pool

    def _audit_member(
        self,
        script: ProofScript,
        facts: dict[str, ProvedFact],
        member: FinSemigroup,
    ) -> list[dict] | None:
        """
        Violation rows for one member, or None when it is out of scope.  A
        claim that cannot be evaluated gives a row whose witness is the error.
        """

        if script.signature is Signature.MONOID and member.identity is None:
            return None
        try:
            if not self.semigroup_service.satisfies_all(
                member, list(script.hypotheses.values())
            ):
                return None
        except MissingIdentity:
            return None

        rows = []
        for step_id, fact in facts.items():
            if fact.assumptions:
                continue
            for k, claim in instances(fact, script.signature):
                try:
                    holds, witness = self.semigroup_service.satisfies(member, claim)
                except KappaError as error:
                    logger.error(
                        f"Step {step_id} cannot be checked in {member.label}: {error}"
                    )
                    rows.append(_error_row(member, error, step_id, str(claim), k))
                    continue
                if not holds:
                    rows.append(
                        {
                            "semigroup": member.label,
                            "step": step_id,
                            "claim": str(claim),
                            "k": k,
                            "witness": render_assignment(member, witness),
                        }
                    )
        return rows

    def audit_soundness(
        self, script: ProofScript, pool: list[FinSemigroup]
    ) -> AuditReport:
        """
        Checks every closed fact of ``script`` in every member of ``pool``
        that satisfies the hypotheses.

        Args:
            script (ProofScript): The script to audit.
            pool (list[FinSemigroup]): The semigroups to check in.

        Returns:
            AuditReport: The members checked and skipped, and a table of
                violated facts, which is empty for a sound checker.

        Raises:
            ProofRejected: If the script is rejected.
        """

        result = self.proof_service.require_accepted(script)
        report = AuditReport(script.name or "script")
        rows: list[dict] = []
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=self.thread_works
        ) as executor:
            futures = {
                executor.submit(self._audit_member, script, result.facts, member): member
                for member in pool
            }
            for future in concurrent.futures.as_completed(futures):
                member = futures[future]
                try:
                    member_rows = future.result()
                except KappaError as error:
                    logger.exception(f"Audit of {member.label} failed")
                    member_rows = [_error_row(member, error)]
                if member_rows is None:
                    report.skipped += 1
                    continue
                report.checked += 1
                rows.extend(member_rows)

        if rows:
            report.violations = (
                pd.DataFrame(rows, columns=VIOLATION_COLUMNS)
                .sort_values(["semigroup", "step"], kind="stable")
                .reset_index(drop=True)
            )
            for row in rows:
                logger.warning(
                    f"{report.script}: step {row['step']} fails in "
                    f"{row['semigroup']} at {row['witness']}"
                )
        logger.info(
            f"Audited {report.script}: {report.checked} checked, "
            f"{report.skipped} skipped, {len(rows)} violations"
        )
        return report
