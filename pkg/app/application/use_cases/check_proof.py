"""
Implements use cases for checking proof scripts and replaying the corpus
"""

from collections.abc import Callable
from pathlib import Path

from app.application.dtos import (
    CheckProofRequestDTO,
    CommandResultDTO,
    CorpusRequestDTO,
)
from app.application.services.audit_service import AuditService
from app.application.services.corpus_service import CorpusService
from app.application.services.proof_service import ProofService
from app.domain.entities import ProofScript
from app.infrastructure.formats.proof_file import render_script


class CheckProofUseCase:
    """
    Class that checks one proof script, optionally expanding its macros and
    auditing it over a pool.
    """

    def __init__(
        self,
        proof_service: ProofService,
        audit_service: AuditService,
        script_loader: Callable[[Path], ProofScript],
    ) -> None:
        """
        Initializes the use case.

        Parameters:
            - proof_service (ProofService): The checker.
            - audit_service (AuditService): Runs ``--audit``.
            - script_loader (Callable): Reads a script file.

        Returns:
            None
        """

        self.proof_service = proof_service
        self.audit_service = audit_service
        self.script_loader = script_loader

    def execute(self, dto: CheckProofRequestDTO) -> CommandResultDTO:
        """
        Checks the script and reports acceptance or the first rejected step.

        Parameters:
            - dto (CheckProofRequestDTO): The script path and the options.

        Returns:
            CommandResultDTO: Exit code 1 on rejection or audit violation.
        """

        script = self.script_loader(Path(dto.path))
        result = self.proof_service.check_script(script)
        if not result.accepted:
            return CommandResultDTO(f"rejected: {result.rejection}", 1)

        if dto.expand_macros:
            lines = [render_script(self.proof_service.expand_macros(script)).rstrip("\n")]
        else:
            lines = [f"accepted ({len(result.expanded)} steps)"]
        if dto.audit is None:
            return CommandResultDTO("\n".join(lines))

        pool = self.audit_service.resolve_pool(dto.audit)
        report = self.audit_service.audit_soundness(script, pool)
        lines.append(
            f"audit: {report.checked} checked, {report.skipped} skipped, "
            f"{len(report.violations)} violations"
        )
        if not report.sound:
            lines.append(report.violations.to_string(index=False))
        return CommandResultDTO("\n".join(lines), 0 if report.sound else 1)


class RunCorpusUseCase:
    """
    Class that replays every script of a corpus directory.
    """

    def __init__(self, corpus_service: CorpusService, audit_service: AuditService) -> None:
        self.corpus_service = corpus_service
        self.audit_service = audit_service

    def execute(self, dto: CorpusRequestDTO) -> CommandResultDTO:
        """
        Parameters:
            - dto (CorpusRequestDTO): The corpus directory and an optional
                audit pool.

        Returns:
            CommandResultDTO: The corpus table; exit code 1 unless every file
                behaved as expected.
        """

        pool = self.audit_service.resolve_pool(dto.audit) if dto.audit else None
        table = self.corpus_service.run_corpus(dto.path, pool)
        good = int(table["ok"].sum())
        output = table.to_string(index=False) + f"\n{good}/{len(table)} as expected"
        return CommandResultDTO(output, 0 if good == len(table) else 1)
