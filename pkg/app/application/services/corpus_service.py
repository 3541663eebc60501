"""
Replays a directory of proof scripts.
"""

import concurrent.futures
import logging
from collections.abc import Callable
from pathlib import Path

import pandas as pd

from app.application.services.audit_service import AuditService
from app.application.services.proof_service import ProofService
from app.domain.entities import FinSemigroup, ProofScript
from app.domain.errors import FormatError, KappaError

logger = logging.getLogger(__name__)

CORPUS_COLUMNS = ["file", "expected", "outcome", "step", "reason", "ok"]

NEGATIVE_DIR = "negative"


class CorpusService:
    """
    Checks every ``.psf`` file below a directory.  Files under a
    ``negative`` directory must be rejected at the step named by their
    ``# expect-reject`` comment; every other file must be accepted.
    """

    def __init__(
        self,
        proof_service: ProofService,
        audit_service: AuditService,
        script_loader: Callable[[Path], ProofScript],
        thread_works: int = 8,
    ) -> None:
        self.proof_service = proof_service
        self.audit_service = audit_service
        self.script_loader = script_loader
        self.thread_works = thread_works

    @staticmethod
    def corpus_files(path: str | Path) -> list[Path]:
        root = Path(path)
        if root.is_file():
            return [root]
        return sorted(root.rglob("*.psf"))

    def _replay(
        self, root: Path, path: Path, pool: list[FinSemigroup] | None
    ) -> dict:
        negative = NEGATIVE_DIR in (root.name, *path.relative_to(root).parts[:-1])
        row = {
            "file": path.relative_to(root).as_posix(),
            "expected": "reject" if negative else "accept",
        }
        try:
            script = self.script_loader(path)
        except FormatError as error:
            return row | {
                "outcome": "error",
                "step": "",
                "reason": str(error),
                "ok": False,
            }

        result = self.proof_service.check_script(script)
        if result.accepted:
            row |= {"outcome": "accept", "step": "", "reason": "", "ok": not negative}
            if pool is not None and not negative:
                report = self.audit_service.audit_soundness(script, pool)
                row["violations"] = len(report.violations)
                row["ok"] = report.sound
            return row

        rejection = result.rejection
        row |= {
            "outcome": "reject",
            "step": rejection.step_id,
            "reason": str(rejection.reason),
            "ok": negative and rejection.step_id == script.expected_reject,
        }
        if negative and script.expected_reject is None:
            logger.warning(f"{path} has no expect-reject comment")
        return row

    def run_corpus(
        self, path: str | Path, pool: list[FinSemigroup] | None = None
    ) -> pd.DataFrame:
        """
        Checks every script of the corpus in parallel.

        Args:
            path (str | Path): A corpus directory or a single script.
            pool (list[FinSemigroup] | None): When given, every accepted
                positive script is also audited over this pool.

        Returns:
            pd.DataFrame: One row per file, sorted by file name, with the
                outcome, the rejected step and whether it was expected.
        """

        root = Path(path)
        files = self.corpus_files(root)
        base = root.parent if root.is_file() else root
        logger.info(f"Replaying {len(files)} scripts from {root}")

        rows = []
        with concurrent.futures.ThreadPoolExecutor(
            max_workers=self.thread_works
        ) as executor:
            futures = {
                executor.submit(self._replay, base, file, pool): file for file in files
            }
            for future in concurrent.futures.as_completed(futures):
                file = futures[future]
                try:
                    rows.append(future.result())
                except KappaError as error:
                    logger.exception(f"Replay of {file} failed")
                    rows.append(
                        {
                            "file": file.relative_to(base).as_posix(),
                            "expected": "",
                            "outcome": "error",
                            "step": "",
                            "reason": str(error),
                            "ok": False,
                        }
                    )

        columns = CORPUS_COLUMNS + (["violations"] if pool is not None else [])
        table = pd.DataFrame(rows, columns=columns)
        if pool is not None:
            table["violations"] = table["violations"].fillna(0).astype(int)
        table = table.sort_values("file", kind="stable").reset_index(drop=True)
        failures = int((~table["ok"].astype(bool)).sum())
        if failures:
            logger.warning(f"{failures} of {len(table)} corpus scripts misbehaved")
        return table
