from pathlib import Path

import pytest

from app.application.services.audit_service import AuditService
from app.application.services.catalog_service import CatalogService
from app.application.services.corpus_service import CorpusService
from app.application.services.decider_service import DeciderService
from app.application.services.enumeration_service import EnumerationService
from app.application.services.macro_service import MacroService
from app.application.services.proof_service import ProofService
from app.application.services.rees_service import ReesService
from app.application.services.semigroup_service import SemigroupService
from app.application.services.variety_service import VarietyService
from app.domain.repositories import InMemoryMonoidRepository
from app.infrastructure.formats.proof_file import load_script

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture
def corpus_path() -> Path:
    return CORPUS


@pytest.fixture
def catalog() -> CatalogService:
    return CatalogService()


@pytest.fixture
def semigroups() -> SemigroupService:
    return SemigroupService()


@pytest.fixture
def monoid_repo() -> InMemoryMonoidRepository:
    return InMemoryMonoidRepository()


@pytest.fixture
def enumeration(monoid_repo) -> EnumerationService:
    return EnumerationService(monoid_repo, max_congruence_order=12, max_monoid_order=4)


@pytest.fixture
def rees(catalog) -> ReesService:
    return ReesService(catalog)


@pytest.fixture
def deciders(semigroups, catalog) -> DeciderService:
    return DeciderService(semigroups, catalog, thread_works=2)


@pytest.fixture
def proofs() -> ProofService:
    return ProofService(MacroService(), max_factorial_arg=12)


@pytest.fixture
def audits(proofs, semigroups, catalog, enumeration) -> AuditService:
    return AuditService(proofs, semigroups, catalog, enumeration, thread_works=2)


@pytest.fixture
def corpus_service(proofs, audits) -> CorpusService:
    return CorpusService(proofs, audits, load_script, thread_works=2)


@pytest.fixture
def varieties(semigroups, catalog) -> VarietyService:
    return VarietyService(semigroups, catalog)
