import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

# Application Layer Imports
from app.application.dtos import (
    CatalogRequestDTO,
    CheckProofRequestDTO,
    CommandResultDTO,
    CongruencesRequestDTO,
    CorpusRequestDTO,
    CrossCheckRequestDTO,
    DecideRequestDTO,
    EnumerateRequestDTO,
    EvalRequestDTO,
    MemberRequestDTO,
    ParseRequestDTO,
    ReesRequestDTO,
    SatisfiesRequestDTO,
)
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
from app.application.use_cases.check_proof import CheckProofUseCase, RunCorpusUseCase
from app.application.use_cases.check_satisfaction import (
    ExcludedFactsUseCase,
    MemberUseCase,
    SatisfiesUseCase,
)
from app.application.use_cases.decide_identity import CrossCheckUseCase, DecideUseCase
from app.application.use_cases.explore_semigroups import (
    CatalogUseCase,
    CongruencesUseCase,
    EnumerateUseCase,
    ReesUseCase,
)
from app.application.use_cases.inspect_terms import EvaluateTermUseCase, ParseTermUseCase
from app.domain.entities import FinSemigroup
from app.domain.errors import KappaError
from app.domain.terms import Signature
from app.domain.varieties import VARIETIES

# Configuration
from app.infrastructure.config.settings import app_settings

# Infrastructure Layer Imports (Concrete Implementations)
from app.infrastructure.formats.proof_file import load_script
from app.infrastructure.formats.semigroup_file import load_semigroup
from app.infrastructure.persistence.repositories import MonoidRepository

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    """Sends log records to stderr so that stdout only carries results."""
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


# --- Dependency Injection Setup ---
def build_commands() -> dict[str, Callable[[argparse.Namespace], CommandResultDTO]]:
    """Wires the services and returns one handler per verb."""

    # Infrastructure Layer Instances
    monoid_repo = MonoidRepository(app_settings.ENUMERATION_DB_URL)

    # Application Layer Service Instances
    catalog_service = CatalogService()
    semigroup_service = SemigroupService(thread_works=app_settings.THREAD_WORKS)
    enumeration_service = EnumerationService(
        monoid_repo,
        max_congruence_order=app_settings.MAX_CONGRUENCE_ORDER,
        max_monoid_order=app_settings.MAX_MONOID_ORDER,
    )
    rees_service = ReesService(catalog_service)
    decider_service = DeciderService(
        semigroup_service,
        catalog_service,
        thread_works=app_settings.THREAD_WORKS,
        max_word_length=app_settings.MAX_GROUP_WORD_LENGTH,
    )
    proof_service = ProofService(
        MacroService(), max_factorial_arg=app_settings.MAX_FACTORIAL_ARG
    )

    def semigroup_resolver(text: str) -> FinSemigroup:
        path = Path(text)
        if path.is_file():
            return load_semigroup(path)
        return catalog_service.resolve(text)

    audit_service = AuditService(
        proof_service,
        semigroup_service,
        catalog_service,
        enumeration_service,
        semigroup_loader=semigroup_resolver,
        thread_works=app_settings.THREAD_WORKS,
    )
    corpus_service = CorpusService(
        proof_service, audit_service, load_script, app_settings.THREAD_WORKS
    )
    variety_service = VarietyService(semigroup_service, catalog_service)

    # Application Layer Use Cases
    parse = ParseTermUseCase()
    evaluate = EvaluateTermUseCase(semigroup_service, semigroup_resolver)
    satisfies = SatisfiesUseCase(semigroup_service, semigroup_resolver)
    decide = DecideUseCase(decider_service)
    crosscheck = CrossCheckUseCase(decider_service)
    check_proof = CheckProofUseCase(proof_service, audit_service, load_script)
    corpus = RunCorpusUseCase(corpus_service, audit_service)
    catalog = CatalogUseCase(catalog_service)
    rees = ReesUseCase(rees_service, semigroup_resolver)
    congruences = CongruencesUseCase(enumeration_service, semigroup_resolver)
    enumerate_ = EnumerateUseCase(enumeration_service)
    excluded = ExcludedFactsUseCase(variety_service)
    member = MemberUseCase(variety_service, semigroup_resolver)

    return {
        "parse": lambda a: parse.execute(
            ParseRequestDTO(a.text, Signature(a.signature), not a.raw)
        ),
        "eval": lambda a: evaluate.execute(
            EvalRequestDTO(a.semigroup, a.term, a.assign)
        ),
        "satisfies": lambda a: satisfies.execute(
            SatisfiesRequestDTO(a.semigroup, a.identity)
        ),
        "decide": lambda a: decide.execute(
            DecideRequestDTO(a.variety, a.identity, a.witness)
        ),
        "crosscheck": lambda a: crosscheck.execute(
            CrossCheckRequestDTO(a.variety, a.count, a.seed)
        ),
        "check-proof": lambda a: check_proof.execute(
            CheckProofRequestDTO(a.file, a.audit, a.expand_macros)
        ),
        "corpus": lambda a: corpus.execute(CorpusRequestDTO(a.path, a.audit)),
        "catalog": lambda a: catalog.execute(CatalogRequestDTO(a.name, a.write)),
        "rees": lambda a: rees.execute(
            ReesRequestDTO(a.group, a.sandwich, a.triples, a.normalize)
        ),
        "congruences": lambda a: congruences.execute(
            CongruencesRequestDTO(a.semigroup)
        ),
        "enumerate": lambda a: enumerate_.execute(
            EnumerateRequestDTO(a.max_order, a.tables)
        ),
        "excluded": lambda a: excluded.execute(),
        "member": lambda a: member.execute(
            MemberRequestDTO(a.semigroup, a.variety, a.basis)
        ),
    }


# --- Command Line Interface ---
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kappaproof",
        description="Omega-terms, finite semigroups and pseudoidentity proofs.",
    )
    parser.add_argument(
        "--log-level",
        default=app_settings.LOG_LEVEL,
        help="logging level for the diagnostics on stderr",
    )
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    semigroup_help = "a table file or a catalog expression such as C(2,1)^1"

    p = verbs.add_parser("parse", help="parse and print a term or identity")
    p.add_argument("text")
    p.add_argument("--signature", choices=["monoid", "semigroup"], default="monoid")
    p.add_argument("--raw", action="store_true", help="print without normalizing")

    p = verbs.add_parser("eval", help="evaluate a term in a semigroup")
    p.add_argument("--semigroup", required=True, help=semigroup_help)
    p.add_argument("--assign", default="", help="assignment such as 'x=a, y=0'")
    p.add_argument("term")

    p = verbs.add_parser("satisfies", help="model check a pseudoidentity")
    p.add_argument("--semigroup", required=True, help=semigroup_help)
    p.add_argument("identity")

    p = verbs.add_parser("decide", help="decide an identity in G or Com")
    p.add_argument("--variety", required=True, choices=["G", "Com"])
    p.add_argument("--witness", action="store_true", help="search a separating pool member")
    p.add_argument("identity")

    p = verbs.add_parser("crosscheck", help="compare a decider with its oracle pool")
    p.add_argument("--variety", required=True, choices=["G", "Com"])
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=app_settings.DEFAULT_SEED)

    p = verbs.add_parser("check-proof", help="check a proof script")
    p.add_argument("file")
    p.add_argument("--audit", metavar="POOL", help="pool such as monoids:4+catalog")
    p.add_argument("--expand-macros", action="store_true", help="print the expanded script")

    p = verbs.add_parser("corpus", help="replay a directory of proof scripts")
    p.add_argument("path", nargs="?", default=app_settings.CORPUS_PATH)
    p.add_argument("--audit", metavar="POOL", help="also audit accepted scripts")

    p = verbs.add_parser("catalog", help="print or export a catalog semigroup")
    p.add_argument("name", help="catalog expression such as B(1,2)^1 or C2*C3")
    p.add_argument("--write", metavar="FILE", help="write the table file")

    p = verbs.add_parser("rees", help="build a Rees matrix semigroup")
    p.add_argument("--group", required=True, help=semigroup_help)
    p.add_argument(
        "--sandwich", required=True, help="rows indexed by Lambda, e.g. '1 1; 1 g'"
    )
    p.add_argument("--triples", action="store_true", help="list the congruence triples")
    p.add_argument("--normalize", action="store_true", help="normalize the sandwich matrix")

    p = verbs.add_parser("congruences", help="list the congruences of a semigroup")
    p.add_argument("--semigroup", required=True, help=semigroup_help)

    p = verbs.add_parser("enumerate", help="count monoids of small order")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--tables", action="store_true", help="print every table")

    verbs.add_parser("excluded", help="check the table of excluded monoids")

    p = verbs.add_parser("member", help="check membership in a variety")
    p.add_argument("--semigroup", required=True, help=semigroup_help)
    p.add_argument("--variety", required=True, choices=sorted(VARIETIES))
    p.add_argument("--basis", choices=["sigma", "gamma"], default="sigma")

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """
    Runs one command, printing its result on stdout.

    Returns:
        int: 0 on success, 1 for a failed check, 2 for usage, parse and
            format errors.
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    configure_logging(args.log_level)

    try:
        result = build_commands()[args.verb](args)
    except KappaError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    print(result.output)
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
