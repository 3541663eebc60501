import pytest

from app.application.services.audit_service import INSTANCE_RANGE, instances
from app.domain.entities import ProvedFact
from app.domain.errors import FormatError, ProofRejected, SymbolicExponentError
from app.domain.terms import Signature
from app.infrastructure.formats.proof_file import load_script, read_script
from app.infrastructure.parsing.term_parser import parse_identity


def test_instances_of_a_schematic_fact():
    fact = ProvedFact(parse_identity("x^k = x^(2k)"))
    assert [k for k, _ in instances(fact, Signature.MONOID)] == [1, 2, 6, 24]
    assert len(INSTANCE_RANGE) == 4


def test_instances_start_at_the_family_start():
    fact = ProvedFact(parse_identity("x^(k-3) = x^(k-3)"), start=1)
    assert [k for k, _ in instances(fact, Signature.MONOID)] == [6, 24]
    later = ProvedFact(parse_identity("x^k = x^k"), start=7)
    assert [k for k, _ in instances(later, Signature.MONOID)] == [24]


def test_constant_facts_are_their_own_instance():
    claim = parse_identity("x^(w+2) = x^2")
    assert instances(ProvedFact(claim), Signature.MONOID) == [(None, claim)]


def test_resolve_pool(audits):
    assert [s.label for s in audits.resolve_pool("C2+Sl2")] == ["C2", "Sl2"]
    assert len(audits.resolve_pool("monoids:2+groups")) == 3 + 12
    for spec in ("bogus", "monoids:x", "file:missing.tbl"):
        with pytest.raises(FormatError):
            audits.resolve_pool(spec)


def test_audit_lemma(audits, corpus_path):
    script = load_script(corpus_path / "one_letter_period.psf")
    pool = audits.resolve_pool("monoids:3+catalog")
    report = audits.audit_soundness(script, pool)
    assert report.sound
    assert report.violations.empty
    assert report.checked + report.skipped == len(pool)
    assert report.checked > 0
    assert report.script == "one_letter_period.psf"


def test_members_failing_the_hypotheses_are_skipped(audits, corpus_path):
    script = load_script(corpus_path / "one_letter_period.psf")
    # C2 fails x^2 = x^5, C3 satisfies it.
    report = audits.audit_soundness(script, audits.resolve_pool("C2+C3"))
    assert (report.checked, report.skipped) == (1, 1)


def test_monoid_scripts_skip_semigroups_without_identity(audits, corpus_path):
    script = load_script(corpus_path / "one_letter_period.psf")
    report = audits.audit_soundness(script, audits.resolve_pool("B(1,2)"))
    assert (report.checked, report.skipped) == (0, 1)


def test_rejected_scripts_are_not_audited(audits):
    script = read_script("sig monoid\nstep s1 = refl |- x = y\ngoal: x = y\n")
    with pytest.raises(ProofRejected):
        audits.audit_soundness(script, [])


def test_evaluation_errors_are_reported_as_violations(audits, monkeypatch):
    def unevaluable(member, identity):
        raise SymbolicExponentError(f"symbolic exponent in {identity}")

    monkeypatch.setattr(audits.semigroup_service, "satisfies", unevaluable)
    script = read_script("sig monoid\nstep s1 = refl x\ngoal: x = x\n")
    report = audits.audit_soundness(script, audits.resolve_pool("C2+C3"))
    assert (report.checked, report.skipped) == (2, 0)
    assert not report.sound
    assert list(report.violations["semigroup"]) == ["C2", "C3"]
    assert list(report.violations["step"]) == ["s1", "s1"]
    assert report.violations["witness"].str.startswith("error: ").all()


def test_member_errors_are_reported_as_violations(audits, monkeypatch):
    def failing(member, identities):
        raise SymbolicExponentError("symbolic hypothesis")

    monkeypatch.setattr(audits.semigroup_service, "satisfies_all", failing)
    script = read_script("sig monoid\nstep s1 = refl x\ngoal: x = x\n")
    report = audits.audit_soundness(script, audits.resolve_pool("C2"))
    assert (report.checked, report.skipped) == (1, 0)
    assert report.violations.loc[0, "witness"] == "error: symbolic hypothesis"


@pytest.mark.parametrize("name", ["er_ds_to_drg.psf", "dg_to_drg.psf", "ds_from_sandwich.psf"])
def test_derivations_with_iterated_factors_are_sound(audits, corpus_path, name):
    pool = audits.resolve_pool("monoids:3+catalog")
    report = audits.audit_soundness(load_script(corpus_path / name), pool)
    assert report.sound
    assert report.checked > 0
