import pytest

from app.application.services.proof_service import (
    ambient_schemas,
    dual_script,
    flip_hypotheses,
)
from app.domain.entities import IterateJust, MulJust
from app.domain.errors import ProofRejected, RejectReason
from app.infrastructure.formats.proof_file import load_script, read_script
from app.infrastructure.parsing.term_parser import parse_identity

LEMMA = """
sig monoid
hyp h: x^2 = x^5
step s1 = hyp h |- x^2 = x^5
step ih = ih |- x^2 = x^(3k+2)
step s2 = ctx ih _ x^3 |- x^5 = x^(3k+5)
step s3 = trans s1 s2 |- x^2 = x^(3k+5)
step s4 = induction base=s1 step=s3 |- x^2 = x^(3k+2)
"""


def check(proofs, text):
    return proofs.check_script(read_script(text))


def test_lemma_facts(proofs):
    result = check(proofs, LEMMA + "step s5 = limit s4\ngoal: x^2 = x^(w+2)\n")
    assert result.accepted
    assert result.rejection is None
    assert result.facts["s3"].assumptions == frozenset({"ih"})
    assert result.facts["s4"].assumptions == frozenset()
    assert result.facts["s4"].start == 1
    assert result.facts["s5"].claim == parse_identity("x^2 = x^(w+2)")


def test_instances_of_a_family(proofs):
    result = check(proofs, LEMMA + "step s5 = inst s4 n=2 |- x^2 = x^8\ngoal: x^8 = x^2\n")
    assert result.accepted

    capped = check(proofs, LEMMA + "step s5 = inst s4 n=13\ngoal: x = x\n")
    assert capped.rejection.step_id == "s5"
    assert capped.rejection.reason is RejectReason.ILL_FORMED_EXPONENT


def test_ambient_schemas(proofs):
    assert [schema.name for schema in ambient_schemas()] == ["A3", "A4", "A6"]
    result = check(
        proofs,
        "sig monoid\n"
        "step s1 = ambient A3 a=w b=1 |- x^w x = x^(w+1)\n"
        "step s2 = ambient A4 a=(w-1) b=(w-1) |- (x^(w-1))^(w-1) = x^(w+1)\n"
        "step s3 = ambient A6 a=2 subst y->z |- xzxzx = x zxzx\n"
        "goal: x^w x = x^(w+1)\n",
    )
    assert result.accepted

    missing = check(proofs, "sig monoid\nstep s1 = ambient A3 a=w\ngoal: x = x\n")
    assert missing.rejection.reason is RejectReason.BAD_SCHEMA


def test_hypotheses_contexts_and_substitutions(proofs):
    result = check(
        proofs,
        "sig monoid\n"
        "hyp h: xy = yx\n"
        "step s1 = hyp h subst x->x^w ctx z _ |- z x^w y = z y x^w\n"
        "step s2 = subst s1 z->1 |- x^w y = y x^w\n"
        "step s3 = ctx s2 (_)^2 |- x^w y x^w y = y x^w y x^w\n"
        "goal: y x^w = x^w y\n",
    )
    assert result.accepted


def test_hypotheses_may_be_used_backwards(proofs):
    assert check(
        proofs, "sig monoid\nhyp h: x = xx\nstep s1 = hyp h |- xx = x\ngoal: xx = x\n"
    ).accepted


def test_symbolic_hypotheses_are_rejected(proofs):
    result = check(proofs, "sig monoid\nhyp h: x^k = x\nstep s1 = refl x\ngoal: x = x\n")
    assert result.rejection.step_id == "hyp h"
    assert result.rejection.reason is RejectReason.SYMBOLIC_HYPOTHESIS


def test_induction_hypotheses_must_be_schematic(proofs):
    result = check(proofs, "sig monoid\nstep s1 = ih |- x = x\ngoal: x = x\n")
    assert result.rejection.reason is RejectReason.NOT_SCHEMATIC


def test_rejection_text(proofs):
    result = check(proofs, "sig monoid\nstep s1 = refl |- x = y\ngoal: x = y\n")
    assert str(result.rejection) == "step s1: refl-mismatch: sides differ"
    with pytest.raises(ProofRejected) as error:
        proofs.require_accepted(read_script("sig monoid\nstep s1 = refl |- x = y\ngoal: x = y\n"))
    assert error.value.rejection == result.rejection


@pytest.mark.parametrize(
    ("name", "step", "reason"),
    [
        ("one_letter_open_limit.psf", "s5", RejectReason.OPEN_ASSUMPTION),
        ("one_letter_wrong_claim.psf", "s1", RejectReason.CLAIM_MISMATCH),
        ("one_letter_wrong_period.psf", "s4", RejectReason.INDUCTION_STEP),
        ("refl_distinct_sides.psf", "s1", RejectReason.REFL_MISMATCH),
        ("com_base_too_early.psf", "p", RejectReason.INDUCTION_BASE),
        ("com_instance_below_start.psf", "i", RejectReason.BELOW_THRESHOLD),
        ("g_limit_of_constant.psf", "s2", RejectReason.NOT_SCHEMATIC),
        ("j_gamma_bad_schema.psf", "s2", RejectReason.BAD_SCHEMA),
        ("j_gamma_forward_reference.psf", "s4", RejectReason.FORWARD_REFERENCE),
        ("j_gamma_goal_not_reached.psf", "goal", RejectReason.GOAL_NOT_REACHED),
        ("j_gamma_side_mismatch.psf", "s4", RejectReason.SIDE_MISMATCH),
        ("j_gamma_unknown_hypothesis.psf", "s5", RejectReason.UNKNOWN_HYPOTHESIS),
        ("r_wrong_iterate.psf", "s2", RejectReason.SIDE_MISMATCH),
        ("dual_pair_duplicate_step.psf", "s3", RejectReason.DUPLICATE_STEP),
        ("er_ds_swapped_substitution.psf", "s9", RejectReason.CLAIM_MISMATCH),
        ("dg_wrong_iterate_factor.psf", "s4", RejectReason.SIDE_MISMATCH),
        ("ds_multiplied_on_the_right.psf", "s10", RejectReason.CLAIM_MISMATCH),
    ],
)
def test_negative_scripts(proofs, corpus_path, name, step, reason):
    script = load_script(corpus_path / "negative" / name)
    result = proofs.check_script(script)
    assert not result.accepted
    assert result.rejection.step_id == step == script.expected_reject
    assert result.rejection.reason is reason


@pytest.mark.parametrize(
    ("name", "goal"),
    [
        ("er_ds_to_drg.psf", "((xy)^w x)^w = (xy)^w"),
        ("dg_to_drg.psf", "((xy)^w x)^w = (xy)^w"),
        ("ds_from_sandwich.psf", "((xy)^w x (xy)^w)^w = (xy)^w"),
    ],
)
def test_derivations_between_bases(proofs, corpus_path, name, goal):
    script = load_script(corpus_path / name)
    assert script.goal == parse_identity(goal)
    result = proofs.check_script(script)
    assert result.accepted, result.rejection


def test_unknown_step_reference(proofs):
    result = check(proofs, "sig monoid\nstep s1 = sym s9\ngoal: x = x\n")
    assert result.rejection.reason is RejectReason.UNKNOWN_STEP


def test_macro_expansion(proofs, corpus_path):
    script = load_script(corpus_path / "aperiodic_drg_to_r.psf")
    expanded = proofs.expand_macros(script)
    ids = [step.id for step in expanded.steps]
    assert ids[ids.index("s5") - 2 : ids.index("s5") + 1] == ["s5.l", "s5.r", "s5"]
    assert not any(isinstance(s.justification, MulJust) for s in expanded.steps)
    assert proofs.check_script(expanded).accepted


def test_iterate_expansion(proofs, corpus_path):
    script = load_script(corpus_path / "r_absorbs_idempotent.psf")
    expanded = proofs.expand_macros(script)
    ids = [step.id for step in expanded.steps]
    assert ids == ["s1", "s2.ih", "s2.c", "s2.s", "s2", "s3"]
    assert not any(isinstance(s.justification, IterateJust) for s in expanded.steps)


def test_iterate_from_a_later_start(proofs):
    result = check(
        proofs,
        "sig monoid\n"
        "hyp r: (xy)^w x = (xy)^w\n"
        "step s1 = hyp r |- (xy)^w = (xy)^w x\n"
        "step s2 = iterate s1 left=1 right=x from=3 |- (xy)^w = (xy)^w x^k\n"
        "step s3 = inst s2 n=3 |- (xy)^w = (xy)^w x^6\n"
        "goal: (xy)^w x^6 = (xy)^w\n",
    )
    assert result.accepted
    assert result.facts["s2"].start == 3
    assert [s.id for s in result.expanded][:4] == ["s1", "s2.b2c", "s2.b2", "s2.b3c"]


def test_flipped_hypotheses_are_still_usable(proofs, corpus_path):
    script = load_script(corpus_path / "one_letter_period.psf")
    assert proofs.check_script(flip_hypotheses(script)).accepted


def test_dual_script(proofs, corpus_path):
    script = load_script(corpus_path / "r_absorbs_idempotent.psf")
    dual = dual_script(script)
    assert dual.goal == parse_identity("x^w (yx)^w = (yx)^w")
    assert proofs.check_script(dual).accepted
