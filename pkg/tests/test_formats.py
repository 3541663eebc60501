import numpy as np
import pytest

from app.domain.entities import CtxJust, InductionJust, IterateJust, LimitJust
from app.domain.errors import FormatError
from app.domain.terms import Signature
from app.infrastructure.formats.proof_file import load_script, read_script, render_script
from app.infrastructure.formats.semigroup_file import (
    load_semigroup,
    read_semigroup,
    save_semigroup,
    write_semigroup,
)
from app.infrastructure.parsing.term_parser import parse_identity

SL2_TEXT = "order 2 monoid identity=0\n0 1\n1 1\nnames: 1 0\n"


def test_write_semigroup(catalog):
    assert write_semigroup(catalog.resolve("Sl2")) == SL2_TEXT


def test_read_semigroup():
    semigroup = read_semigroup("# a semilattice\n" + SL2_TEXT, "sl2")
    assert semigroup.order == 2
    assert semigroup.identity == 0
    assert semigroup.signature is Signature.MONOID
    assert semigroup.names == ("1", "0")
    assert semigroup.label == "sl2"


def test_semigroup_files_round_trip(catalog, tmp_path):
    b2 = catalog.resolve("B2")
    path = tmp_path / "brandt.tbl"
    save_semigroup(b2, path)
    loaded = load_semigroup(path)
    assert np.array_equal(loaded.table, b2.table)
    assert loaded.names == b2.names
    assert loaded.label == "brandt"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "order two semigroup\n0 0\n0 0\n",
        "order 2 semigroup\n0 0\n",
        "order 2 semigroup\n0 0\n0 x\n",
        "order 2 semigroup\n0 0 0\n0 0\n",
        "order 2 semigroup\n1 1\n0 0\n",
        "order 2 semigroup identity=1\n0 1\n0 1\n",
        "order 2 semigroup\n0 0\n0 0\nlabels: a b\n",
    ],
)
def test_malformed_semigroup_files(text):
    with pytest.raises(FormatError):
        read_semigroup(text)


def test_read_script(corpus_path):
    script = load_script(corpus_path / "one_letter_period.psf")
    assert script.name == "one_letter_period.psf"
    assert script.signature is Signature.MONOID
    assert script.hypotheses == {"h": parse_identity("x^2 = x^5")}
    assert [step.id for step in script.steps] == ["s1", "ih", "s2", "s3", "s4", "s5"]
    assert isinstance(script.steps[2].justification, CtxJust)
    assert script.steps[4].justification == InductionJust("s1", "s3", 1)
    assert script.steps[5].justification == LimitJust("s4")
    assert script.goal == parse_identity("x^2 = x^(w+2)")
    assert script.expected_reject is None


def test_expected_rejections_are_read(corpus_path):
    script = load_script(corpus_path / "negative" / "refl_distinct_sides.psf")
    assert script.expected_reject == "s1"


def test_render_script_is_read_back(corpus_path):
    script = load_script(corpus_path / "r_absorbs_idempotent.psf")
    text = render_script(script)
    again = read_script(text, script.name)
    assert render_script(again) == text
    assert isinstance(again.steps[1].justification, IterateJust)
    assert again.goal == script.goal


def test_iterate_options():
    script = read_script(
        "sig monoid\n"
        "hyp r: (xy)^w x = (xy)^w\n"
        "step s1 = hyp r\n"
        "step s2 = iterate s1 left=1 right=x from=3\n"
        "goal: (xy)^w x = (xy)^w\n"
    )
    assert script.steps[0].claim is None
    assert script.steps[1].justification.start == 3
    assert "from=3" in render_script(script)


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("sig monoid\nstep s1 = refl\nbogus\ngoal: x = x\n", 3),
        ("sig monoid\nstep s1 = frobnicate s0\ngoal: x = x\n", 2),
        ("sig monoid\nhyp h: x = (y\ngoal: x = x\n", 2),
        ("sig monoid\nhyp h: x = y\nhyp h: y = x\ngoal: x = x\n", 3),
        ("hyp h: x = y\nsig monoid\ngoal: x = x\n", 2),
        ("sig semigroup\nhyp h: x 1 = x^0\ngoal: x = x\n", 2),
    ],
)
def test_malformed_scripts_report_the_line(text, line):
    with pytest.raises(FormatError) as error:
        read_script(text)
    assert error.value.line == line
    assert str(error.value).startswith(f"line {line}: ")


def test_missing_goal():
    with pytest.raises(FormatError, match="missing goal"):
        read_script("sig monoid\nstep s1 = refl x\n")
