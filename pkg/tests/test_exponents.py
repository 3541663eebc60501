import pytest

from app.domain.errors import ExponentError, IllFormedInstantiation
from app.domain.exponents import (
    OMEGA,
    ZERO,
    Finite,
    IntConst,
    Nu,
    OmegaPlus,
    Sum,
    exp_add,
    exp_mul,
    render_exponent,
    sym_equal,
    sym_instantiate,
    sym_limit,
    sym_threshold,
    sym_valid_from,
)
from app.infrastructure.parsing.term_parser import parse_exponent


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [
        (Finite(2), Finite(3), Finite(5)),
        (OMEGA, Finite(2), OmegaPlus(2)),
        (Finite(1), OmegaPlus(-1), OMEGA),
        (OMEGA, OMEGA, OMEGA),
        (OmegaPlus(-1), OmegaPlus(3), OmegaPlus(2)),
    ],
)
def test_exp_add(a, b, expected):
    assert exp_add(a, b) == expected


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [
        (Finite(2), Finite(3), Finite(6)),
        (Finite(2), OmegaPlus(1), OmegaPlus(2)),
        (OmegaPlus(-1), OmegaPlus(-1), OmegaPlus(1)),
        (OMEGA, OMEGA, OMEGA),
        (ZERO, OMEGA, ZERO),
        (OmegaPlus(3), ZERO, ZERO),
    ],
)
def test_exp_mul(a, b, expected):
    assert exp_mul(a, b) == expected


def test_finite_exponents_are_nonnegative():
    with pytest.raises(ExponentError):
        Finite(-1)


def test_parse_and_render_symbolic_exponents():
    assert parse_exponent("(k-1)") == Sum(Nu(), IntConst(-1))
    assert render_exponent(parse_exponent("(k-1)")) == "(k-1)"
    assert render_exponent(parse_exponent("(2k+1)")) == "(2k+1)"
    assert render_exponent(parse_exponent("(w-1)")) == "(w-1)"
    assert render_exponent(parse_exponent("w")) == "w"
    assert render_exponent(parse_exponent("k")) == "k"


def test_constant_expressions_collapse():
    assert parse_exponent("(2+3)") == Finite(5)
    assert parse_exponent("(w+w)") == OMEGA
    assert parse_exponent("(w+1-2)") == OmegaPlus(-1)


def test_symbolic_equality_is_polynomial():
    assert sym_equal(parse_exponent("(k+k)"), parse_exponent("(2k)"))
    assert sym_equal(parse_exponent("((k+1)*(k-1))"), parse_exponent("(k*k-1)"))
    assert not sym_equal(parse_exponent("(k+1)"), parse_exponent("k"))


def test_instantiate_at_factorials():
    assert sym_instantiate(Sum(Nu(), IntConst(-1)), 3) == Finite(5)
    assert sym_instantiate(Nu(), 4) == Finite(24)
    assert sym_instantiate(parse_exponent("(w+k)"), 2) == OmegaPlus(2)
    assert sym_instantiate(Finite(7), 1) == Finite(7)


def test_instantiate_below_threshold_is_rejected():
    e = Sum(Nu(), IntConst(-3))
    assert sym_threshold(e) == 3
    with pytest.raises(IllFormedInstantiation):
        sym_instantiate(e, 2)
    assert sym_instantiate(e, 3) == Finite(3)


def test_eventually_negative_exponents_are_ill_formed():
    with pytest.raises(IllFormedInstantiation):
        sym_threshold(parse_exponent("(1-k)"))


def test_valid_from_counts_integer_parameters():
    assert sym_valid_from(parse_exponent("(k-1)")) == 1
    assert sym_valid_from(parse_exponent("(k-1)"), minimum=1) == 2
    assert sym_valid_from(parse_exponent("(k-3)")) == 3
    assert sym_valid_from(OMEGA) == 1


def test_limit_sends_the_parameter_to_omega():
    assert sym_limit(Sum(Nu(), IntConst(-1))) == OmegaPlus(-1)
    assert sym_limit(parse_exponent("(3k+2)")) == OmegaPlus(2)
    assert sym_limit(Nu()) == OMEGA
    assert sym_limit(Finite(3)) == Finite(3)
