import numpy as np
import pytest

from app.application.services.semigroup_service import (
    SemigroupService,
    render_assignment,
)
from app.domain.entities import FinSemigroup
from app.domain.errors import (
    MissingIdentity,
    NotACongruence,
    NotAGroup,
    NotAssociative,
    SemigroupError,
    UnassignedLetter,
)
from app.domain.exponents import OMEGA, Finite, OmegaPlus, exp_add, exp_mul
from app.domain.generators import TermGenerator
from app.domain.terms import Direction, Signature, Unit, first_occurrence_order
from app.infrastructure.parsing.term_parser import parse_identity, parse_term


def test_tables_must_be_associative():
    with pytest.raises(NotAssociative):
        FinSemigroup(np.array([[1, 1], [0, 0]]))


def test_identity_is_validated():
    right_zero = np.array([[0, 1], [0, 1]])
    with pytest.raises(SemigroupError):
        FinSemigroup(right_zero, identity=1)
    with pytest.raises(SemigroupError):
        FinSemigroup(right_zero, signature=Signature.MONOID)
    monoid = FinSemigroup(np.array([[0, 1], [1, 1]]), signature=Signature.MONOID)
    assert monoid.identity == 0


@pytest.mark.parametrize(
    ("expression", "order"),
    [
        ("Sl2", 2),
        ("B(2,3)", 6),
        ("C(3,2)", 4),
        ("C5", 5),
        ("B2", 5),
        ("N", 4),
        ("T", 3),
        ("S3", 6),
        ("S4", 24),
        ("A4", 12),
        ("D4", 8),
        ("Q8", 8),
        ("C2*C3", 6),
        ("B(1,2)^1", 3),
    ],
)
def test_catalog_orders(catalog, expression, order):
    assert catalog.resolve(expression).order == order


def test_catalog_groups(catalog):
    for expression in ("C4", "S3", "D4", "Q8", "A4", "C2*C3"):
        assert catalog.resolve(expression).is_group()
    assert not catalog.resolve("Sl2").is_group()
    assert catalog.resolve("C2*C3").is_commutative()
    assert not catalog.resolve("S3").is_commutative()
    assert not catalog.resolve("Q8").is_commutative()


def test_unknown_catalog_entries(catalog):
    with pytest.raises(SemigroupError):
        catalog.resolve("Z7")
    with pytest.raises(SemigroupError):
        catalog.catalog("B", 0, 2)


def test_element_names(catalog):
    t = catalog.resolve("T")
    assert t.idempotents == [0, 2]
    assert t.element("a") == 1
    assert t.element("2") == 2
    with pytest.raises(SemigroupError):
        t.element("b")


def test_adjoin_identity(catalog):
    sl2 = catalog.resolve("Sl2")
    assert catalog.adjoin_identity(sl2, force=False).order == 2
    forced = catalog.adjoin_identity(sl2)
    assert forced.order == 3
    assert forced.identity == 2
    assert forced.name(2) == "1'"
    assert catalog.resolve("B(1,2)^1").label == "B(1,2)^1"


def test_opposite_swaps_left_and_right(catalog):
    assert np.array_equal(
        catalog.resolve("B(1,2)^op").table, catalog.resolve("B(2,1)").table
    )


def test_quotient(catalog):
    c4 = catalog.resolve("C4")
    quotient = catalog.quotient(c4, ((0, 2), (1, 3)))
    assert quotient.order == 2
    assert quotient.is_group()
    with pytest.raises(NotACongruence):
        catalog.quotient(catalog.resolve("B2"), ((0, 1), (2,), (3,), (4,)))


def test_inverses(catalog):
    s3 = catalog.resolve("S3")
    inverses = s3.inverses
    for g in range(s3.order):
        assert s3.mul(g, int(inverses[g])) == 0
    with pytest.raises(NotAGroup):
        catalog.resolve("Sl2").inverses


def test_index_period_and_powers(catalog, semigroups):
    c = catalog.resolve("C(3,2)")
    a = c.element("a")
    assert semigroups.index_period(c, a) == (3, 2)
    assert c.name(semigroups.power(c, a, OMEGA)) == "a^4"
    assert c.name(semigroups.power(c, a, OmegaPlus(1))) == "a^3"
    assert c.name(semigroups.power(c, a, OmegaPlus(-1))) == "a^3"
    assert c.name(semigroups.power(c, a, Finite(10))) == "a^4"
    assert c.name(semigroups.power(c, a, Finite(2))) == "a^2"
    assert c.name(semigroups.power(c, a, Finite(10**30))) == "a^4"


def test_period_lcm_is_cached(catalog, semigroups):
    s3 = catalog.resolve("S3")
    assert "period_lcm" not in vars(s3)
    g = s3.element(s3.name(1))
    assert semigroups.power(s3, g, Finite(6 * 10**20 + 1)) == g
    assert vars(s3)["period_lcm"] == 6
    assert catalog.resolve("C(3,2)").period_lcm == 2


def test_omega_power_is_idempotent(catalog, semigroups):
    for expression in ("C(3,2)", "S4", "B2", "T", "C(2,5)"):
        s = catalog.resolve(expression)
        for element in range(s.order):
            e = semigroups.power(s, element, OMEGA)
            assert s.mul(e, e) == e


def test_evaluation(catalog, semigroups):
    b2 = catalog.resolve("B2")
    a, b = b2.element("a"), b2.element("b")
    assert b2.name(semigroups.eval_term(b2, parse_term("xy"), {"x": a, "y": b})) == "ab"
    assert b2.name(semigroups.eval_term(b2, parse_term("(xy)^w x"), {"x": a, "y": b})) == "a"
    with pytest.raises(UnassignedLetter):
        semigroups.eval_term(b2, parse_term("xy"), {"x": a})
    with pytest.raises(MissingIdentity):
        semigroups.eval_term(b2, Unit(), {})
    with pytest.raises(MissingIdentity):
        semigroups.eval_term(b2, parse_term("x^0"), {"x": a})


def test_satisfies_returns_least_witness(catalog, semigroups):
    right_zero = catalog.resolve("B(1,2)")
    holds, witness = semigroups.satisfies(
        right_zero, parse_identity("xy = y", Signature.SEMIGROUP)
    )
    assert holds and witness is None
    holds, witness = semigroups.satisfies(
        right_zero, parse_identity("xy = x", Signature.SEMIGROUP)
    )
    assert not holds
    assert witness == {"x": 0, "y": 1}
    assert render_assignment(right_zero, witness) == "x=(1,1) y=(1,2)"


def test_groups_and_semilattices(catalog, semigroups):
    omega_unit = parse_identity("x^w = 1")
    assert semigroups.satisfies(catalog.resolve("S3"), omega_unit) == (True, None)
    sl2 = catalog.resolve("Sl2")
    holds, witness = semigroups.satisfies(sl2, omega_unit)
    assert not holds
    assert render_assignment(sl2, witness) == "x=0"
    assert semigroups.satisfies_all(
        sl2, [parse_identity("x^2 = x"), parse_identity("xy = yx")]
    )


def test_threaded_check_matches_sequential(catalog):
    s4 = catalog.resolve("S4")
    identity = parse_identity("xyzt = tzyx")
    sequential = SemigroupService(thread_works=1).satisfies(s4, identity)
    threaded = SemigroupService(thread_works=4).satisfies(s4, identity)
    assert not sequential[0]
    assert threaded == sequential


@pytest.mark.parametrize(
    ("expression", "direction"),
    [("B(1,2)^1", Direction.RIGHT), ("B(2,1)^1", Direction.LEFT)],
)
@pytest.mark.parametrize("count", [300, pytest.param(10_000, marks=pytest.mark.slow)])
def test_bands_with_identity_see_occurrence_order(
    catalog, semigroups, expression, direction, count
):
    band = catalog.resolve(expression)
    for identity in TermGenerator(20190513, max_depth=2).identities(count):
        same = first_occurrence_order(identity.lhs, direction) == first_occurrence_order(
            identity.rhs, direction
        )
        assert semigroups.satisfies(band, identity)[0] is same, str(identity)


EXPONENTS = [Finite(1), Finite(2), Finite(3), *(OmegaPlus(z) for z in range(-2, 3))]


def test_power_maps_are_coherent(catalog, semigroups):
    assert exp_add(OMEGA, OMEGA) == OMEGA
    assert exp_mul(OmegaPlus(-1), OmegaPlus(-1)) == OmegaPlus(1)
    for s in catalog.catalog_pool() + catalog.group_pool():
        for a in range(s.order):
            for e in EXPONENTS:
                ae = semigroups.power(s, a, e)
                for f in EXPONENTS:
                    af = semigroups.power(s, a, f)
                    assert s.mul(ae, af) == semigroups.power(s, a, exp_add(e, f))
                    assert semigroups.power(s, ae, f) == semigroups.power(
                        s, a, exp_mul(e, f)
                    )


def test_commutative_pool_adds_distinct_products(catalog):
    pool = catalog.commutative_pool()
    assert all(s.label.endswith("^1") for s in pool[:15])
    assert len(pool) > 15 and all("*" in s.label for s in pool[15:])
    assert len({(s.order, s.table.tobytes()) for s in pool}) == len(pool)
    assert all(s.is_commutative() and s.identity is not None for s in pool)


def test_catalog_pool_forces_identity_on_monoids(catalog):
    labels = [s.label for s in catalog.catalog_pool()]
    assert "S3" in labels and "S3^1" in labels
    assert "C2^1" in labels and labels.count("B2^1") == 1
