import pytest

from app.domain.errors import UnknownVariety
from app.domain.varieties import VARIETIES, variety
from app.infrastructure.parsing.term_parser import parse_identity


def test_registry():
    assert {"A", "R", "L", "J", "DA", "LSl", "G", "CS", "CR", "Com"} <= set(VARIETIES)
    assert variety("J").basis("gamma") == ("(xy)^w x = (xy)^w", "y(xy)^w = (xy)^w")
    with pytest.raises(UnknownVariety):
        variety("Q")
    with pytest.raises(UnknownVariety):
        variety("A").basis("gamma")


def test_every_basis_parses(varieties):
    for name, v in VARIETIES.items():
        for basis in v.bases:
            assert varieties.basis(name, basis)


@pytest.mark.parametrize("name", ["J", "DA", "CS"])
def test_bases_agree_on_small_monoids(varieties, catalog, enumeration, name):
    pool = list(enumeration.enumerate_monoids(3)) + catalog.catalog_pool()
    for semigroup in pool:
        sigma = varieties.member(semigroup, name, "sigma").member
        gamma = varieties.member(semigroup, name, "gamma").member
        assert sigma == gamma, semigroup.label


@pytest.mark.parametrize(
    ("expression", "name", "expected"),
    [
        ("Sl2", "J", True),
        ("Sl2", "DA", True),
        ("B2^1", "DA", False),
        ("B(1,2)", "CS", True),
        ("B(1,2)^1", "CS", False),
        ("S3", "G", True),
        ("S3", "Com", False),
        ("C(2,2)", "CR", False),
        ("B(2,2)", "LSl", True),
        ("B(1,2)^1", "R", False),
        ("B(1,2)^1", "L", True),
    ],
)
def test_membership(varieties, catalog, expression, name, expected):
    assert varieties.member(catalog.resolve(expression), name).member is expected


def test_failed_identity_and_witness(varieties, catalog):
    membership = varieties.member(catalog.resolve("B2^1"), "DA")
    assert membership.failed == parse_identity("(xy)^w (yx)^w (xy)^w = (xy)^w")
    assert membership.witness == "x=a y=b"


def test_identity_free_semigroups_fail_monoid_identities(varieties, catalog):
    membership = varieties.member(catalog.resolve("B(1,2)"), "G")
    assert not membership.member
    assert membership.failed == parse_identity("x^w = 1")
    assert membership.witness == ""


def test_excluded_facts(varieties):
    table = varieties.excluded_facts()
    assert list(table.columns) == [
        "semigroup", "identity", "holds", "witness", "expected", "ok",
    ]  # fmt: skip
    assert not table["holds"].any()
    assert table["ok"].all()
