import numpy as np
import pytest

from app.domain.entities import CongruenceTriple, ReesMatrix
from app.domain.errors import NotACongruence, NotAGroup, SemigroupError


def rees_matrix(catalog, group, rows):
    g = catalog.resolve(group)
    sandwich = np.array([[g.element(v) for v in row.split()] for row in rows])
    return ReesMatrix(sandwich.shape[1], sandwich.shape[0], g, sandwich)


def test_build_rees(catalog, rees):
    matrix = rees_matrix(catalog, "C2", ["1 1", "1 g"])
    semigroup = rees.build_rees(matrix)
    assert semigroup.order == 8
    assert semigroup.label == "M(2,C2,2)"
    assert semigroup.name(0) == "(1,1,1)"
    assert not semigroup.is_group()
    # (i, g, l)(j, h, m) = (i, g p_{l,j} h, m)
    left = rees.element_index(matrix, 0, 0, 1)
    right = rees.element_index(matrix, 1, 0, 0)
    assert semigroup.name(semigroup.mul(left, right)) == "(1,g,1)"


def test_rees_needs_a_group(catalog, rees):
    matrix = ReesMatrix(1, 1, catalog.resolve("Sl2"), np.array([[0]]))
    with pytest.raises(NotAGroup):
        rees.build_rees(matrix)


def test_rees_over_the_trivial_group_is_a_rectangular_band(catalog, rees):
    semigroup = rees.build_rees(rees_matrix(catalog, "C1", ["1 1"]))
    assert np.array_equal(semigroup.table, catalog.resolve("B(2,1)").table)


def test_normalize(catalog, rees):
    matrix = rees_matrix(catalog, "C3", ["g g^2", "1 g"])
    assert not matrix.normalized
    normalized = rees.normalize(matrix)
    assert normalized.normalized
    assert normalized.sandwich.tolist() == [[0, 0], [0, 0]]
    assert rees.build_rees(normalized).order == rees.build_rees(matrix).order


def test_normal_subgroups(catalog, rees):
    assert len(rees.normal_subgroups(catalog.resolve("S3"))) == 3
    assert len(rees.normal_subgroups(catalog.resolve("C4"))) == 3
    assert len(rees.normal_subgroups(catalog.resolve("S4"))) == 4
    assert len(rees.normal_subgroups(catalog.resolve("Q8"))) == 6


@pytest.mark.parametrize(
    ("group", "rows", "count"),
    [
        ("C2", ["1"], 2),
        ("C1", ["1 1"], 2),
        ("C1", ["1 1 1", "1 1 1"], 10),
        ("C2", ["1 1", "1 g"], 5),
        ("C2", ["1 1", "1 1"], 8),
    ],
)
def test_triples_match_congruences(catalog, rees, enumeration, group, rows, count):
    matrix = rees_matrix(catalog, group, rows)
    triples = rees.enumerate_triples(matrix)
    congruences = enumeration.enumerate_congruences(rees.build_rees(matrix))
    assert len(triples) == count == len(congruences)
    assert sorted(rees.congruence_from_triple(matrix, t) for t in triples) == congruences


def test_triple_round_trip(catalog, rees):
    matrix = rees_matrix(catalog, "C2", ["1 1", "1 g"])
    for triple in rees.enumerate_triples(matrix):
        congruence = rees.congruence_from_triple(matrix, triple)
        assert rees.triple_from_congruence(matrix, congruence) == triple


def test_invalid_triples(catalog, rees):
    matrix = rees_matrix(catalog, "C2", ["1 1", "1 g"])
    linked = CongruenceTriple(((0, 1),), ((0,), (1,)), frozenset({0}))
    assert not rees.triple_valid(matrix, linked)
    with pytest.raises(NotACongruence):
        rees.congruence_from_triple(matrix, linked)


def test_triples_need_a_normalized_matrix(catalog, rees):
    matrix = rees_matrix(catalog, "C3", ["g g^2", "1 g"])
    with pytest.raises(SemigroupError):
        rees.triple_from_congruence(matrix, ((0,),))


def test_sandwich_matrices(catalog, rees):
    matrices = rees.sandwich_matrices(catalog.resolve("C3"), 2, 3)
    assert len(matrices) == 3**2
    assert all(m.shape == (3, 2) for m in matrices)
    assert all((m[0, :] == 0).all() and (m[:, 0] == 0).all() for m in matrices)


@pytest.mark.parametrize(
    "group",
    ["C2", "C3", "C4", "C2*C2", pytest.param("S3", marks=pytest.mark.slow)],
)
def test_triples_are_in_bijection_with_congruences(catalog, rees, enumeration, group):
    g = catalog.resolve(group)
    for i_size, lambda_size in ((1, 1), (1, 2), (2, 1), (2, 2)):
        for sandwich in rees.sandwich_matrices(g, i_size, lambda_size):
            matrix = ReesMatrix(i_size, lambda_size, g, sandwich)
            semigroup = rees.build_rees(matrix)
            congruences = enumeration.enumerate_congruences(semigroup, max_order=24)
            triples = rees.enumerate_triples(matrix)
            induced = {rees.congruence_from_triple(matrix, t) for t in triples}
            assert induced == set(congruences)
            assert len(induced) == len(triples)
