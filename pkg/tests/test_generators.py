from app.domain.exponents import Finite
from app.domain.generators import TermGenerator
from app.domain.terms import exponents, is_constant, letters


def test_generation_is_seeded():
    assert TermGenerator(11).identities(20) == TermGenerator(11).identities(20)
    assert TermGenerator(11).identities(20) != TermGenerator(12).identities(20)


def test_generated_terms():
    generator = TermGenerator(3, alphabet="xy", max_finite=4, max_shift=2)
    for identity in generator.identities(50):
        for side in (identity.lhs, identity.rhs):
            assert is_constant(side)
            assert set(letters(side)) <= {"x", "y"}
            for e in exponents(side):
                assert e != Finite(0)
                if isinstance(e, Finite):
                    assert 1 <= e.n <= 4
                else:
                    assert -2 <= e.z <= 2
