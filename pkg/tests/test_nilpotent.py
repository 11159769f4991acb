import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adelic_chars.nilpotent import (
    Ad_of_group,
    AlgebraMismatch,
    LieAlgebra,
    NotNilpotent,
    ad_matrix,
    ascending_central_series,
    bch,
    bracket,
    dynkin_terms,
    exp_nilpotent,
    is_derivation,
    validate,
)
from adelic_chars.ratlinalg import RatMatrix, Subspace
from adelic_chars.sampling import random_vector


def vec(alg, rng):
    return alg.vector(random_vector(rng, alg.dim, 4, 3))


def mat_exp(m):
    out, term, k = RatMatrix.identity(m.rows), RatMatrix.identity(m.rows), 1
    while True:
        term = (term @ m).scale(Fraction(1, k))
        if term.is_zero():
            return out
        out, k = out + term, k + 1


def as_matrix(x, mats):
    out = RatMatrix.zeros(mats[0].rows)
    for c, m in zip(x.coords, mats):
        out = out + m.scale(c)
    return out


# examples

def test_validate_examples(h3):
    assert validate(LieAlgebra.abelian(3)) == [] and LieAlgebra.abelian(3).nil_class == 1
    assert validate(h3) == [] and h3.nil_class == 2
    c = [Fraction(0)] * 27
    c[(0 * 3 + 1) * 3 + 2] = Fraction(1)    # c[0][1][2] = 1 but c[1][0][2] = 0
    problems = validate(LieAlgebra(3, tuple(c)))
    assert problems == ["antisymmetry violated at (0,1,2)"]


def test_validate_jacobi_and_nilpotency():
    # [e0,e1] = e2, [e2,e3] = e0 breaks Jacobi on (e0,e1,e3) and (e1,e2,e3)
    bad = LieAlgebra.from_triples(4, [(0, 1, 2, 1), (2, 3, 0, 1)])
    assert validate(bad) == ["jacobi identity violated at (0,1,3)", "jacobi identity violated at (1,2,3)"]
    # [e0, e1] = e1 is a Lie algebra, but not nilpotent
    solv = LieAlgebra.from_triples(2, [(0, 1, 1, 1)])
    assert validate(solv) == ["algebra is not nilpotent"]
    with pytest.raises(NotNilpotent):
        solv.nil_class


def test_bracket_examples(h3):
    x, y, z = (h3.basis_vector(i) for i in range(3))
    assert bracket(x, y) == z
    assert bracket(x, x).is_zero()
    assert bracket(z, x).is_zero()


def test_ascending_central_series(h3, upper4):
    assert ascending_central_series(h3) == [Subspace.span([[0, 0, 1]], 3), Subspace.full(3)]
    assert ascending_central_series(LieAlgebra.abelian(2)) == [Subspace.full(2)]
    assert [s.dim for s in ascending_central_series(upper4[0])] == [1, 3, 6]


def test_bch_two_step(h3):
    rng = random.Random(1)
    for _ in range(50):
        x, y = vec(h3, rng), vec(h3, rng)
        assert bch(x, y) == x + y + bracket(x, y) * Fraction(1, 2)
        assert bch(x, -x).is_zero() and bch(x, h3.zero()) == x


def test_dynkin_degree_three_closed_form(upper4):
    alg = upper4[0]
    assert max(len(w) for _, w in dynkin_terms(3)) == 3
    rng = random.Random(2)
    for _ in range(50):
        x, y = vec(alg, rng), vec(alg, rng)
        closed = (x + y + bracket(x, y) * Fraction(1, 2)
                  + bracket(x, bracket(x, y)) * Fraction(1, 12)
                  + bracket(y, bracket(y, x)) * Fraction(1, 12))
        assert bch(x, y) == closed


def test_bch_against_matrix_exponentials(upper4):
    alg, mats = upper4
    rng = random.Random(3)
    for _ in range(40):
        x, y = vec(alg, rng), vec(alg, rng)
        lhs = mat_exp(as_matrix(x, mats)) @ mat_exp(as_matrix(y, mats))
        assert lhs == mat_exp(as_matrix(bch(x, y), mats))


def test_dynkin_degree_four_against_matrices():
    from adelic_chars.catalog import strictly_upper_triangular
    alg, mats = strictly_upper_triangular(5)     # class 4
    assert alg.nil_class == 4
    rng = random.Random(4)
    for _ in range(15):
        x, y = vec(alg, rng), vec(alg, rng)
        assert mat_exp(as_matrix(x, mats)) @ mat_exp(as_matrix(y, mats)) == mat_exp(as_matrix(bch(x, y), mats))


def test_ad_examples(h3):
    x, y, z = (h3.basis_vector(i) for i in range(3))
    assert ad_matrix(x) == RatMatrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    assert ad_matrix(z).is_zero()
    assert Ad_of_group(h3.zero()) == RatMatrix.identity(3)
    assert Ad_of_group(x).apply(y.coords) == (0, 1, 1)


def test_exp_examples():
    assert exp_nilpotent(RatMatrix.zeros(3), 5) == RatMatrix.identity(3)
    e12 = RatMatrix.elementary(2, 0, 1)
    assert exp_nilpotent(e12, 1) == RatMatrix.from_rows([[1, 1], [0, 1]])
    n = RatMatrix.from_rows([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    s, t = Fraction(2, 3), Fraction(-5, 7)
    assert exp_nilpotent(n, s) @ exp_nilpotent(n, t) == exp_nilpotent(n, s + t)
    with pytest.raises(NotNilpotent):
        exp_nilpotent(RatMatrix.identity(2))


def test_is_derivation_examples(h3):
    assert is_derivation(RatMatrix.from_rows([[1, 2], [3, 4]]), LieAlgebra.abelian(2))
    assert is_derivation(RatMatrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), h3)
    assert not is_derivation(RatMatrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), h3)


def test_mismatched_algebras(h3):
    with pytest.raises(AlgebraMismatch):
        bch(h3.zero(), LieAlgebra.abelian(3).zero())


# properties

ALGS = ["heisenberg-1", "heisenberg-2", "free-3", "upper4"]


@pytest.mark.parametrize("name", ALGS)
def test_bch_properties(name, fixtures, upper4):
    alg = upper4[0] if name == "upper4" else fixtures[name].system.algebra
    rng = random.Random(name)
    for _ in range(200):
        x, y, z = vec(alg, rng), vec(alg, rng), vec(alg, rng)
        assert bch(bch(x, y), z) == bch(x, bch(y, z))
        assert Ad_of_group(bch(x, y)) == Ad_of_group(x) @ Ad_of_group(y)
        ad = Ad_of_group(x)
        assert ad.apply(bracket(y, z).coords) == alg.bracket_coords(ad.apply(y.coords), ad.apply(z.coords))
        assert (ad_matrix(x) ** alg.nil_class).is_zero()


@pytest.mark.parametrize("name", ["heisenberg-2", "free-3"])
def test_exp_of_derivation_is_automorphism(name, fixtures):
    system = fixtures[name].system
    alg = system.algebra
    rng = random.Random(name)
    for n in system.one_param_gens:
        assert is_derivation(n, alg)
        g = exp_nilpotent(n, Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        for _ in range(10):
            y, z = vec(alg, rng), vec(alg, rng)
            assert g.apply(bracket(y, z).coords) == alg.bracket_coords(g.apply(y.coords), g.apply(z.coords))


def test_central_series_terms_are_ideals(upper4):
    alg = upper4[0]
    series = ascending_central_series(alg)
    prev = Subspace.zero(alg.dim)
    for term in series:
        assert prev <= term and prev != term
        for v in term.vectors():
            for i in range(alg.dim):
                assert alg.bracket_coords(alg.basis_vector(i).coords, v) in prev
        prev = term


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=12, max_size=12))
def test_bch_inverse_hypothesis(coords):
    from adelic_chars.catalog import strictly_upper_triangular
    alg = strictly_upper_triangular(4)[0]
    x, y = alg.vector(coords[:6]), alg.vector(coords[6:])
    assert bch(x, -x).is_zero()
    assert bch(bch(x, y), -y) == x
