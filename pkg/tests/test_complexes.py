from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from parcalc.complexes import (
    Complex,
    ComplexError,
    GradedCohomology,
    TensorPower,
    cohomology,
    direct_sum,
    dual,
    shift,
    sym_power_fast,
    sym_power_oracle,
    tensor,
    two_term,
    unit_complex,
)
from parcalc.laurent import FgModule, FieldRing, LaurentRing, scale
from parcalc.scalars import make_field
from parcalc.spectral import e_cyc_shifted, e_triv, universal_complex

from conftest import lin, poly
from helpers import random_complex


@pytest.fixture
def R():
    return LaurentRing(make_field(3))


@pytest.fixture
def K():
    return FieldRing(make_field(3))


def tors(*fs):
    return FgModule.make(0, fs)


# -- construction --------------------------------------------------------------

def test_d_squared_validated(K):
    one = K.one()
    with pytest.raises(ComplexError):
        Complex(K, {0: 1, 1: 1, 2: 1}, {0: [[one]], 1: [[one]]})


def test_shape_validated(K):
    with pytest.raises(ComplexError):
        Complex(K, {0: 1, 1: 2}, {0: [[K.one()]]})


# -- cohomology ----------------------------------------------------------------

def test_cohomology_t_minus_one(R):
    H = cohomology(two_term(R, lin(R.ctx, 1), 0))
    assert H.groups == {1: tors(lin(R.ctx, 1))}


def test_cohomology_zero_differential(K):
    H = cohomology(two_term(K, 0, 0))
    assert H.groups == {0: 1, 1: 1}


def test_cohomology_coprime_pair(R):
    ctx = R.ctx
    X = Complex(R, {0: 1, 1: 2}, {0: [[lin(ctx, 1)], [lin(ctx, 2)]]})
    assert cohomology(X).groups == {1: FgModule(1, ())}


def test_universal_complex_cohomology():
    ctx = make_field(3)
    X = universal_complex(ctx)
    assert X.terms == {0: 1, 1: 2, 2: 1}
    H = cohomology(X)
    assert H.groups == {1: tors(lin(ctx, 1)), 2: tors(lin(ctx, Fraction(1, 3)))}


def test_universal_complex_nontrivial_is_zero():
    assert universal_complex(make_field(3), "nontrivial").terms == {}


# -- shift ---------------------------------------------------------------------

def test_shift_relabels(R):
    X = shift(two_term(R, lin(R.ctx, 1), 0), -1)
    assert X.degrees() == [1, 2]
    assert X.d(1) == [[-lin(R.ctx, 1)]]


def test_shift_zero_is_identity(R):
    X = universal_complex(R.ctx)
    assert shift(X, 0) == X


@pytest.mark.parametrize("base", ["K", "R"])
def test_shift_composes(base):
    ctx = make_field(5)
    ring = FieldRing(ctx) if base == "K" else LaurentRing(ctx)
    rng = random.Random(1)
    for _ in range(20):
        X = random_complex(ring, rng)
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        assert shift(shift(X, a), b) == shift(X, a + b)


# -- dual ----------------------------------------------------------------------

def test_dual_two_term(R):
    f = lin(R.ctx, 1)
    D = dual(two_term(R, f, 0))
    assert D.degrees() == [-1, 0]
    assert D.d(-1) in ([[f]], [[-f]])


def test_dual_unit(K):
    assert dual(unit_complex(K)) == unit_complex(K)


@pytest.mark.parametrize("base", ["K", "R"])
def test_dual_dual_isomorphic(base):
    """dual(dual(X)) is X with negated differentials; (-1)^i is a chain isomorphism."""
    ctx = make_field(3)
    ring = FieldRing(ctx) if base == "K" else LaurentRing(ctx)
    rng = random.Random(2)
    for _ in range(20):
        X = random_complex(ring, rng)
        DD = dual(dual(X))
        assert DD.terms == X.terms
        for i in X.degrees():
            # phi^{i+1} d_DD^i = d_X^i phi^i with phi^i = (-1)^i
            sign = 1 if i % 2 == 0 else -1
            lhs = scale(DD.d(i), -sign)
            rhs = scale(X.d(i), sign)
            assert lhs == rhs
        assert cohomology(DD) == cohomology(X)


# -- tensor --------------------------------------------------------------------

def test_tensor_unit(R):
    X = universal_complex(R.ctx)
    assert tensor(X, unit_complex(R)) == X


def test_tensor_odd_lines(K):
    X = tensor(unit_complex(K, 1), unit_complex(K, 1))
    assert X.terms == {2: 1}


def test_tensor_kunneth_tor(R):
    E = e_triv(R.ctx)
    H = cohomology(tensor(E, E))
    t = tors(lin(R.ctx, 1))
    assert H.groups == {1: t, 2: t}


def test_euler_multiplicative(K):
    rng = random.Random(4)
    for _ in range(20):
        X, Y = random_complex(K, rng), random_complex(K, rng)
        assert tensor(X, Y).euler_char() == X.euler_char() * Y.euler_char()


# -- symmetric powers ------------------------------------------------------------

def test_sym_fast_e_triv():
    ctx = make_field(3)
    E = e_triv(ctx)
    S = sym_power_fast(E, 3)
    assert S.degrees() == [0, 1] and S.d(0) == [[lin(ctx, 1)]]
    assert cohomology(S).groups == {1: tors(lin(ctx, 1))}


def test_sym_fast_e_cyc():
    ctx = make_field(3)
    S = sym_power_fast(e_cyc_shifted(ctx), 2)
    assert S.degrees() == [3, 4]
    assert S.d(3) == [[poly(ctx, (1, 3), (0, -1))]]
    assert cohomology(S).groups == {4: tors(lin(ctx, Fraction(1, 3)))}


def test_sym_fast_n1_is_identity():
    ctx = make_field(2)
    for E in (e_triv(ctx), e_cyc_shifted(ctx)):
        assert sym_power_fast(E, 1) == E


def test_sym_fast_rejects_shape():
    ctx = make_field(2)
    with pytest.raises(ComplexError):
        sym_power_fast(universal_complex(ctx), 2)


def test_oracle_e_triv_n2():
    ctx = make_field(3)
    E = e_triv(ctx)
    assert cohomology(sym_power_oracle(E, 2)) == cohomology(sym_power_fast(E, 2))


def test_oracle_even_plus_odd_line(K):
    X = direct_sum(unit_complex(K, 0), unit_complex(K, 1))
    assert cohomology(sym_power_oracle(X, 2)).groups == {0: 1, 1: 1}


def test_oracle_n1(R):
    X = universal_complex(R.ctx)
    assert sym_power_oracle(X, 1) == X


def test_oracle_size_limit(K):
    X = Complex(K, {0: 11})
    with pytest.raises(ComplexError):
        sym_power_oracle(X, 4)


@pytest.mark.parametrize("which", ["triv", "cyc"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_matches_fast_over_ring(which, n):
    ctx = make_field(3)
    E = e_triv(ctx) if which == "triv" else e_cyc_shifted(ctx)
    assert cohomology(sym_power_oracle(E, n)) == cohomology(sym_power_fast(E, n))


@pytest.mark.parametrize("c", [0, 1, 2, Fraction(1, 3)])
@pytest.mark.parametrize("a", [0, 1])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_matches_fast_over_field(c, a, n):
    """Fibres of E_triv / E_cyc[-1] at points T: the differential becomes a scalar."""
    K = FieldRing(make_field(3))
    E = two_term(K, c, a)
    assert cohomology(sym_power_oracle(E, n)) == cohomology(sym_power_fast(E, n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_action_commutes_with_d(n):
    ctx = make_field(3)
    for E in (e_triv(ctx), e_cyc_shifted(ctx)):
        assert TensorPower(E, n).check_action_commutes()


def test_action_commutes_universal():
    ctx = make_field(2)
    assert TensorPower(universal_complex(ctx), 3).check_action_commutes()


def test_symmetrizer_idempotent():
    K = FieldRing(make_field(3))
    X = direct_sum(two_term(K, 2, 0), unit_complex(K, 1))
    tp = TensorPower(X, 3)
    rng = random.Random(6)
    basis = list(tp.basis())
    for _ in range(20):
        v = {t: Fraction(rng.randint(-3, 3)) for t in rng.sample(basis, 4)}
        once = tp.symmetrize(v)
        assert tp.symmetrize(once) == once


def test_koszul_action_is_a_group_action():
    K = FieldRing(make_field(3))
    X = direct_sum(unit_complex(K, 0), direct_sum(unit_complex(K, 1), unit_complex(K, 1)))
    tp = TensorPower(X, 3)
    perms = list(permutations(range(3)))
    for tup in tp.basis():
        v = {tup: Fraction(1)}
        for s in perms:
            for r in perms:
                comp = tuple(s[r[k]] for k in range(3))
                assert tp.act(s, tp.act(r, v)) == tp.act(comp, v)


def test_oracle_outputs_satisfy_d_squared():
    ctx = make_field(2)
    S = sym_power_oracle(universal_complex(ctx), 3)
    S.check_d_squared()
    assert isinstance(cohomology(S), GradedCohomology)
