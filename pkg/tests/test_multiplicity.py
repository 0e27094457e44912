from __future__ import annotations

import pytest

from parcalc.multiplicity import (
    FiniteGroup,
    GroupError,
    builtin_group,
    character_table,
    cyclic_group,
    double_coset_count,
    double_cosets,
    fixed_dim,
    higher_ext_vanishing_report,
    mackey_check,
    mackey_sides,
    prasad_sum,
)


@pytest.fixture(scope="module")
def S3():
    return builtin_group("S3")


@pytest.fixture(scope="module")
def ct3(S3):
    return character_table(S3)


def el(G, label):
    return G.labels.index(label)


def sub(G, *gens):
    return G.generate([el(G, g) for g in gens])


def E(G):
    return frozenset([G.identity])


def irr(ct, degree, value_at):
    """Index of the irreducible with the given degree and value at one element."""
    g, v = value_at
    found = [r for r in range(len(ct)) if ct.degree(r) == degree and ct.value(r, g) == v]
    assert len(found) == 1
    return found[0]


T12 = (1, 0, 2)    # (12)
C123 = (1, 2, 0)   # (123)


# -- double cosets -----------------------------------------------------------------

def test_z2_trivial_subgroups():
    G = cyclic_group(2)
    assert double_coset_count(G, E(G), E(G)) == 2


def test_s3_trivial_by_transposition(S3):
    assert double_coset_count(S3, E(S3), sub(S3, T12)) == 3


def test_s3_transposition_both_sides(S3):
    H = sub(S3, T12)
    assert double_coset_count(S3, H, H) == 2


def test_s3_three_cycle(S3):
    assert double_coset_count(S3, E(S3), sub(S3, C123)) == 2


def test_rejects_non_subgroup(S3):
    with pytest.raises(GroupError):
        double_coset_count(S3, {el(S3, T12)}, E(S3))


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8"])
def test_double_cosets_partition(name):
    G = builtin_group(name)
    subs = G.subgroups()
    for A in subs:
        for B in subs:
            parts = double_cosets(G, A, B)
            assert sum(len(p) for p in parts) == G.order
            assert frozenset().union(*parts) == frozenset(G.elements())


# -- prasad sum ------------------------------------------------------------------------

def test_prasad_single_whole_group(S3):
    assert prasad_sum(S3, E(S3), [frozenset(S3.elements())]) == 1


def test_prasad_empty(S3):
    assert prasad_sum(S3, E(S3), []) == 0


def test_prasad_is_sum_of_counts(S3):
    # #({e}\S3/<(12)>) = 3 and #({e}\S3/<(123)>) = 2
    Hs = [sub(S3, T12), sub(S3, C123)]
    assert prasad_sum(S3, E(S3), Hs) == 3 + 2


def test_prasad_central_flag(S3):
    with pytest.raises(GroupError):
        prasad_sum(S3, sub(S3, T12), [], require_central=True)
    assert prasad_sum(S3, E(S3), [], require_central=True) == 0


# -- character tables ------------------------------------------------------------------

@pytest.mark.parametrize("name,degrees", [
    ("S3", [1, 1, 2]), ("S4", [1, 1, 2, 3, 3]), ("D4", [1, 1, 1, 1, 2]),
    ("Q8", [1, 1, 1, 1, 2]), ("Z2", [1, 1]),
])
def test_character_degrees(name, degrees):
    ct = character_table(builtin_group(name))
    assert sorted(ct.degree(r) for r in range(len(ct))) == degrees
    assert ct.check_orthogonality()


def test_rejects_irrational_table():
    with pytest.raises(GroupError):
        character_table(cyclic_group(3))


def test_rejects_bad_table():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1]])


# -- fixed dims --------------------------------------------------------------------------

def test_fixed_dim_trivial(S3, ct3):
    triv = irr(ct3, 1, (el(S3, T12), 1))
    for H in S3.subgroups():
        assert fixed_dim(ct3, triv, H) == 1


def test_fixed_dim_standard(S3, ct3):
    std = irr(ct3, 2, (el(S3, T12), 0))
    assert fixed_dim(ct3, std, sub(S3, T12)) == 1


def test_fixed_dim_sign(S3, ct3):
    sgn = irr(ct3, 1, (el(S3, T12), -1))
    assert fixed_dim(ct3, sgn, sub(S3, T12)) == 0


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8"])
def test_fixed_dim_identity_and_monotone(name):
    G = builtin_group(name)
    ct = character_table(G)
    subs = G.subgroups()
    for r in range(len(ct)):
        assert fixed_dim(ct, r, E(G)) == ct.degree(r)
        for A in subs:
            for B in subs:
                if A <= B:
                    assert fixed_dim(ct, r, B) <= fixed_dim(ct, r, A)


# -- Mackey ------------------------------------------------------------------------------

def test_mackey_s3_transposition(S3, ct3):
    H = sub(S3, T12)
    assert mackey_sides(S3, H, H, ct3) == (2, 2)


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8"])
def test_mackey_whole_group(name):
    G = builtin_group(name)
    whole = frozenset(G.elements())
    assert mackey_sides(G, whole, whole) == (1, 1)


def test_mackey_d4_center_reflection():
    G = builtin_group("D4")
    Z = G.center()
    refl = next(H for H in G.subgroups() if len(H) == 2 and not H <= Z)
    assert mackey_check(G, Z, refl)


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8"])
def test_mackey_exhaustive(name):
    G = builtin_group(name)
    ct = character_table(G)
    subs = G.subgroups()
    for A in subs:
        for B in subs:
            assert mackey_check(G, A, B, ct)


def test_subgroup_lattice_sizes():
    # S3: 6 subgroups; S4: 30; D4: 10; Q8: 6
    counts = {n: len(builtin_group(n).subgroups()) for n in ("S3", "S4", "D4", "Q8")}
    assert counts == {"S3": 6, "S4": 30, "D4": 10, "Q8": 6}


# -- Ext report --------------------------------------------------------------------------

def test_ext_report_trivial(S3, ct3):
    triv = irr(ct3, 1, (el(S3, T12), 1))
    rep = higher_ext_vanishing_report(ct3, triv, [frozenset(S3.elements())])
    assert rep.multiplicity == 1 and rep.higher_ext_vanish


def test_ext_report_standard(S3, ct3):
    std = irr(ct3, 2, (el(S3, T12), 0))
    rep = higher_ext_vanishing_report(ct3, std, [sub(S3, T12), sub(S3, C123)])
    assert rep.multiplicity == 1


def test_ext_report_empty(S3, ct3):
    assert higher_ext_vanishing_report(ct3, 0, []).multiplicity == 0
