import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsrgtools.data.synth import action_multipliers
from dsrgtools.errors import (
    InvalidActionError,
    NotAutomorphismError,
    NotCoprimeError,
    NotSubgroupError,
)
from dsrgtools.groups import (
    FiniteGroup,
    SemidirectSpec,
    cyclic,
    dihedral,
    direct_product,
    find_power_automorphism,
    is_prime,
    is_subgroup,
    left_cosets,
    multiplicative_order,
    nested_semidirect,
    orbit_representatives,
    power_map,
    primitive_root,
    product_set,
    q_orbit_check,
    semidirect_cyclic,
    set_stabilizer,
    verify_automorphism,
)


@pytest.fixture
def s3():
    def _s3():
        return semidirect_cyclic(SemidirectSpec(3, 2, 2))

    return _s3


def test_number_theory():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 7) == 6
    assert primitive_root(7) == 3
    assert primitive_root(9) == 2
    assert primitive_root(8) is None
    with pytest.raises(NotCoprimeError):
        multiplicative_order(2, 4)


def test_table_checks():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 2]])
    G = FiniteGroup([[1, 0], [0, 1]])
    assert G.identity == 1, "identity need not be element 0"


def test_cyclic():
    G = cyclic(6, "a")
    assert G.order == 6 and G.is_abelian()
    assert G.power(1, 4) == 4
    assert G.power(1, -1) == 5
    assert G.element_order(2) == 3
    assert G.element_name(3) == "a^3"


def test_semidirect_relation(s3):
    G = s3()
    assert G.order == 6
    assert not G.is_abelian()
    a, x = G.pair(1, 0), G.pair(0, 1)
    conjugate = G.mul(G.mul(x, a), G.inv(x))
    assert conjugate == G.pair(2, 0), "x a x^-1 = a^k"
    assert G.coords(G.mul(a, x)) == (1, 1)


def test_invalid_actions():
    with pytest.raises(InvalidActionError):
        SemidirectSpec(5, 2, 2)
    with pytest.raises(InvalidActionError):
        SemidirectSpec(6, 2, 2)
    assert not SemidirectSpec(5, 4, 1).nontrivial
    assert SemidirectSpec(5, 4, 2).nontrivial


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.integers(min_value=1, max_value=4), st.data())
def test_semidirect_cyclic_relation(n, m, data):
    k = data.draw(st.sampled_from(action_multipliers(n, m)))
    G = semidirect_cyclic(SemidirectSpec(n, m, k))
    assert G.order == n * m
    a, x = G.pair(1, 0), G.pair(0, 1)
    assert G.element_order(x) == m
    assert G.mul(G.mul(x, a), G.inv(x)) == G.pair(k, 0)


def test_dihedral():
    G = dihedral(4)
    assert G.order == 8
    reflection = G.pair(0, 1)
    rotation = G.pair(1, 0)
    assert G.element_order(reflection) == 2
    assert G.element_order(rotation) == 4
    assert G.mul(G.mul(reflection, rotation), reflection) == G.inv(rotation)


def test_direct_product_is_abelian_for_abelian_factor():
    G = direct_product(cyclic(3), 2)
    assert G.order == 6
    assert G.is_abelian()


def test_nested_semidirect():
    G = nested_semidirect(3, 2, 2)
    assert G.order == 18
    a, y = G.triple(1, 0, 0), G.triple(0, 0, 1)
    x = G.triple(0, 1, 0)
    # y acts on the normal factor as conjugation by a
    assert G.mul(G.mul(y, x), G.inv(y)) == G.mul(G.mul(G.inv(a), x), a)
    with pytest.raises(InvalidActionError):
        nested_semidirect(4, 2, 3)


def test_automorphism_checks():
    G = cyclic(6)
    with pytest.raises(NotAutomorphismError):
        verify_automorphism(G, power_map(G, 2))
    assert np.array_equal(verify_automorphism(G, power_map(G, 5)), [0, 5, 4, 3, 2, 1])


def test_subgroups_and_cosets(s3):
    G = s3()
    H = G.subset([G.identity, G.pair(0, 1)])
    assert is_subgroup(G, H)
    assert not is_subgroup(G, G.subset([G.pair(0, 1)]))
    cosets = left_cosets(G, H)
    assert len(cosets) == 3
    assert sorted(g for coset in cosets for g in coset) == list(G.elements())
    with pytest.raises(NotSubgroupError):
        left_cosets(G, G.subset([G.identity, G.pair(1, 0)]))


def test_set_stabilizer(s3):
    G = s3()
    S = G.subset([G.pair(1, 0), G.pair(1, 1)])
    stab = set_stabilizer(G, S)
    assert len(stab) == 2
    assert is_subgroup(G, stab)
    assert set_stabilizer(G, G.subset([])).members == G.whole().members


def test_q_orbits():
    A = cyclic(7, "a")
    report = q_orbit_check(A, power_map(A, 2), 3)
    assert report.satisfied
    assert report.orbits == ((1, 2, 4), (3, 6, 5))
    assert orbit_representatives(report).members == frozenset({1, 3})
    assert not q_orbit_check(A, power_map(A, 2), 2).satisfied
    assert not q_orbit_check(A, power_map(A, 6), 3).satisfied


def test_find_power_automorphism():
    A = cyclic(7)
    assert np.array_equal(find_power_automorphism(A, 3), power_map(A, 2))
    assert find_power_automorphism(cyclic(8), 3) is None
    assert find_power_automorphism(dihedral(3), 2) is None


def test_product_set():
    G = cyclic(6)
    assert product_set(G, [1, 2], [0, 3]).members == frozenset({1, 2, 4, 5})
