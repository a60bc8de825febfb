import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dsrgtools.cayley import cayley_coset_graph, cayley_graph
from dsrgtools.constructions import nested_family, semidirect_family
from dsrgtools.data.synth import random_pairs
from dsrgtools.errors import GroupMismatchError, IdentityInSError, LoopError, NotSubgroupError
from dsrgtools.graphcore import count_paths2, is_dsrg, verify_dsrg
from dsrgtools.groupring import (
    cayley_criterion,
    coset_criterion,
    element_sum,
    gr_add,
    gr_mul,
    group_sum,
    identity_element,
    nested_square_closed_form,
    subset_sum,
    units_square_identity,
    zero,
)
from dsrgtools.groups import cyclic, dihedral, is_subgroup, nested_semidirect, product_set, semidirect_cyclic, SemidirectSpec
from dsrgtools.paramlab import ParamTuple


def test_ring_arithmetic():
    G = cyclic(4)
    u = element_sum(G, [1, 1, 2])
    assert u.coefficient(1) == 2
    assert u * identity_element(G) == u
    assert u + zero(G) == u
    assert (u - u) == zero(G)
    assert subset_sum(G.subset([1])) * subset_sum(G.subset([3])) == identity_element(G)
    assert group_sum(G) * group_sum(G) == 4 * group_sum(G)
    assert str(zero(G)) == "0"


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(0, 7), max_size=10),
    st.lists(st.integers(0, 7), max_size=10),
    st.lists(st.integers(0, 7), max_size=10),
)
def test_ring_laws(a, b, c):
    G = dihedral(4)
    u, v, w = (element_sum(G, members) for members in (a, b, c))
    assert gr_mul(gr_mul(u, v), w) == gr_mul(u, gr_mul(v, w))
    assert u * (v + w) == u * v + u * w
    assert (u + v) * w == u * w + v * w


def test_group_mismatch():
    with pytest.raises(GroupMismatchError):
        gr_add(zero(cyclic(4)), zero(cyclic(4)))


@pytest.mark.parametrize("p,l", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 2)])
def test_units_square_identity(p, l):
    lhs, rhs = units_square_identity(p, l)
    assert lhs == rhs, f"{lhs} != {rhs}"


def test_cayley_criterion_smallest():
    C = semidirect_family(3, 2, [1]).cayley
    assert cayley_criterion(C.group, C.connection) == ParamTuple(6, 2, 1, 0, 1)
    with pytest.raises(IdentityInSError):
        cayley_criterion(C.group, C.group.subset([C.group.identity]))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_cayley_criterion_matches_matrix_check(seed):
    ((G, S),) = random_pairs(1, max_order=16, seed=seed)
    matrix = verify_dsrg(cayley_graph(G, S).digraph)
    group = cayley_criterion(G, S)
    assert is_dsrg(matrix) == is_dsrg(group)
    if is_dsrg(matrix):
        assert matrix == group
    else:
        assert matrix.condition == group.condition


@pytest.mark.parametrize("group", [semidirect_cyclic(SemidirectSpec(3, 2, 2)), dihedral(4)])
def test_coset_criterion_matches_coset_graph(group):
    G = group
    H = G.subset([G.identity, G.pair(0, 1)])
    others = [g for g in G.elements() if g != G.identity]
    checked = 0
    for size in range(1, len(others) + 1):
        for members in itertools.combinations(others, size):
            S = G.subset(members)
            result = coset_criterion(G, H, S)
            if not result and result.condition == "loop":
                with pytest.raises(LoopError):
                    cayley_coset_graph(G, H, S)
                continue
            if not result:
                assert result.condition != "divisibility", f"S = {S}"
            direct = verify_dsrg(cayley_coset_graph(G, H, S).digraph)
            assert is_dsrg(direct) == is_dsrg(result), f"S = {S}"
            if is_dsrg(direct):
                assert direct == result, f"S = {S}: {direct} vs {result}"
            checked += 1
    assert checked > 0


def _subgroups(G):
    others = [g for g in G.elements() if g != G.identity]
    for size in range(len(others) + 1):
        for members in itertools.combinations(others, size):
            H = G.subset((G.identity,) + members)
            if is_subgroup(G, H):
                yield H


@pytest.mark.parametrize("group", [semidirect_cyclic(SemidirectSpec(3, 2, 2)), dihedral(4)])
def test_coset_path_counts_match_square(group):
    G = group
    subgroups = list(_subgroups(G))
    assert len(subgroups) == (6 if G.order == 6 else 10)
    for H in subgroups:
        for s in G.elements():
            if s in H:
                continue
            graph = cayley_coset_graph(G, H, G.subset([s]))
            hsh = subset_sum(product_set(G, H, [s], H))
            square = hsh * hsh
            assert not (square.coeffs % len(H)).any()
            coeffs = square.coeffs // len(H)
            for i, xs in enumerate(graph.cosets):
                for j, ys in enumerate(graph.cosets):
                    g = G.mul(G.inv(xs[0]), ys[0])
                    assert count_paths2(graph.digraph, i, j) == coeffs[g], f"H={H} s={s} cosets {i},{j}"


def test_coset_criterion_needs_subgroup():
    G = dihedral(4)
    with pytest.raises(NotSubgroupError):
        coset_criterion(G, G.subset([G.pair(1, 0)]), G.subset([G.pair(0, 1)]))


def test_trivial_subgroup_gives_cayley_graph():
    C = semidirect_family(3, 2, [1]).cayley
    G = C.group
    H = G.subset([G.identity])
    assert coset_criterion(G, H, C.connection) == cayley_criterion(G, C.connection)
    assert cayley_coset_graph(G, H, C.connection).digraph.same_arcs(C.digraph)


def test_nested_closed_form():
    p, n, s = 3, 2, 2
    G = nested_semidirect(p, n, s)
    exponents = [1, 2]
    for h_size in (1, 2):
        for H in itertools.combinations(exponents, h_size):
            for t_size in (1, 2):
                for T in itertools.combinations(range(n), t_size):
                    members = [G.triple(l, i, u) for l in H for i in T for u in range(p)]
                    S = subset_sum(G.subset(members))
                    assert S * S == nested_square_closed_form(G, p, s, H, T), f"H={H} T={T}"


def test_nested_family_by_criterion():
    C = nested_family(3, 2).cayley
    assert cayley_criterion(C.group, C.connection) == ParamTuple(18, 12, 10, 7, 10)
