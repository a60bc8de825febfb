import numpy as np
import pytest

from dsrgtools.cayley import (
    cayley_coset_graph,
    cayley_graph,
    is_automorphism,
    translation_automorphism,
    translations,
)
from dsrgtools.constructions import dihedral_family, semidirect_family
from dsrgtools.errors import IdentityInSError, LoopError
from dsrgtools.groups import cyclic, dihedral


@pytest.fixture
def constructions():
    def _constructions():
        return [semidirect_family(3, 2, [1]), semidirect_family(5, 4, [1, 4]), dihedral_family(6)]

    return _constructions


def test_arc_rule():
    G = cyclic(5)
    C = cayley_graph(G, G.subset([1, 2]))
    A = C.digraph.adjacency
    for x in range(5):
        assert sorted(np.nonzero(A[x])[0]) == [(x + 1) % 5, (x + 2) % 5]
    assert C.digraph.label(3) == "x^3"


def test_identity_rejected():
    G = cyclic(5)
    with pytest.raises(IdentityInSError):
        cayley_graph(G, G.subset([0, 1]))


def test_foreign_connection_set():
    with pytest.raises(ValueError):
        cayley_graph(cyclic(5), cyclic(5).subset([1]))


def test_translations_are_automorphisms(constructions):
    for construction in constructions():
        C = construction.cayley
        assert all(is_automorphism(C.digraph, perm) for perm in translations(C)), construction.recipe


def test_non_automorphism():
    G = cyclic(5)
    C = cayley_graph(G, G.subset([1]))
    assert not is_automorphism(C.digraph, [0, 2, 1, 3, 4])
    assert np.array_equal(translation_automorphism(C, 2), [2, 3, 4, 0, 1])


def test_coset_graph():
    G = dihedral(3)
    H = G.subset([G.identity, G.pair(0, 1)])
    S = G.subset([G.pair(1, 0)])
    graph = cayley_coset_graph(G, H, S)
    assert graph.digraph.order == 3
    assert len(graph.cosets) == 3
    # HSH covers the two other cosets, so the quotient is complete
    assert graph.digraph.arc_count() == 6
    assert graph.digraph.labels[0].endswith("H")


def test_coset_graph_loop():
    G = dihedral(3)
    H = G.subset([G.identity, G.pair(0, 1)])
    with pytest.raises(LoopError):
        cayley_coset_graph(G, H, G.subset([G.pair(0, 1)]))
