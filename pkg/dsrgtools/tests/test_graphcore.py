import numpy as np
import pytest

from dsrgtools.constructions import dihedral_family, half_dihedral_family, semidirect_family
from dsrgtools.errors import FormatError, IntegerOverflowError, PreconditionError
from dsrgtools.graphcore import (
    Digraph,
    NotDSRG,
    complement_graph,
    count_paths2,
    expand_t_lambda1,
    expand_t_mu,
    identity,
    is_dsrg,
    kronecker,
    matmul,
    ones,
    product_graph,
    verify_dsrg,
)
from dsrgtools.paramlab import Flag, ParamTuple


@pytest.fixture
def cycle():
    def _cycle(n):
        return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])

    return _cycle


@pytest.fixture
def smallest():
    return semidirect_family(3, 2, [1]).digraph


def test_digraph_rejects_loops_and_weights():
    with pytest.raises(FormatError):
        Digraph(identity(3))
    with pytest.raises(FormatError):
        Digraph(2 * (ones(3) - identity(3)))
    with pytest.raises(FormatError):
        Digraph(np.zeros((2, 3), dtype=np.int64))
    with pytest.raises(FormatError):
        Digraph.from_arcs(3, [(0, 3)])


def test_digraph_needs_a_vertex():
    with pytest.raises(FormatError):
        Digraph(np.zeros((0, 0), dtype=np.int64))
    with pytest.raises(FormatError, match="n=0"):
        Digraph.from_arcs(0, [])
    with pytest.raises(FormatError):
        Digraph.from_arcs(-4, [])


def test_adjacency_is_read_only(smallest):
    with pytest.raises(ValueError):
        smallest.adjacency[0, 1] = 0


def test_complete_graph_is_srg():
    result = verify_dsrg(Digraph(ones(3) - identity(3)))
    assert result == ParamTuple(3, 2, 2, 1, 2), "empty mu class reports mu = t"
    assert result.flag is Flag.SRG


def test_directed_triangle_is_tournament(cycle):
    result = verify_dsrg(cycle(3))
    assert result == ParamTuple(3, 1, 1, 0, 0)
    assert result.flag is Flag.TOURNAMENT


def test_directed_square_fails_mu(cycle):
    result = verify_dsrg(cycle(4))
    assert isinstance(result, NotDSRG)
    assert not result
    assert result.condition == "mu-class"
    assert result.witness == ("(0,2)", "(0,3)")
    assert str(result).startswith("NotDSRG: mu-class")


def test_irregular_graph_fails_regularity():
    result = verify_dsrg(Digraph.from_arcs(3, [(0, 1)]))
    assert not is_dsrg(result)
    assert result.condition == "regularity"
    assert result.witness == (1,)


def test_smallest_dsrg(smallest):
    assert verify_dsrg(smallest) == ParamTuple(6, 2, 1, 0, 1)
    A2 = matmul(smallest.adjacency, smallest.adjacency)
    for x in range(6):
        for y in range(6):
            assert count_paths2(smallest, x, y) == A2[x, y]


def test_complement_graph(smallest):
    assert verify_dsrg(complement_graph(smallest)) == ParamTuple(6, 3, 2, 1, 2)
    assert verify_dsrg(complement_graph(Digraph(ones(3) - identity(3)))) == ParamTuple(3, 0, 0, 0, 0)


def test_expand_t_mu(smallest):
    expanded = expand_t_mu(smallest, 3)
    assert expanded.order == 18
    assert verify_dsrg(expanded) == ParamTuple(18, 6, 3, 0, 3)
    assert expand_t_mu(smallest, 1) is smallest
    with pytest.raises(PreconditionError):
        expand_t_mu(smallest, 0)


def test_expand_t_mu_needs_t_equal_mu(cycle):
    with pytest.raises(PreconditionError):
        expand_t_mu(cycle(3), 2)
    with pytest.raises(PreconditionError):
        expand_t_mu(cycle(4), 2)


def test_expand_t_lambda1(smallest):
    assert verify_dsrg(expand_t_lambda1(smallest, 2)) == ParamTuple(12, 5, 2, 2, 3)
    assert verify_dsrg(expand_t_lambda1(smallest, 3)) == ParamTuple(18, 8, 3, 4, 5)


def test_product_graph(smallest):
    D = product_graph(smallest)
    assert D.order == 36
    assert verify_dsrg(D) == ParamTuple(36, 16, 8, 6, 8)
    assert D.label(7) == f"{smallest.label(1)}|{smallest.label(1)}"


def test_product_of_larger_base():
    D = product_graph(half_dihedral_family(5).digraph)
    assert verify_dsrg(D) == ParamTuple(100, 48, 24, 22, 24)


def test_product_needs_balanced_input():
    D = dihedral_family(4).digraph
    with pytest.raises(PreconditionError):
        product_graph(D)


def test_matmul_overflow_guard():
    big = np.array([[2**40]], dtype=np.int64)
    with pytest.raises(IntegerOverflowError):
        matmul(big, big)


def test_kronecker_blocks():
    blocks = kronecker(identity(2), ones(3))
    expected = np.zeros((6, 6), dtype=np.int64)
    expected[:3, :3] = 1
    expected[3:, 3:] = 1
    assert np.array_equal(blocks, expected), blocks
    assert np.array_equal(kronecker(ones(2), ones(3)), ones(6)), "J (x) J should be J"


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_kronecker_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, c = (rng.integers(0, 2, size=(2, 2)) for _ in range(2))
    b, d = (rng.integers(0, 2, size=(3, 3)) for _ in range(2))
    left = matmul(kronecker(a, b), kronecker(c, d))
    right = kronecker(matmul(a, c), matmul(b, d))
    assert np.array_equal(left, right), f"mixed product fails for seed {seed}"


def test_content_hash(smallest):
    same = Digraph(np.array(smallest.adjacency))
    assert same.content_hash() == smallest.content_hash()
    assert complement_graph(smallest).content_hash() != smallest.content_hash()
    assert same.same_arcs(smallest)
