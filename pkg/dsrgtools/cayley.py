"""Cayley graphs and Cayley coset graphs."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import FactViolation, IdentityInSError, LoopError
from .graphcore import Digraph
from .groups import FiniteGroup, GroupSubset, left_cosets, product_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    """C(G, S): x -> y iff x^-1 y in S; vertex i is group element i."""

    group: FiniteGroup
    connection: GroupSubset
    digraph: Digraph


@dataclass(frozen=True, eq=False)
class CosetGraph:
    """Digraph on the left cosets of H with xH -> yH iff x^-1 y in HSH."""

    group: FiniteGroup
    subgroup: GroupSubset
    connection: GroupSubset
    double_coset: GroupSubset
    cosets: Tuple[Tuple[int, ...], ...]
    digraph: Digraph


def cayley_graph(G: FiniteGroup, S: GroupSubset) -> CayleyGraph:
    """Build C(G, S); vertex x has the out-neighbours xS."""

    if S.group is not G:
        raise ValueError(f"connection set does not belong to {G.name}")
    if S.contains_identity:
        raise IdentityInSError(f"identity lies in the connection set {S}")
    A = np.zeros((G.order, G.order), dtype=np.int64)
    members = S.as_array()
    if len(members):
        rows = np.repeat(np.arange(G.order), len(members))
        A[rows, G.table[:, members].ravel()] = 1
    return CayleyGraph(G, S, Digraph(A, G.names))


def cayley_coset_graph(G: FiniteGroup, H: GroupSubset, S: GroupSubset) -> CosetGraph:
    """
    Build the Cayley coset graph of G over H with connection set S.

    Vertices are the left cosets ordered by least element; the arc rule is
    checked on every pair of representatives.

    Parameters
    ----------
    G: FiniteGroup
    H: GroupSubset
        subgroup of G
    S: GroupSubset

    Returns
    -------
    graph: CosetGraph

    """

    cosets = left_cosets(G, H)
    hsh = product_set(G, H, S, H)
    if hsh.contains_identity:
        raise LoopError(f"identity lies in HSH = {hsh}; the coset graph would have loops")

    in_hsh = np.zeros(G.order, dtype=bool)
    in_hsh[hsh.as_array()] = True
    n = len(cosets)
    A = np.zeros((n, n), dtype=np.int64)
    for i, xs in enumerate(cosets):
        for j, ys in enumerate(cosets):
            # x^-1 y for every representative pair
            quotients = in_hsh[G.table[np.ix_(G.inverse[list(xs)], ys)]]
            if quotients.any() != quotients.all():
                raise FactViolation(f"arc between cosets {i} and {j} depends on the representatives")
            A[i, j] = int(quotients.all())
    labels = [f"{G.element_name(coset[0])}H" for coset in cosets]
    return CosetGraph(G, H, S, hsh, tuple(cosets), Digraph(A, labels))


def translation_automorphism(C: CayleyGraph, g: int) -> np.ndarray:
    """Left translation x -> gx as a vertex permutation."""
    return C.group.table[g].copy()


def is_automorphism(D: Digraph, permutation) -> bool:
    perm = np.asarray(permutation)
    A = D.adjacency
    return bool(np.array_equal(A[np.ix_(perm, perm)], A))


def translations(C: CayleyGraph) -> List[np.ndarray]:
    return [translation_automorphism(C, g) for g in C.group.elements()]
