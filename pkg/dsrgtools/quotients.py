"""
Neighbour partitions, set stabilizers and quotient digraphs of DSRGs.

For a Cayley graph C(G, S) the vertices sharing an out-neighbour set are the
left cosets of G_S = {g : gS = S}. When every pair of cosets is joined by all
or none of the possible arcs, collapsing them gives a smaller DSRG with
every parameter divided by |G_S|. The checks here raise BoundViolation or
FactViolation when such a fact fails on a concrete graph.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .cayley import CayleyGraph
from .errors import BoundViolation, FactViolation, NotApplicableError, PreconditionError, QuotientError, TooLargeError
from .graphcore import Digraph, verify_dsrg
from .groups import GroupSubset, left_cosets, set_stabilizer
from .paramlab import ParamTuple

logger = logging.getLogger(__name__)

DIRECTIONS = ("out", "in")


@dataclass(frozen=True, eq=False)
class NeighborPartition:
    """
    Vertices grouped by identical out- (rows) or in-neighbour (columns) sets.

    Parameters
    ----------
    direction: 'out' or 'in'
    classes: vertex tuples ordered by least vertex
    class_of: class index of every vertex
    """

    direction: str
    classes: Tuple[Tuple[int, ...], ...]
    class_of: np.ndarray

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def as_sets(self):
        return {frozenset(c) for c in self.classes}


def _partition(D: Digraph, direction: str) -> NeighborPartition:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    vectors = D.adjacency if direction == "out" else D.adjacency.T
    seen: Dict[bytes, int] = {}
    classes = []
    class_of = np.empty(D.order, dtype=np.int64)
    for v in range(D.order):
        key = np.ascontiguousarray(vectors[v]).tobytes()
        if key not in seen:
            seen[key] = len(classes)
            classes.append([])
        classes[seen[key]].append(v)
        class_of[v] = seen[key]
    class_of.setflags(write=False)
    return NeighborPartition(direction, tuple(tuple(c) for c in classes), class_of)


def pout_partition(D: Digraph) -> NeighborPartition:
    return _partition(D, "out")


def pin_partition(D: Digraph) -> NeighborPartition:
    return _partition(D, "in")


def _verified(D: Digraph) -> ParamTuple:
    params = verify_dsrg(D)
    if not isinstance(params, ParamTuple):
        raise PreconditionError(f"input is not a DSRG: {params}")
    return params


@dataclass(frozen=True)
class BoundReport:
    """
    Class sizes of a neighbour partition against the size bounds.

    Parameters
    ----------
    params: verified tuple
    size_bound: min(k - lam, n - 2k + t)
    max_class: largest class size
    pair_bound: max(k, n - 2k + 2 beta) with beta = min(k - lam, mu, n - 2k + t);
        None when lam = 0 and pairs are not checked
    max_pair: largest sum of two distinct class sizes, None with one class
    """

    params: ParamTuple
    size_bound: int
    max_class: int
    pair_bound: Optional[int]
    max_pair: Optional[int]

    @property
    def size_margin(self) -> int:
        return self.size_bound - self.max_class

    @property
    def pair_margin(self) -> Optional[int]:
        if self.pair_bound is None or self.max_pair is None:
            return None
        return self.pair_bound - self.max_pair


def bounds_check(D: Digraph, P: NeighborPartition, params: Optional[ParamTuple] = None) -> BoundReport:
    """
    Check every class size against min(k - lam, n - 2k + t) and, when lam > 0,
    every pair of classes against max(k, n - 2k + 2 beta).

    Raises
    ------
    BoundViolation
        on the first class or pair over its bound
    NotApplicableError
        for the empty digraph
    """

    params = params or _verified(D)
    n, k, mu, lam, t = params.as_tuple()
    if k == 0:
        raise NotApplicableError("size bounds need k >= 1")
    sizes = sorted(P.sizes(), reverse=True)
    size_bound = min(k - lam, n - 2 * k + t)
    if sizes[0] > size_bound:
        raise BoundViolation(f"{params}: class of size {sizes[0]} exceeds min(k-lam, n-2k+t) = {size_bound}")

    pair_bound = max_pair = None
    if lam > 0:
        beta = min(k - lam, mu, n - 2 * k + t)
        pair_bound = max(k, n - 2 * k + 2 * beta)
        if len(sizes) > 1:
            max_pair = sizes[0] + sizes[1]
            if max_pair > pair_bound:
                raise BoundViolation(f"{params}: two classes of total size {max_pair} exceed {pair_bound}")
    return BoundReport(params, size_bound, sizes[0], pair_bound, max_pair)


def stabilizer(C: CayleyGraph, direction: str = "out") -> GroupSubset:
    """G_S for 'out', G_{S^-1} for 'in'."""

    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    S = C.connection if direction == "out" else C.connection.inverse()
    return set_stabilizer(C.group, S)


def coset_multiplicity(C: CayleyGraph, direction: str = "out"):
    """
    Left cosets of the stabilizer and the number of arcs between every
    ordered pair of them.

    Returns
    -------
    stabilizer: GroupSubset
    cosets: list of element tuples, ordered by least element
    multiplicity: 2d int array, multiplicity[i, j] arcs from coset i to coset j

    """

    G = C.group
    stab = stabilizer(C, direction)
    cosets = left_cosets(G, stab)
    membership = np.zeros((G.order, len(cosets)), dtype=np.int64)
    for i, coset in enumerate(cosets):
        membership[list(coset), i] = 1
    multiplicity = membership.T @ C.digraph.adjacency @ membership
    return stab, cosets, multiplicity


def _blowup_defect(stab: GroupSubset, multiplicity: np.ndarray) -> Optional[str]:
    q = len(stab)
    inside = np.nonzero(np.diag(multiplicity))[0]
    if len(inside):
        return f"coset {int(inside[0])} contains an arc"
    odd = np.argwhere((multiplicity != 0) & (multiplicity != q * q))
    if len(odd):
        i, j = (int(x) for x in odd[0])
        return f"cosets {i} and {j} carry {multiplicity[i, j]} arcs, expected 0 or {q * q}"
    return None


def has_quotient(C: CayleyGraph, direction: str = "out") -> bool:
    """True when every pair of stabilizer cosets is joined by all or none of
    the possible arcs, so the graph is a blow-up of its quotient."""

    stab, _, multiplicity = coset_multiplicity(C, direction)
    return _blowup_defect(stab, multiplicity) is None


@dataclass(frozen=True, eq=False)
class Quotient:
    direction: str
    stabilizer: GroupSubset
    cosets: Tuple[Tuple[int, ...], ...]
    digraph: Digraph
    params: ParamTuple


def quotient_graph(C: CayleyGraph, direction: str = "out") -> Quotient:
    """
    Collapse the left cosets of the stabilizer to single vertices.

    Cosets are joined when the graph has an arc between them. The quotient
    exists when every joined pair carries exactly |stabilizer|^2 arcs and no
    coset contains an arc; it is then a DSRG with every parameter divided by
    |stabilizer|.

    Parameters
    ----------
    C: CayleyGraph
        a DSRG
    direction: str
        'out' collapses the cosets of G_S, 'in' those of G_{S^-1}

    Returns
    -------
    quotient: Quotient

    Raises
    ------
    QuotientError
        when the cosets do not collapse, e.g. S G_S != S
    FactViolation
        when the quotient does not verify with the divided tuple

    """

    params = _verified(C.digraph)
    G = C.group
    stab, cosets, multiplicity = coset_multiplicity(C, direction)
    defect = _blowup_defect(stab, multiplicity)
    if defect:
        raise QuotientError(f"{direction}-cosets of {params} do not collapse: {defect}")
    q = len(stab)
    if any(value % q for value in params.as_tuple()):
        raise FactViolation(f"|stabilizer| = {q} does not divide every parameter of {params}")

    symbol = "G_S" if direction == "out" else "G_S'"
    labels = [f"{G.element_name(coset[0])}{symbol}" for coset in cosets]
    digraph = Digraph((multiplicity > 0).astype(np.int64), labels)
    expected = params.divided(q)
    found = verify_dsrg(digraph)
    if found != expected:
        raise FactViolation(f"{direction}-quotient of {params} by {q} verified as {found}, expected {expected}")
    logger.debug("%s-quotient of %s by |G_S|=%d is %s", direction, params, q, expected)
    return Quotient(direction, stab, tuple(cosets), digraph, expected)


@dataclass(frozen=True, eq=False)
class StabilizerReport:
    """
    Stabilizers of S and S^-1 of a Cayley DSRG.

    Parameters
    ----------
    params: verified tuple
    out_stabilizer: G_S
    in_stabilizer: G_{S^-1}
    out_quotient: whether the cosets of G_S collapse to a quotient
    in_quotient: the same for G_{S^-1}
    """

    params: ParamTuple
    out_stabilizer: GroupSubset
    in_stabilizer: GroupSubset
    out_quotient: bool
    in_quotient: bool

    @property
    def orders(self) -> Tuple[int, int]:
        return len(self.out_stabilizer), len(self.in_stabilizer)


def stabilizer_facts(C: CayleyGraph) -> StabilizerReport:
    """
    Compute G_S and G_{S^-1} and check what a DSRG forces on them.

    In both directions: the neighbour classes are the left cosets of the
    stabilizer; its order is at most min(k - lam, n - 2k + t); it is trivial
    when t != mu. When the cosets collapse to a quotient, the order also
    divides the gcd of the parameters.

    Raises
    ------
    FactViolation
    """

    params = _verified(C.digraph)
    n, k, mu, lam, t = params.as_tuple()
    g = params.gcd()
    G = C.group
    found, collapses = {}, {}
    for direction, partition in (("out", pout_partition), ("in", pin_partition)):
        stab, cosets, multiplicity = coset_multiplicity(C, direction)
        if partition(C.digraph).as_sets() != {frozenset(c) for c in cosets}:
            raise FactViolation(f"{direction}-neighbour classes differ from the cosets of the stabilizer {stab}")
        q = len(stab)
        if k and q > min(k - lam, n - 2 * k + t):
            raise FactViolation(f"{direction}-stabilizer order {q} exceeds min(k-lam, n-2k+t) for {params}")
        if t != mu and q != 1:
            raise FactViolation(f"{direction}-stabilizer should be trivial for {params}, has order {q}")
        collapses[direction] = _blowup_defect(stab, multiplicity) is None
        if collapses[direction] and g % q:
            raise FactViolation(f"{direction}-stabilizer order {q} does not divide gcd {g} of {params}")
        found[direction] = stab
    logger.debug("stabilizers of %s in %s have orders %d, %d", params, G.name, len(found["out"]), len(found["in"]))
    return StabilizerReport(params, found["out"], found["in"], collapses["out"], collapses["in"])


def aut_bound(C: CayleyGraph) -> int:
    """
    min over G_S and G_{S^-1} of (n/|stab|)! |stab|!.

    Raises
    ------
    NotApplicableError
        for SRG-flagged graphs and doubly regular tournaments, where
        permutations inside a class are not bounded this way
    """

    params = _verified(C.digraph)
    if not params.is_proper:
        raise NotApplicableError(f"{params} is not a proper DSRG")
    n = params.n
    return min(
        math.factorial(n // q) * math.factorial(q)
        for q in (len(stabilizer(C, direction)) for direction in DIRECTIONS)
    )


def _signatures(A: np.ndarray) -> np.ndarray:
    return np.stack([A.sum(axis=1), A.sum(axis=0)], axis=1)


def _count_extensions(A: np.ndarray, prefix: Tuple[int, ...]) -> int:
    """Number of automorphisms extending the images of vertices 0..len(prefix)-1."""

    n = A.shape[0]
    signature = _signatures(A)
    images = list(prefix)
    used = np.zeros(n, dtype=bool)
    used[images] = True

    def consistent(i: int, w: int) -> bool:
        if used[w] or not np.array_equal(signature[i], signature[w]):
            return False
        for j, image in enumerate(images):
            if A[i, j] != A[w, image] or A[j, i] != A[image, w]:
                return False
        return A[i, i] == A[w, w]

    for i, w in enumerate(prefix):
        if not (np.array_equal(signature[i], signature[w]) and all(
            A[i, j] == A[w, images[j]] and A[j, i] == A[images[j], w] for j in range(i)
        )):
            return 0

    def extend(i: int) -> int:
        if i == n:
            return 1
        total = 0
        for w in range(n):
            if consistent(i, w):
                used[w] = True
                images.append(w)
                total += extend(i + 1)
                images.pop()
                used[w] = False
        return total

    return extend(len(prefix))


def brute_force_aut(D: Digraph, max_order: int = 10, client=None) -> int:
    """
    |Aut(D)| by backtracking over vertex images with degree pruning.

    Parameters
    ----------
    D: Digraph
    max_order: int
        largest vertex count accepted
    client: dask client, optional
        count the extensions of each image of vertex 0 in parallel

    Returns
    -------
    order: int

    """

    if D.order > max_order:
        raise TooLargeError(f"{D.order} vertices exceed the limit of {max_order}")
    A = np.asarray(D.adjacency)
    if D.order == 0:
        return 1
    if client is None:
        return _count_extensions(A, ())
    futures = [client.submit(_count_extensions, A, (w,)) for w in range(D.order)]
    total = sum(future.result() for future in futures)
    for future in futures:
        future.cancel()
    return total
