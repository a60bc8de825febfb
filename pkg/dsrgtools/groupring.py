"""The integer group ring Z[G] and the group ring DSRG criteria."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from .errors import GroupMismatchError, IdentityInSError, IntegerOverflowError, NotSubgroupError
from .graphcore import INT_LIMIT, NotDSRG, VerifyResult
from .groups import FiniteGroup, GroupSubset, SemidirectGroup, cyclic, is_subgroup, product_set, unit_residues
from .paramlab import ParamTuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    """
    Formal sum of group elements with integer coefficients.

    Parameters
    ----------
    group: FiniteGroup
    coeffs: int64 vector, coeffs[g] is the coefficient of element g
    """

    group: FiniteGroup
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.int64)
        if coeffs.shape != (self.group.order,):
            raise ValueError(f"need {self.group.order} coefficients, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def coefficient(self, g: int) -> int:
        return int(self.coeffs[g])

    def support(self) -> Tuple[int, ...]:
        return tuple(int(g) for g in np.nonzero(self.coeffs)[0])

    def __add__(self, other):
        return gr_add(self, other)

    def __sub__(self, other):
        return gr_add(self, -1 * other)

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            return gr_mul(self, other)
        return GroupRingElement(self.group, self.coeffs * int(other))

    def __rmul__(self, scalar):
        return GroupRingElement(self.group, self.coeffs * int(scalar))

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and other.group is self.group
            and np.array_equal(other.coeffs, self.coeffs)
        )

    def __str__(self):
        terms = [f"{c}*{self.group.element_name(g)}" for g, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def _same_group(u: GroupRingElement, v: GroupRingElement):
    if u.group is not v.group:
        raise GroupMismatchError(f"{u.group.name} and {v.group.name} differ")


def gr_add(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    _same_group(u, v)
    return GroupRingElement(u.group, u.coeffs + v.coeffs)


def gr_mul(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    """Convolution: the coefficient of g is the sum of r_a s_b over ab = g."""

    _same_group(u, v)
    bound = int(np.abs(u.coeffs).sum()) * int(np.abs(v.coeffs).max(initial=0))
    if bound >= INT_LIMIT:
        raise IntegerOverflowError(f"group ring product may reach {bound}")
    out = np.zeros(u.group.order, dtype=np.int64)
    for a in u.support():
        # row a of the table is a permutation, so no index repeats
        out[u.group.table[a]] += u.coeffs[a] * v.coeffs
    return GroupRingElement(u.group, out)


def zero(G: FiniteGroup) -> GroupRingElement:
    return GroupRingElement(G, np.zeros(G.order, dtype=np.int64))


def identity_element(G: FiniteGroup) -> GroupRingElement:
    coeffs = np.zeros(G.order, dtype=np.int64)
    coeffs[G.identity] = 1
    return GroupRingElement(G, coeffs)


def group_sum(G: FiniteGroup) -> GroupRingElement:
    return GroupRingElement(G, np.ones(G.order, dtype=np.int64))


def subset_sum(S: GroupSubset) -> GroupRingElement:
    coeffs = np.zeros(S.group.order, dtype=np.int64)
    coeffs[S.as_array()] = 1
    return GroupRingElement(S.group, coeffs)


def element_sum(G: FiniteGroup, elements: Iterable[int]) -> GroupRingElement:
    """Sum of the listed elements, with repetition."""
    coeffs = np.zeros(G.order, dtype=np.int64)
    np.add.at(coeffs, np.fromiter(elements, dtype=np.int64), 1)
    return GroupRingElement(G, coeffs)


def _classify(G: FiniteGroup, n: int, k: int, coeffs: np.ndarray, t_class, arcs) -> VerifyResult:
    """Read t, lambda, mu off coefficients split into the three classes."""

    non_arcs = np.ones(G.order, dtype=bool)
    non_arcs[t_class] = False
    non_arcs[arcs] = False
    found = {}
    for condition, where in (
        ("t-class", np.asarray(t_class)),
        ("lambda-class", np.asarray(arcs)),
        ("mu-class", np.nonzero(non_arcs)[0]),
    ):
        if not len(where):
            found[condition] = None
            continue
        values = coeffs[where]
        bad = np.nonzero(values != values[0])[0]
        if len(bad):
            ref, odd = G.element_name(int(where[0])), G.element_name(int(where[bad[0]]))
            return NotDSRG(
                condition,
                (ref, odd),
                f"{condition} non-constant at {odd}: {values[bad[0]]} vs {values[0]} at {ref}",
            )
        found[condition] = int(values[0])
    t = found["t-class"] or 0
    lam = found["lambda-class"] if found["lambda-class"] is not None else 0
    mu = found["mu-class"] if found["mu-class"] is not None else t
    return ParamTuple(n, k, mu, lam, t)


def cayley_criterion(G: FiniteGroup, S: GroupSubset) -> VerifyResult:
    """
    Decide from the square of the subset sum of S whether C(G, S) is a DSRG.

    The coefficient at e gives t, the coefficients on S give lambda and the
    remaining ones give mu; each class has to be constant.

    Returns
    -------
    result: ParamTuple or NotDSRG
        NotDSRG names the element whose coefficient breaks its class

    """

    if S.contains_identity:
        raise IdentityInSError(f"identity lies in the connection set {S}")
    square = subset_sum(S) * subset_sum(S)
    return _classify(G, G.order, len(S), square.coeffs, [G.identity], S.as_array())


def coset_criterion(G: FiniteGroup, H: GroupSubset, S: GroupSubset) -> VerifyResult:
    """
    The criterion for the Cayley coset graph of G over H with connection set S.

    Forms HSH, squares its sum, divides by |H| and classifies coefficients:
    elements of H give t (they all name the same coset), HSH gives lambda, the
    rest give mu.

    Returns
    -------
    result: ParamTuple or NotDSRG
        NotDSRG with condition 'loop' when e lies in HSH, 'divisibility' when
        a coefficient is not a multiple of |H|

    """

    if not is_subgroup(G, H):
        raise NotSubgroupError(f"{H} is not a subgroup of {G.name}")
    hsh = product_set(G, H, S, H)
    if hsh.contains_identity:
        return NotDSRG("loop", (G.element_name(G.identity),), "loop: identity lies in HSH")
    square = subset_sum(hsh) * subset_sum(hsh)
    h = len(H)
    bad = np.nonzero(square.coeffs % h)[0]
    if len(bad):
        g = int(bad[0])
        return NotDSRG(
            "divisibility",
            (G.element_name(g),),
            f"divisibility fails at {G.element_name(g)}: {square.coeffs[g]} is not a multiple of {h}",
        )
    coeffs = square.coeffs // h
    return _classify(G, G.order // h, len(hsh) // h, coeffs, H.as_array(), hsh.as_array())


def units_square_identity(p: int, l: int) -> Tuple[GroupRingElement, GroupRingElement]:
    """
    Both sides of the square identity for the unit residues in C_{p^l}.

    With U the elements a^q, gcd(q, p) = 1, the square of its sum equals
    (p^l - p^(l-1)) times the group sum minus p^(l-1) times the sum of U.

    Returns
    -------
    lhs, rhs: GroupRingElement
        the convolved square and the closed form

    """

    order = p**l
    G = cyclic(order, "a")
    units = subset_sum(G.subset(unit_residues(order)))
    lhs = units * units
    rhs = (order - p ** (l - 1)) * group_sum(G) - p ** (l - 1) * units
    return lhs, rhs


def nested_square_closed_form(
    G: SemidirectGroup, p: int, s: int, H: Iterable[int], T: Iterable[int]
) -> GroupRingElement:
    """
    Closed form of the square of S = {a^l x^i y^u : l in H, i in T, all u}
    in the nested group (C_p x|_s C_n) x| C_p.

    The square is the sum over u < p, l', l in H and i', i in T of
    a^(l' + (l - u + u s^i) s^i') x^(i' + i) times the sum of all y^w.
    """

    H, T = list(H), list(T)
    terms = []
    for u in range(p):
        for lp in H:
            for l in H:
                for ip in T:
                    for i in T:
                        exponent = lp + (l - u + u * pow(s, i, p)) * pow(s, ip, p)
                        terms.extend(G.triple(exponent, ip + i, w) for w in range(p))
    return element_sum(G, terms)
