"""Finite groups as multiplication tables.

Elements are the integers 0..order-1. Structured groups (semidirect and
direct products) use a radix encoding, ``index = a * m + u`` for the pair
(a, u), so group ring vectors and adjacency matrices index elements directly.
Every constructed table is checked against the group axioms: exhaustively up
to ``check_limit`` elements, on random triples above.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    InvalidActionError,
    NotAutomorphismError,
    NotCoprimeError,
    NotSubgroupError,
    OutOfRangeError,
)

logger = logging.getLogger(__name__)


class FiniteGroup:
    """
    Finite group given by its multiplication table.

    Parameters
    ----------
    table: 2d int array, table[a, b] is the index of a*b
    names: optional element names
    name: name of the group, used in messages
    check_limit: largest order for an exhaustive associativity check
    samples: number of random triples checked above check_limit
    seed: seed of the sampled check
    """

    def __init__(self, table, names=None, name="G", check_limit=512, samples=2000, seed=0):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
            raise ValueError(f"{name}: multiplication table must be square and nonempty")
        order = table.shape[0]
        if table.min() < 0 or table.max() >= order:
            raise ValueError(f"{name}: table entries outside 0..{order - 1}")
        table.setflags(write=False)
        self.table = table
        self.name = name
        self.names = tuple(names) if names is not None else tuple(str(g) for g in range(order))
        if len(self.names) != order:
            raise ValueError(f"{name}: {len(self.names)} names for {order} elements")

        everything = np.arange(order)
        candidates = [
            g for g in range(order)
            if np.array_equal(table[g], everything) and np.array_equal(table[:, g], everything)
        ]
        if not candidates:
            raise ValueError(f"{name}: no identity element")
        self.identity = candidates[0]

        inverse = np.argmax(table == self.identity, axis=1)
        if not np.all(table[everything, inverse] == self.identity) or not np.all(
            table[inverse, everything] == self.identity
        ):
            raise ValueError(f"{name}: some element has no inverse")
        inverse.setflags(write=False)
        self.inverse = inverse
        self._check_associative(check_limit, samples, seed)

    def _check_associative(self, check_limit, samples, seed):
        T = self.table
        if self.order <= check_limit:
            for a in range(self.order):
                if not np.array_equal(T[T[a], :], T[a][T]):
                    raise ValueError(f"{self.name}: multiplication is not associative at {self.names[a]}")
            return
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, self.order, size=(3, samples))
        if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
            raise ValueError(f"{self.name}: multiplication is not associative")
        logger.debug("%s: sampled associativity on %d triples", self.name, samples)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = self.identity, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def element_order(self, a: int) -> int:
        g, count = a, 1
        while g != self.identity:
            g = self.mul(g, a)
            count += 1
        return count

    def element_name(self, a: int) -> str:
        return self.names[a]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def subset(self, members: Iterable[int]) -> "GroupSubset":
        return GroupSubset(self, frozenset(int(g) for g in members))

    def whole(self) -> "GroupSubset":
        return self.subset(self.elements())

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} of order {self.order}>"


class SemidirectGroup(FiniteGroup):
    """Semidirect product of a normal group by a cyclic group of order m.

    The element (a, u) has index ``a * m + u``; ``pair`` and ``coords``
    translate between the two.
    """

    def __init__(self, table, normal: FiniteGroup, m: int, **kwargs):
        self.normal = normal
        self.m = m
        super().__init__(table, **kwargs)

    def pair(self, a: int, u: int) -> int:
        return (a % self.normal.order) * self.m + (u % self.m)

    def coords(self, g: int) -> Tuple[int, int]:
        return divmod(int(g), self.m)

    def triple(self, l: int, i: int, u: int) -> int:
        """Index of a^l x^i y^u when the normal factor is itself a
        semidirect product of cyclic groups."""
        return self.pair(self.normal.pair(l, i), u)


@dataclass(frozen=True)
class GroupSubset:
    """A set of elements of a given group."""

    group: FiniteGroup
    members: FrozenSet[int]

    def __post_init__(self):
        bad = [g for g in self.members if not 0 <= g < self.group.order]
        if bad:
            raise ValueError(f"elements {sorted(bad)} are not in {self.group.name}")

    def __contains__(self, g) -> bool:
        return g in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def as_array(self) -> np.ndarray:
        return np.array(sorted(self.members), dtype=np.int64)

    @property
    def contains_identity(self) -> bool:
        return self.group.identity in self.members

    def inverse(self) -> "GroupSubset":
        return self.group.subset(self.group.inverse[list(self.members)].tolist() if self.members else ())

    def names(self) -> List[str]:
        return [self.group.element_name(g) for g in self]

    def __str__(self):
        return "{" + ", ".join(self.names()) + "}"


@dataclass(frozen=True)
class SemidirectSpec:
    """
    Data of the semidirect product C_n x| C_m where the generator x of C_m
    acts on C_n = <a> by a -> a^k.

    Parameters
    ----------
    n: order of the normal cyclic factor
    m: order of the acting cyclic factor
    k: action multiplier, gcd(k, n) = 1 and k^m = 1 (mod n)
    """

    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise InvalidActionError(f"factor orders must be positive, got n={self.n}, m={self.m}")
        if math.gcd(self.k, self.n) != 1:
            raise InvalidActionError(f"gcd({self.k}, {self.n}) != 1")
        if pow(self.k, self.m, self.n) != 1 % self.n:
            raise InvalidActionError(f"{self.k}^{self.m} is not 1 mod {self.n}")

    @property
    def nontrivial(self) -> bool:
        return self.k % self.n != 1 % self.n


# Number theory


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_factors(n: int) -> List[int]:
    factors, d = [], 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def euler_phi(n: int) -> int:
    result = n
    for q in prime_factors(n):
        result -= result // q
    return result


def unit_residues(n: int) -> List[int]:
    """Residues 1 <= q < n coprime to n."""
    return [q for q in range(1, n) if math.gcd(q, n) == 1]


def multiplicative_order(s: int, n: int) -> int:
    """Least e >= 1 with s^e = 1 (mod n)."""

    if n < 1:
        raise OutOfRangeError(f"modulus must be positive, got {n}")
    if math.gcd(s, n) != 1:
        raise NotCoprimeError(f"gcd({s}, {n}) != 1")
    if n == 1:
        return 1
    value, e = s % n, 1
    while value != 1:
        value = value * s % n
        e += 1
    return e


def _has_primitive_root(n: int) -> bool:
    if n in (2, 4):
        return True
    if n % 2 == 0:
        n //= 2
        if n % 2 == 0:
            return False
    factors = prime_factors(n)
    return len(factors) == 1


def primitive_root(p: int) -> Optional[int]:
    """Smallest primitive root modulo p, or None when there is none."""

    if p < 2:
        raise OutOfRangeError(f"modulus must be at least 2, got {p}")
    if not _has_primitive_root(p):
        return None
    phi = euler_phi(p)
    for g in range(1, p):
        if math.gcd(g, p) == 1 and multiplicative_order(g, p) == phi:
            return g
    return None


# Constructors


def cyclic(n: int, symbol: str = "x") -> FiniteGroup:
    """Cyclic group of order n; element i is symbol^i."""

    if n < 1:
        raise OutOfRangeError(f"cyclic group order must be positive, got {n}")
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    return FiniteGroup(table, names=[f"{symbol}^{j}" for j in range(n)], name=f"C{n}")


def power_map(G: FiniteGroup, s: int) -> np.ndarray:
    """The map g -> g^s as an element array."""
    return np.array([G.power(g, s) for g in G.elements()], dtype=np.int64)


def verify_automorphism(G: FiniteGroup, beta) -> np.ndarray:
    """Check that beta (an element map) is a bijective homomorphism of G."""

    beta = np.asarray(beta, dtype=np.int64)
    if beta.shape != (G.order,):
        raise NotAutomorphismError(f"map has shape {beta.shape}, expected ({G.order},)")
    if beta.min() < 0 or beta.max() >= G.order or len(np.unique(beta)) != G.order:
        raise NotAutomorphismError("map is not a bijection of the group")
    # beta(ab) == beta(a) beta(b) for all a, b
    if not np.array_equal(beta[G.table], G.table[np.ix_(beta, beta)]):
        raise NotAutomorphismError("map is not a homomorphism")
    return beta


def semidirect_product(
    A: FiniteGroup, beta, m: int, symbol: str = "x", name: Optional[str] = None, **kwargs
) -> SemidirectGroup:
    """
    A x| C_m where the generator of C_m acts on A through beta.

    The product is (a, u)(a', u') = (a * beta^u(a'), u + u').

    Parameters
    ----------
    A: FiniteGroup
        normal factor
    beta: sequence of int
        automorphism of A as an element map, verified here
    m: int
        order of the acting cyclic group; beta^m must be the identity map
    symbol: str
        name of the generator of C_m in element names

    Returns
    -------
    G: SemidirectGroup

    """

    if m < 1:
        raise InvalidActionError(f"acting order must be positive, got {m}")
    beta = verify_automorphism(A, beta)
    powers = np.empty((m + 1, A.order), dtype=np.int64)
    powers[0] = np.arange(A.order)
    for u in range(1, m + 1):
        powers[u] = beta[powers[u - 1]]
    if not np.array_equal(powers[m], powers[0]):
        raise InvalidActionError(f"the action has order not dividing {m}")

    idx = np.arange(A.order * m)
    a, u = idx // m, idx % m
    table = A.table[a[:, None], powers[u[:, None], a[None, :]]] * m + (u[:, None] + u[None, :]) % m
    names = [f"{A.names[ai]} {symbol}^{ui}" for ai, ui in zip(a, u)]
    name = name or f"{A.name}x|C{m}"
    return SemidirectGroup(table, normal=A, m=m, names=names, name=name, **kwargs)


def semidirect_cyclic(spec: SemidirectSpec, **kwargs) -> SemidirectGroup:
    """C_n x| C_m with x a x^-1 = a^k; element (i, j) is a^i x^j."""

    A = cyclic(spec.n, "a")
    return semidirect_product(
        A, power_map(A, spec.k), spec.m, "x", name=f"C{spec.n}x|{spec.k}C{spec.m}", **kwargs
    )


def dihedral(n: int, **kwargs) -> SemidirectGroup:
    """Dihedral group of order 2n, as C_n x| C_2 acting by inversion."""
    if n < 2:
        raise OutOfRangeError(f"dihedral groups need n >= 2, got {n}")
    return semidirect_cyclic(SemidirectSpec(n, 2, n - 1), **kwargs)


def direct_product(G: FiniteGroup, m: int, symbol: str = "z", **kwargs) -> SemidirectGroup:
    """G x C_m; the element (g, u) has index g * m + u."""

    kwargs.setdefault("name", f"{G.name}xC{m}")
    return semidirect_product(G, np.arange(G.order), m, symbol, **kwargs)


def nested_semidirect(p: int, n: int, s: int, **kwargs) -> SemidirectGroup:
    """
    (C_p x|_s C_n) x| C_p where the generator y of the outer C_p acts by
    conjugation with a: y^u d y^-u = a^-u d a^u.

    Element a^l x^i y^u has index ``triple(l, i, u)``; the order is p^2 n.
    """

    if not is_prime(p):
        raise InvalidActionError(f"{p} is not prime")
    if math.gcd(s, p) != 1 or s % p == 1 or pow(s, n, p) != 1:
        raise InvalidActionError(f"need gcd(s,p)=1, s != 1 and s^n = 1 mod p, got p={p}, n={n}, s={s}")
    D = semidirect_cyclic(SemidirectSpec(p, n, s))
    a = D.pair(1, 0)
    a_inv = D.inv(a)
    conjugation = D.table[D.table[a_inv], a]
    return semidirect_product(D, conjugation, p, "y", name=f"D{p},{n},{s}x|C{p}", **kwargs)


# Subgroups, cosets and orbits


def is_subgroup(G: FiniteGroup, H: GroupSubset) -> bool:
    if not len(H) or G.identity not in H:
        return False
    members = H.as_array()
    closed = np.isin(G.table[np.ix_(members, members)], members).all()
    return bool(closed and np.isin(G.inverse[members], members).all())


def left_cosets(G: FiniteGroup, H: GroupSubset) -> List[Tuple[int, ...]]:
    """Cosets gH as sorted tuples, ordered by least element."""

    if H.group is not G or not is_subgroup(G, H):
        raise NotSubgroupError(f"{H} is not a subgroup of {G.name}")
    members = H.as_array()
    seen = np.zeros(G.order, dtype=bool)
    cosets = []
    for g in G.elements():
        if seen[g]:
            continue
        coset = np.sort(G.table[g, members])
        seen[coset] = True
        cosets.append(tuple(int(x) for x in coset))
    return cosets


def set_stabilizer(G: FiniteGroup, S: GroupSubset) -> GroupSubset:
    """{g : gS = S}, by testing every g."""

    members = S.as_array()
    if not len(members):
        return G.whole()
    keeps = np.isin(G.table[:, members], members).all(axis=1)
    return G.subset(np.nonzero(keeps)[0].tolist())


@dataclass(frozen=True)
class OrbitReport:
    """Orbits of an automorphism on the non-identity elements."""

    group: FiniteGroup
    q: int
    satisfied: bool
    orbits: Tuple[Tuple[int, ...], ...]

    def named_orbits(self) -> List[List[str]]:
        return [[self.group.element_name(g) for g in orbit] for orbit in self.orbits]


def q_orbit_check(G: FiniteGroup, beta, q: int) -> OrbitReport:
    """
    Test whether beta^q = id and every non-identity orbit has q elements.

    Orbits are listed from their least element, in iteration order of beta.
    """

    beta = verify_automorphism(G, beta)
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    orbits = []
    for g in G.elements():
        if seen[g]:
            continue
        orbit, h = [], g
        while not seen[h]:
            seen[h] = True
            orbit.append(h)
            h = int(beta[h])
        orbits.append(tuple(orbit))

    image = np.arange(G.order)
    for _ in range(q):
        image = beta[image]
    satisfied = q >= 1 and np.array_equal(image, np.arange(G.order)) and all(len(o) == q for o in orbits)
    return OrbitReport(G, q, bool(satisfied), tuple(orbits))


def orbit_representatives(report: OrbitReport) -> GroupSubset:
    """The least element of every non-identity orbit."""
    return report.group.subset(min(orbit) for orbit in report.orbits)


def find_power_automorphism(A: FiniteGroup, q: int) -> Optional[np.ndarray]:
    """First power map a -> a^s (s = 1, 2, ...) of an abelian group A with the
    q-orbit property, or None."""

    if not A.is_abelian():
        return None
    for s in range(1, max(A.order, 2)):
        if math.gcd(s, A.order) != 1:
            continue
        beta = power_map(A, s)
        if len(np.unique(beta)) != A.order:
            continue
        if q_orbit_check(A, beta, q).satisfied:
            return beta
    return None


def product_set(G: FiniteGroup, *subsets: Sequence[int]) -> GroupSubset:
    """{x_1 x_2 ... : x_i in subsets[i]}."""

    current = np.array([G.identity], dtype=np.int64)
    for subset in subsets:
        members = np.array(sorted(subset), dtype=np.int64)
        current = np.unique(G.table[np.ix_(current, members)])
    return G.subset(current.tolist())
