"""
Families of directed strongly regular graphs built from group data.

Every builder computes the expected parameter tuple from its closed form
first, then builds the graph and verifies it with ``verify_dsrg``. A
mismatch raises VerificationMismatch: the closed forms are theorems, so a
mismatch is a bug.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Optional

import numpy as np

from .cayley import CayleyGraph, cayley_graph
from .errors import BadParamsError, MissingBaseError, QOrbitError, VerificationMismatch
from .graphcore import (
    Digraph,
    complement_graph,
    expand_t_lambda1,
    expand_t_mu,
    product_graph,
    verify_dsrg,
)
from .groups import (
    FiniteGroup,
    SemidirectSpec,
    cyclic,
    dihedral,
    direct_product,
    find_power_automorphism,
    is_prime,
    multiplicative_order,
    nested_semidirect,
    orbit_representatives,
    power_map,
    primitive_root,
    q_orbit_check,
    semidirect_cyclic,
    semidirect_product,
    unit_residues,
)
from .paramlab import ParamTuple, complement_params, product_params

logger = logging.getLogger(__name__)


class Family(str, Enum):
    SEMIDIRECT = "semidirect"
    SEMIDIRECT_IDENTITY = "semidirect-identity"
    ORBIT_BASE = "orbit-base"
    ORBIT = "orbit"
    NESTED = "nested"
    DIHEDRAL = "dihedral"
    HALF_DIHEDRAL = "half-dihedral"
    PRODUCT = "product"
    EXPAND_MU = "expand-mu"
    EXPAND_LAMBDA = "expand-lambda"
    COMPLEMENT = "complement"


@dataclass(frozen=True)
class FamilyRecipe:
    """
    Family id, construction parameters and the tuple the family formula
    predicts.

    Parameters
    ----------
    family: Family
    params: JSON-compatible parameters; ``build(family, **params)`` rebuilds
    expected: tuple computed from the closed form before building
    """

    family: Family
    params: Dict[str, Any] = field(compare=False)
    expected: ParamTuple


@dataclass(frozen=True, eq=False)
class Construction:
    """A built and verified graph. ``cayley`` is None for graphs that are
    not built as Cayley graphs (products, pipelines)."""

    recipe: FamilyRecipe
    digraph: Digraph
    params: ParamTuple
    cayley: Optional[CayleyGraph] = None


def _finish(recipe: FamilyRecipe, digraph: Digraph, cayley: Optional[CayleyGraph] = None) -> Construction:
    verified = verify_dsrg(digraph)
    if verified != recipe.expected:
        raise VerificationMismatch(
            f"{recipe.family.value} {recipe.params}: expected {recipe.expected}, verified {verified}"
        )
    logger.info("%s %s verified as %s", recipe.family.value, recipe.params, verified)
    return Construction(recipe, digraph, verified, cayley)


def _from_cayley(recipe: FamilyRecipe, G: FiniteGroup, members: Iterable[int]) -> Construction:
    C = cayley_graph(G, G.subset(members))
    return _finish(recipe, C.digraph, C)


def _exponent_set(H, v, p, allow_full=True):
    if H is None:
        if v is None:
            raise BadParamsError("give H or v")
        H = range(1, v + 1)
    H = sorted({int(h) for h in H})
    upper = p - 1 if allow_full else p - 2
    if not H or H[0] < 1 or H[-1] > p - 1:
        raise BadParamsError(f"H must be a nonempty subset of 1..{p - 1}, got {H}")
    if len(H) > upper:
        raise BadParamsError(f"H may have at most {upper} elements, got {len(H)}")
    return H


def _prime_root_group(p: int, n: int) -> SemidirectSpec:
    if not (is_prime(p) and p % 2):
        raise BadParamsError(f"p must be an odd prime, got {p}")
    if n < 1 or n % (p - 1):
        raise BadParamsError(f"p-1 = {p - 1} must divide n = {n}")
    return SemidirectSpec(p, n, primitive_root(p))


def semidirect_family(p: int, n: int, H: Optional[Iterable[int]] = None, v: Optional[int] = None) -> Construction:
    """
    C(C_p x|_g C_n, {a^l x^j : l in H, any j}) with g the least primitive
    root of p.

    Parameters
    ----------
    p: int
        odd prime
    n: int
        multiple of p-1
    H: iterable of int, optional
        exponents in 1..p-1; the full range gives a strongly regular graph
    v: int, optional
        used as H = {1..v} when H is not given

    Returns
    -------
    construction: Construction
        verified as (pn, vn, nv^2/(p-1), nv(v-1)/(p-1), nv^2/(p-1))

    """

    spec = _prime_root_group(p, n)
    H = _exponent_set(H, v, p)
    v = len(H)
    mu = n * v * v // (p - 1)
    expected = ParamTuple(p * n, v * n, mu, n * v * (v - 1) // (p - 1), mu)
    recipe = FamilyRecipe(Family.SEMIDIRECT, {"p": p, "n": n, "H": H}, expected)
    G = semidirect_cyclic(spec)
    return _from_cayley(recipe, G, (G.pair(l, j) for l in H for j in range(n)))


def semidirect_identity_family(
    p: int, n: int, H: Optional[Iterable[int]] = None, v: Optional[int] = None
) -> Construction:
    """
    Like semidirect_family with the connection set
    {a^l x^j : l in H + {0}, 1 <= j < n} + {a^c : c in H}.

    Verified as (pn, n(v+1)-1, nv(v+1)/(p-1), n-2+nv^2/(p-1), n-1+nv^2/(p-1));
    the result always has t = lambda + 1.
    """

    spec = _prime_root_group(p, n)
    H = _exponent_set(H, v, p, allow_full=False)
    v = len(H)
    base = n * v * v // (p - 1)
    expected = ParamTuple(p * n, n * (v + 1) - 1, n * v * (v + 1) // (p - 1), n - 2 + base, n - 1 + base)
    recipe = FamilyRecipe(Family.SEMIDIRECT_IDENTITY, {"p": p, "n": n, "H": H}, expected)
    G = semidirect_cyclic(spec)
    members = [G.pair(l, j) for l in [0] + H for j in range(1, n)] + [G.pair(c, 0) for c in H]
    return _from_cayley(recipe, G, members)


def orbit_family(A: FiniteGroup, beta, q: int, with_identity: bool = True) -> Construction:
    """
    Cayley graphs of A x| C_q where C_q acts through beta.

    beta must have order dividing q with every non-identity orbit of size q.
    With A' the least elements of the orbits, the connection set is A' x C_q
    (``with_identity=False``, verified as (mq, m-1, (m-1)/q, (m-1)/q-1, (m-1)/q))
    or (A' + e) x C_q minus e (verified as
    (mq, m+q-2, (m-1)/q+1, (m-1)/q+q-2, (m-1)/q+q-1)), where m = |A|.
    """

    report = q_orbit_check(A, beta, q)
    if not report.satisfied:
        raise QOrbitError(f"beta does not have the {q}-orbit property on {A.name}: {report.named_orbits()}")
    reps = orbit_representatives(report)
    m = A.order
    r = (m - 1) // q
    G = semidirect_product(A, beta, q, "y")
    if with_identity:
        expected = ParamTuple(m * q, m + q - 2, r + 1, r + q - 2, r + q - 1)
        members = [G.pair(a, u) for a in list(reps) + [A.identity] for u in range(q)]
        members.remove(G.identity)
        family = Family.ORBIT
    else:
        expected = ParamTuple(m * q, m - 1, r, r - 1, r)
        members = [G.pair(a, u) for a in reps for u in range(q)]
        family = Family.ORBIT_BASE
    params = {"group": A.name, "q": q, "beta": [int(b) for b in beta]}
    return _from_cayley(FamilyRecipe(family, params, expected), G, members)


def cyclic_orbit_family(order: int, q: int, s: Optional[int] = None, with_identity: bool = True) -> Construction:
    """orbit_family on the cyclic group of the given order with beta the
    power map a -> a^s; without s a suitable power map is searched."""

    if order < 2 or q < 1:
        raise BadParamsError(f"need order >= 2 and q >= 1, got order={order}, q={q}")
    A = cyclic(order, "a")
    if s is None:
        beta = find_power_automorphism(A, q)
        if beta is None:
            raise QOrbitError(f"no power map of C{order} has the {q}-orbit property")
    else:
        beta = power_map(A, s)
        if len(np.unique(beta)) != order:
            raise BadParamsError(f"a -> a^{s} is not a bijection of C{order}")
    construction = orbit_family(A, beta, q, with_identity)
    s = int(beta[1]) if order > 1 else 1
    recipe = replace(construction.recipe, params={"order": order, "q": q, "s": s})
    return replace(construction, recipe=recipe)


def nested_family(p: int, n: int, s: Optional[int] = None) -> Construction:
    """
    C(G, A' x C_p) in the nested group G = (C_p x|_s C_n) x| C_p with
    A' = {a^l x^i : gcd(l, p) = 1, any i}.

    Verified as (p^2 n, p(p-1)n, n((p-1)^2+1), n((p-1)^3-1)/(p-1), n((p-1)^2+1)).
    """

    if not (is_prime(p) and p % 2):
        raise BadParamsError(f"p must be an odd prime, got {p}")
    if s is None:
        s = primitive_root(p)
    if s % p == 0 or multiplicative_order(s, p) != p - 1:
        raise BadParamsError(f"{s} is not a primitive root mod {p}")
    if n < 1 or n % (p - 1):
        raise BadParamsError(f"p-1 = {p - 1} must divide n = {n}")
    mu = n * ((p - 1) ** 2 + 1)
    expected = ParamTuple(p * p * n, p * (p - 1) * n, mu, n * ((p - 1) ** 3 - 1) // (p - 1), mu)
    recipe = FamilyRecipe(Family.NESTED, {"p": p, "n": n, "s": s}, expected)
    G = nested_semidirect(p, n, s)
    members = (G.triple(l, i, u) for l in unit_residues(p) for i in range(n) for u in range(p))
    return _from_cayley(recipe, G, members)


def dihedral_family(n: int) -> Construction:
    """
    C(D_n, {b^i a^j : 0 <= i < n/2, j = 0, 1} minus e) for even n >= 4,
    verified as (2n, n-1, n/2-1, n/2-1, n/2).
    """

    if n < 4 or n % 2:
        raise BadParamsError(f"n must be even and at least 4, got {n}")
    h = n // 2
    expected = ParamTuple(2 * n, n - 1, h - 1, h - 1, h)
    G = dihedral(n)
    members = [G.pair(i, j) for i in range(h) for j in range(2) if (i, j) != (0, 0)]
    return _from_cayley(FamilyRecipe(Family.DIHEDRAL, {"n": n}, expected), G, members)


def half_dihedral_family(n: int) -> Construction:
    """
    C(D_n, {b^i a^j : 1 <= i <= (n-1)/2, j = 0, 1}) for odd n >= 3, verified
    as (2n, n-1, (n-1)/2, (n-3)/2, (n-1)/2).

    At n = 3 this is semidirect_family(3, 2, [1]).
    """

    if n < 3 or n % 2 == 0:
        raise BadParamsError(f"n must be odd and at least 3, got {n}")
    h = (n - 1) // 2
    expected = ParamTuple(2 * n, n - 1, h, h - 1, h)
    G = dihedral(n)
    members = [G.pair(i, j) for i in range(1, h + 1) for j in range(2)]
    return _from_cayley(FamilyRecipe(Family.HALF_DIHEDRAL, {"n": n}, expected), G, members)


def _nested_recipe(construction: Construction) -> Dict[str, Any]:
    return {"family": construction.recipe.family.value, "params": construction.recipe.params}


def complemented(construction: Construction) -> Construction:
    """The complement graph; for a Cayley graph C(G, S) this is
    C(G, G - S - e)."""

    expected = complement_params(construction.params)
    recipe = FamilyRecipe(Family.COMPLEMENT, {"base": _nested_recipe(construction)}, expected)
    C = construction.cayley
    if C is None:
        return _finish(recipe, complement_graph(construction.digraph))
    G = C.group
    members = [g for g in G.elements() if g != G.identity and g not in C.connection]
    return _from_cayley(recipe, G, members)


def doubled_cayley(C: CayleyGraph, m: int, fill: bool = False) -> CayleyGraph:
    """
    C(G x C_m, S x C_m), arc-identical to A x J_m under (g, u) -> g*m + u.

    With ``fill`` the elements (e, u), u != 0, join the connection set, which
    gives A x J_m + I x (J_m - I_m).
    """

    G = direct_product(C.group, m)
    members = [G.pair(s, u) for s in C.connection for u in range(m)]
    if fill:
        members += [G.pair(C.group.identity, u) for u in range(1, m)]
    return cayley_graph(G, G.subset(members))


def expanded(construction: Construction, m: int) -> Construction:
    """Expansion of a t=mu construction by J_m; Cayley inputs stay Cayley."""

    p = construction.params
    expected = ParamTuple(m * p.n, m * p.k, m * p.mu, m * p.lam, m * p.t)
    recipe = FamilyRecipe(Family.EXPAND_MU, {"m": m, "base": _nested_recipe(construction)}, expected)
    digraph = expand_t_mu(construction.digraph, m)
    if construction.cayley is None or m == 1:
        return _finish(recipe, digraph, construction.cayley)
    C = doubled_cayley(construction.cayley, m)
    if not C.digraph.same_arcs(digraph):
        raise VerificationMismatch("Cayley realization differs from A x J_m")
    return _finish(recipe, C.digraph, C)


def lambda_expanded(construction: Construction, m: int) -> Construction:
    """Expansion A x J_m + I x (J_m - I_m) of a t=lambda+1 construction."""

    p = construction.params
    expected = ParamTuple(m * p.n, m * (p.k + 1) - 1, m * p.mu, m * (p.t + 1) - 2, m * (p.t + 1) - 1)
    recipe = FamilyRecipe(Family.EXPAND_LAMBDA, {"m": m, "base": _nested_recipe(construction)}, expected)
    digraph = expand_t_lambda1(construction.digraph, m)
    if construction.cayley is None or m == 1:
        return _finish(recipe, digraph, construction.cayley)
    C = doubled_cayley(construction.cayley, m, fill=True)
    if not C.digraph.same_arcs(digraph):
        raise VerificationMismatch("Cayley realization differs from A x J_m + I x (J_m - I_m)")
    return _finish(recipe, C.digraph, C)


def product_of(construction: Construction) -> Construction:
    """(J-A) x A + A x (J-A) of a balanced construction."""

    expected = product_params(construction.params)
    recipe = FamilyRecipe(Family.PRODUCT, {"base": _nested_recipe(construction)}, expected)
    return _finish(recipe, product_graph(construction.digraph))


PIPELINE_BASES = ("odd", "odd-complement", "dihedral-complement")


def product_pipeline(n: int, base: str = "odd") -> Construction:
    """
    Build a balanced (2n, ...) base and apply the product construction.

    Parameters
    ----------
    n: int
        free parameter of the base
    base: str
        'odd': the half dihedral graph (2n, n-1, ...) for odd n, giving
        (4n^2, 2n^2-2, n^2-1, n^2-3, n^2-1);
        'odd-complement': its complement, giving (4n^2, 2n^2, n^2+1, n^2-1, n^2+1);
        'dihedral-complement': complement of dihedral_family(n) for 4 | n,
        giving (4n^2, 2n^2, n^2+4, n^2-4, n^2+4)

    Returns
    -------
    construction: Construction
        recipe family PRODUCT with params {'n': n, 'base': base}

    """

    sq = n * n
    if base == "odd":
        if n % 2 == 0:
            raise MissingBaseError(f"no odd base for even n = {n}")
        expected = ParamTuple(4 * sq, 2 * sq - 2, sq - 1, sq - 3, sq - 1)
        start = half_dihedral_family(n)
    elif base == "odd-complement":
        if n % 2 == 0:
            raise MissingBaseError(f"no odd base for even n = {n}")
        expected = ParamTuple(4 * sq, 2 * sq, sq + 1, sq - 1, sq + 1)
        start = complemented(half_dihedral_family(n))
    elif base == "dihedral-complement":
        if n % 4:
            raise MissingBaseError(f"the dihedral base needs 4 | n, got n = {n}")
        expected = ParamTuple(4 * sq, 2 * sq, sq + 4, sq - 4, sq + 4)
        start = complemented(dihedral_family(n))
    else:
        raise BadParamsError(f"unknown base {base!r}, choose from {PIPELINE_BASES}")
    if product_params(start.params) != expected:
        raise VerificationMismatch(f"base {start.params} does not lead to {expected}")
    recipe = FamilyRecipe(Family.PRODUCT, {"n": n, "base": base}, expected)
    return _finish(recipe, product_graph(start.digraph))


def _build_nested(base: Dict[str, Any]) -> Construction:
    return build(base["family"], **base["params"])


def _build_product(n=None, base=None) -> Construction:
    if isinstance(base, dict):
        return product_of(_build_nested(base))
    return product_pipeline(n, base or "odd")


def _build_orbit(with_identity: bool) -> Callable[..., Construction]:
    def _builder(order, q, s=None):
        return cyclic_orbit_family(order, q, s, with_identity=with_identity)

    return _builder


BUILDERS: Dict[Family, Callable[..., Construction]] = {
    Family.SEMIDIRECT: semidirect_family,
    Family.SEMIDIRECT_IDENTITY: semidirect_identity_family,
    Family.ORBIT_BASE: _build_orbit(False),
    Family.ORBIT: _build_orbit(True),
    Family.NESTED: nested_family,
    Family.DIHEDRAL: dihedral_family,
    Family.HALF_DIHEDRAL: half_dihedral_family,
    Family.PRODUCT: _build_product,
    Family.EXPAND_MU: lambda m, base: expanded(_build_nested(base), m),
    Family.EXPAND_LAMBDA: lambda m, base: lambda_expanded(_build_nested(base), m),
    Family.COMPLEMENT: lambda base: complemented(_build_nested(base)),
}


def build(family, **params) -> Construction:
    """Build a family from its id and the parameters stored in its recipe."""

    try:
        family = Family(family)
    except ValueError:
        raise BadParamsError(f"unknown family {family!r}") from None
    try:
        return BUILDERS[family](**params)
    except TypeError as err:
        raise BadParamsError(f"{family.value}: {err}") from None
