"""
Batch checks over many graphs: the standard constructions, the spectral
criteria against direct verification, the two verification oracles against
each other, the stabilizer and quotient facts, and the feasibility sieve.

Each sweep returns a pandas DataFrame with one row per case and raises on
the first disagreement. Work is run serially, or through a dask client when
one is given.
"""

import itertools
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from .cayley import cayley_graph
from .constructions import (
    complemented,
    cyclic_orbit_family,
    dihedral_family,
    expanded,
    half_dihedral_family,
    lambda_expanded,
    nested_family,
    product_pipeline,
    semidirect_family,
    semidirect_identity_family,
)
from .data.synth import action_multipliers, random_pairs
from .errors import InfeasibleError, VerificationMismatch
from .graphcore import is_dsrg, matmul, verify_dsrg
from .groupring import cayley_criterion
from .groups import SemidirectSpec, semidirect_cyclic
from .paramlab import complement_params, enumerate_feasible, spectrum
from .quotients import (
    aut_bound,
    bounds_check,
    brute_force_aut,
    pin_partition,
    pout_partition,
    quotient_graph,
    stabilizer_facts,
)
from .spectral import (
    Verdict,
    charpoly_factors,
    derive_split,
    derive_starred,
    eigenvalue_list,
    minpoly_check,
    profile,
    split_criterion,
    starred_criterion,
    uniform_criterion,
)

logger = logging.getLogger(__name__)


def _map(func, items, desc, progress=False, client=None):
    """Apply func to every argument tuple, through client when given."""

    if client is not None:
        futures = [client.submit(func, *item) for item in items]
        results = []
        for future in tqdm(futures, desc, disable=not progress):
            results.append(future.result())
            future.cancel()
        return results
    return [func(*item) for item in tqdm(items, desc, disable=not progress)]


def standard_constructions():
    """One instance of every family, the product pipelines included."""

    base = semidirect_family(3, 2, [1])
    identity_base = semidirect_identity_family(3, 2, [1])
    return [
        base,
        semidirect_family(3, 2, [1, 2]),
        semidirect_family(5, 4, [1, 2]),
        semidirect_family(5, 4, [1, 4]),
        identity_base,
        cyclic_orbit_family(7, 3, 2, with_identity=False),
        cyclic_orbit_family(7, 3, 2, with_identity=True),
        nested_family(3, 2, 2),
        dihedral_family(4),
        dihedral_family(6),
        half_dihedral_family(5),
        complemented(dihedral_family(4)),
        expanded(base, 2),
        lambda_expanded(identity_base, 2),
        product_pipeline(3, "odd"),
        product_pipeline(3, "odd-complement"),
        product_pipeline(4, "dihedral-complement"),
    ]


def _label(construction):
    recipe = construction.recipe
    return f"{recipe.family.value} {recipe.params}"


# Spectral criteria


def _spectral_case(n, m, k, H, starred, tolerance=1e-9):
    spec = SemidirectSpec(n, m, k)
    G = semidirect_cyclic(spec)
    exponents = ((0,) if starred else ()) + tuple(H)
    members = [G.pair(a, j) for a in exponents for j in range(m) if (a, j) != (0, 0)]
    C = cayley_graph(G, G.subset(members))
    D = C.digraph
    verified = verify_dsrg(D)
    P = profile(spec, H, starred=starred, tolerance=tolerance)
    case = f"n={n} m={m} k={k} H={list(H)} starred={starred}"

    # trace identities hold whether or not the sums are integers
    eigenvalues = eigenvalue_list(P)
    trace_square = int(np.trace(matmul(D.adjacency, D.adjacency)))
    scale = 1e-6 * P.order
    if abs(eigenvalues.sum()) > scale or abs((eigenvalues**2).sum() - trace_square) > scale * P.order:
        raise VerificationMismatch(f"{case}: factored spectrum fails the trace identities")

    uniform = None
    if starred:
        found = derive_starred(P)
        verdict = starred_criterion(P, *found) if found else Verdict(False, reason="no single nonzero value")
        rho, sigma = (found[1], -1) if found else (None, None)
    else:
        uniform = uniform_criterion(P)
        found = derive_split(P)
        verdict = split_criterion(P, *found) if found else Verdict(False, reason="no single negative value")
        rho, sigma = (0, found[1]) if found else (None, None)

    if bool(verdict) != is_dsrg(verified):
        raise VerificationMismatch(f"{case}: criterion says {verdict}, direct check gives {verified}")
    if uniform and uniform.implied != verified:
        raise VerificationMismatch(f"{case}: uniform criterion implies {uniform.implied}, verified {verified}")
    if verdict:
        if verdict.implied != verified:
            raise VerificationMismatch(f"{case}: criterion implies {verdict.implied}, verified {verified}")
        if not minpoly_check(D, rho, sigma, verified.mu):
            raise VerificationMismatch(f"{case}: (A-{rho}I)(A-{sigma}I) is not {verified.mu}J")
        try:
            exact = spectrum(verified).multiset()
        except InfeasibleError:
            exact = None
        if exact is not None and charpoly_factors(P) != exact:
            raise VerificationMismatch(f"{case}: factored spectrum {dict(charpoly_factors(P))} != {dict(exact)}")

    return {
        "n": n,
        "m": m,
        "k": k,
        "H": " ".join(map(str, H)),
        "starred": starred,
        "integral": P.integral,
        "uniform": bool(uniform) if uniform is not None else None,
        "criterion": bool(verdict),
        "tuple": str(verified) if is_dsrg(verified) else "",
    }


def spectral_cases(n_max=8, m_max=4):
    """(n, m, k, H) for every nontrivial action and nonempty proper H."""

    cases = []
    for n in range(3, n_max + 1):
        for m in range(2, m_max + 1):
            for k in action_multipliers(n, m):
                if k % n == 1:
                    continue
                for size in range(1, n - 1):
                    for H in itertools.combinations(range(1, n), size):
                        cases.append((n, m, k, H))
    return cases


def spectral_sweep(n_max=8, m_max=4, tolerance=1e-9, progress=False, client=None):
    """
    Compare the spectral criteria with verify_dsrg on every semidirect
    Cayley graph with n <= n_max, 2 <= m <= m_max, starred and unstarred.

    Returns
    -------
    df: DataFrame
        one row per case with the criterion outcome and the verified tuple

    """

    items = [case + (starred, tolerance) for case in spectral_cases(n_max, m_max) for starred in (False, True)]
    rows = _map(_spectral_case, items, "spectral cases", progress, client)
    df = pd.DataFrame(rows)
    logger.info("spectral sweep: %d cases, %d DSRGs", len(df), int(df["criterion"].sum()) if len(df) else 0)
    return df


# Both oracles


def _oracle_case(source, G, S):
    matrix = verify_dsrg(cayley_graph(G, S).digraph)
    group = cayley_criterion(G, S)
    same = matrix == group if is_dsrg(matrix) else (not is_dsrg(group) and group.condition == matrix.condition)
    if not same:
        raise VerificationMismatch(f"{source} on {G.name}: matrix check {matrix}, group ring {group}")
    return {
        "source": source,
        "group": G.name,
        "order": G.order,
        "size": len(S),
        "result": str(matrix) if is_dsrg(matrix) else matrix.condition,
    }


def dual_oracle_sweep(constructions=None, count=100, max_order=24, seed=0, progress=False, client=None):
    """Run the matrix check and the group ring criterion on every Cayley
    construction and on count seeded random (G, S) pairs."""

    if constructions is None:
        constructions = standard_constructions()
    items = [(_label(c), c.cayley.group, c.cayley.connection) for c in constructions if c.cayley is not None]
    items += [("random", G, S) for G, S in random_pairs(count, max_order, seed)]
    return pd.DataFrame(_map(_oracle_case, items, "oracle pairs", progress, client))


# Stabilizers, quotients and bounds


def _theorem_case(construction, aut_max_order=10):
    D = construction.digraph
    params = construction.params
    row = {"family": _label(construction), "tuple": str(params)}
    for partition in (pout_partition, pin_partition):
        bounds_check(D, partition(D), params)

    C = construction.cayley
    if C is None:
        return row
    report = stabilizer_facts(C)
    row["G_S"], row["G_S_inv"] = report.orders
    collapses = {"out": report.out_quotient, "in": report.in_quotient}
    for direction in ("out", "in"):
        row[f"{direction}_quotient"] = str(quotient_graph(C, direction).params) if collapses[direction] else ""
    if params.is_proper and params.n <= aut_max_order:
        bound = aut_bound(C)
        count = brute_force_aut(D, aut_max_order)
        if count > bound:
            raise VerificationMismatch(f"{row['family']}: |Aut| = {count} exceeds the bound {bound}")
        row["aut"], row["aut_bound"] = count, bound
    return row


def theorem_suite(constructions=None, aut_max_order=10, progress=False, client=None):
    """Bounds, stabilizer facts, quotients and the automorphism bound on
    every construction."""

    if constructions is None:
        constructions = standard_constructions()
    items = [(c, aut_max_order) for c in constructions]
    return pd.DataFrame(_map(_theorem_case, items, "constructions", progress, client))


def feasibility_audit(constructions=None, n_max=20, progress=False):
    """
    Check that every proper construction with n <= n_max, and its complement,
    passes the feasibility sieve.

    Returns
    -------
    df: DataFrame
        one row per construction checked

    """

    if constructions is None:
        constructions = standard_constructions()
    sieve = set(enumerate_feasible(n_max, progress=progress))
    rows = []
    for construction in constructions:
        params = construction.params
        if params.n > n_max or not params.is_proper:
            continue
        if params not in sieve:
            raise VerificationMismatch(f"{params} from {_label(construction)} is missing from the sieve")
        complement = complement_params(params)
        if complement.is_proper and complement not in sieve:
            raise VerificationMismatch(f"complement {complement} of {params} is missing from the sieve")
        rows.append({"family": _label(construction), "tuple": str(params), "complement": str(complement)})
    return pd.DataFrame(rows, columns=["family", "tuple", "complement"])
