import numpy as np

from ..groups import SemidirectSpec, dihedral, direct_product, semidirect_cyclic, unit_residues


def action_multipliers(n, m):
    """All k with gcd(k, n) = 1 and k^m = 1 mod n."""

    return [k for k in unit_residues(n) if pow(k, m, n) == 1 % n] if n > 1 else [0]


def random_semidirect_spec(rng, max_order=24):
    """Random valid C_n x| C_m data with nm <= max_order"""

    n = int(rng.integers(1, max_order + 1))
    m = int(rng.integers(1, max_order // n + 1))
    k = int(rng.choice(action_multipliers(n, m)))
    return SemidirectSpec(n, m, k)


def random_group(rng, max_order=24):
    """Random semidirect, dihedral or doubled group of order at most max_order"""

    kind = rng.integers(3)
    if kind == 1 and max_order >= 4:
        return dihedral(int(rng.integers(2, max_order // 2 + 1)))
    if kind == 2 and max_order >= 2:
        base = semidirect_cyclic(random_semidirect_spec(rng, max_order // 2))
        return direct_product(base, 2)
    return semidirect_cyclic(random_semidirect_spec(rng, max_order))


def random_connection_set(rng, G, density=0.5):
    """Each non-identity element joins with probability density"""

    keep = rng.random(G.order) < density
    keep[G.identity] = False
    return G.subset(np.nonzero(keep)[0].tolist())


def random_pairs(count, max_order=24, seed=0):
    """count seeded (group, connection set) pairs"""

    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        G = random_group(rng, max_order)
        pairs.append((G, random_connection_set(rng, G, density=rng.uniform(0.2, 0.8))))
    return pairs
