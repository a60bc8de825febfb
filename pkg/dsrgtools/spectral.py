"""
Root-of-unity sums for Cayley graphs of C_n x| C_m and the DSRG criteria
read off them.

For H a set of exponents the graph has connection set H x C_m, or
(H + {0}) x C_m minus e in the starred case. Its non-zero spectrum is given
by the sums

    E_u(h) = sum over a in H of exp(2 pi i u a k^h / n),   S_u = sum_h E_u(h).

Floats classify the sums with a tolerance; exact decisions are left to
``minpoly_check`` on the integer adjacency matrix.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import BadParamsError, NonIntegerSpectrumError, OutOfRangeError
from .graphcore import Digraph, identity, matmul, ones
from .groups import SemidirectSpec
from .paramlab import ParamTuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumValue:
    """A complex sum with its nearest integer and the rounding residual."""

    value: complex
    rounded: int
    residual: float
    integral: bool

    @classmethod
    def classify(cls, value: complex, tolerance: float) -> "SumValue":
        rounded = int(round(value.real))
        residual = abs(value - rounded)
        integral = abs(value.real - rounded) <= tolerance and abs(value.imag) <= tolerance
        return cls(complex(value), rounded, float(residual), bool(integral))


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """
    Sums S_u and E_u(h) of one semidirect Cayley graph.

    Parameters
    ----------
    spec: SemidirectSpec
    H: exponents of the connection set, without the 0 added when starred
    starred: whether 0 is added to H and e removed from the connection set
    s_values: S_0..S_{n-1} as SumValue
    e_table: n x m complex array, e_table[u, h] = E_u(h)
    e_zero: n x m bool array, True where |E_u(h)| <= tolerance
    tolerance: float
    """

    spec: SemidirectSpec
    H: Tuple[int, ...]
    starred: bool
    s_values: Tuple[SumValue, ...]
    e_table: np.ndarray
    e_zero: np.ndarray
    tolerance: float

    @property
    def v(self) -> int:
        return len(self.H)

    @property
    def degree(self) -> int:
        m = self.spec.m
        return (self.v + 1) * m - 1 if self.starred else self.v * m

    @property
    def order(self) -> int:
        return self.spec.n * self.spec.m

    @property
    def integral(self) -> bool:
        return all(s.integral for s in self.s_values)

    def nontrivial(self) -> Tuple[SumValue, ...]:
        return self.s_values[1:]

    def zero_row(self, u: int) -> bool:
        return bool(self.e_zero[u].all())

    def rounded(self) -> Tuple[int, ...]:
        return tuple(s.rounded for s in self.s_values)


def profile(spec: SemidirectSpec, H: Iterable[int], starred: bool = False, tolerance: float = 1e-9) -> SpectralProfile:
    """
    Compute every E_u(h) and S_u for the semidirect spec and exponents H.

    Parameters
    ----------
    spec: SemidirectSpec
    H: iterable of int
        exponents in 1..n-1; repeated values are summed repeatedly
    starred: bool
        add the exponent 0
    tolerance: float
        for integer and zero classification

    Returns
    -------
    profile: SpectralProfile

    """

    n, m, k = spec.n, spec.m, spec.k
    H = tuple(int(a) for a in H)
    if any(not 1 <= a <= n - 1 for a in H):
        raise OutOfRangeError(f"exponents must lie in 1..{n - 1}, got {H}")
    exponents = np.array(((0,) if starred else ()) + H, dtype=np.int64)

    u = np.arange(n)[:, None, None]
    powers = np.array([pow(k, h, n) for h in range(m)], dtype=np.int64)[None, :, None]
    # reduce mod n before scaling so the phases stay exact
    phases = (u * powers * exponents[None, None, :]) % n
    e_table = np.exp(2j * np.pi * phases / n).sum(axis=2)
    sums = e_table.sum(axis=1)
    s_values = tuple(SumValue.classify(complex(s), tolerance) for s in sums)
    e_zero = np.abs(e_table) <= tolerance
    return SpectralProfile(spec, H, starred, s_values, e_table, e_zero, tolerance)


def eigenvalue_list(P: SpectralProfile) -> np.ndarray:
    """All nm eigenvalues (complex) from the factored characteristic polynomial."""

    n, m = P.spec.n, P.spec.m
    shift = 1 if P.starred else 0
    values = [complex(P.degree)] + [complex(-shift)] * (n * (m - 1))
    values += [s.value - shift for s in P.nontrivial()]
    return np.array(values)


def charpoly_factors(P: SpectralProfile) -> Counter:
    """
    Eigenvalue multiset of the graph as a Counter.

    Unstarred: {vm: 1, 0: n(m-1), S_u: 1 each}; starred:
    {(v+1)m-1: 1, -1: n(m-1), S_u - 1: 1 each}. Coinciding eigenvalues merge.

    Raises
    ------
    NonIntegerSpectrumError
        when some S_u is not integer-classified
    """

    for u, s in enumerate(P.s_values):
        if not s.integral:
            raise NonIntegerSpectrumError(f"S_{u} = {s.value:.6g} is not an integer")
    n, m = P.spec.n, P.spec.m
    shift = 1 if P.starred else 0
    counts = Counter({P.degree: 1})
    if m > 1:
        counts[-shift] += n * (m - 1)
    for s in P.nontrivial():
        counts[s.rounded - shift] += 1
    return counts


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a spectral criterion.

    Parameters
    ----------
    yes: bool
    value: sigma (uniform, split) or rho (starred) when yes
    multiplicity: number of S_u carrying the value
    implied: tuple the graph then has
    witness: first u breaking the criterion when not yes
    reason: short description of the failure
    """

    yes: bool
    value: Optional[int] = None
    multiplicity: Optional[int] = None
    implied: Optional[ParamTuple] = None
    witness: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.yes

    def __str__(self):
        if self.yes:
            return f"YES value={self.value} count={self.multiplicity} -> {self.implied}"
        return f"NO at u={self.witness}: {self.reason}"


def _implied(n: int, k: int, mu_num: int, lam_shift: int, t_shift: int) -> Optional[ParamTuple]:
    if mu_num % n:
        return None
    mu = mu_num // n
    try:
        return ParamTuple(n, k, mu, mu + lam_shift, mu + t_shift)
    except OutOfRangeError:
        return None


def _require_starred(P: SpectralProfile, starred: bool):
    if P.starred != starred:
        kind = "a starred" if starred else "an unstarred"
        raise BadParamsError(f"this criterion needs {kind} profile")


def uniform_criterion(P: SpectralProfile) -> Verdict:
    """
    All S_u, u >= 1, equal one negative integer sigma.

    On yes the graph has t = mu = v(vm - sigma)/n and lam = mu + sigma.
    """

    _require_starred(P, False)
    rest = P.nontrivial()
    if not rest:
        return Verdict(False, witness=0, reason="no nontrivial sums")
    first = rest[0]
    for u, s in enumerate(rest, start=1):
        if not s.integral:
            return Verdict(False, witness=u, reason=f"S_{u} = {s.value:.6g} is not an integer")
        if s.rounded != first.rounded:
            return Verdict(False, witness=u, reason=f"S_{u} = {s.rounded} differs from S_1 = {first.rounded}")
    sigma = first.rounded
    if sigma >= 0:
        return Verdict(False, witness=1, reason=f"common value {sigma} is not negative")
    K = P.degree
    implied = _implied(P.order, K, K * (K - sigma), sigma, 0)
    if implied is None:
        return Verdict(False, witness=1, reason=f"sigma={sigma} gives no integral tuple")
    return Verdict(True, sigma, len(rest), implied)


def _split_check(P: SpectralProfile, count: int, value: int, target: int) -> Verdict:
    """Exactly count of the S_u equal target, the others are 0 with zero E rows."""

    hits = 0
    for u, s in enumerate(P.nontrivial(), start=1):
        if not s.integral:
            return Verdict(False, witness=u, reason=f"S_{u} = {s.value:.6g} is not an integer")
        if s.rounded == target:
            hits += 1
        elif s.rounded == 0:
            if not P.zero_row(u):
                h = int(np.nonzero(~P.e_zero[u])[0][0])
                return Verdict(False, witness=u, reason=f"S_{u} = 0 but E_{u}({h}) = {P.e_table[u, h]:.6g}")
        else:
            return Verdict(False, witness=u, reason=f"S_{u} = {s.rounded} is neither {target} nor 0")
    if hits != count:
        return Verdict(False, witness=None, reason=f"{hits} sums equal {target}, expected {count}")
    return Verdict(True, value, count)


def split_criterion(P: SpectralProfile, s: int, sigma: int) -> Verdict:
    """
    Exactly s of the S_u equal sigma < 0, the rest are 0 with every E_u(h) = 0.

    On yes the graph has t = mu = K(K - sigma)/N and lam = mu + sigma with
    K = vm, N = nm.
    """

    _require_starred(P, False)
    if sigma >= 0:
        raise BadParamsError(f"sigma must be negative, got {sigma}")
    verdict = _split_check(P, s, sigma, sigma)
    if not verdict:
        return verdict
    K = P.degree
    implied = _implied(P.order, K, K * (K - sigma), sigma, 0)
    if implied is None:
        return Verdict(False, reason=f"sigma={sigma} gives no integral tuple")
    return Verdict(True, sigma, s, implied)


def starred_criterion(P: SpectralProfile, r: int, rho: int) -> Verdict:
    """
    Exactly r of the starred sums equal 1 + rho, the rest are 0 with every
    starred E_u(h) = 0.

    On yes the graph has mu = (K(K - rho + 1) - rho)/N, lam = mu + rho - 1,
    t = mu + rho with K = (v+1)m - 1, N = nm.
    """

    _require_starred(P, True)
    if rho == -1:
        raise BadParamsError("rho = -1 makes the target sum 0 and the criterion ambiguous")
    verdict = _split_check(P, r, rho, rho + 1)
    if not verdict:
        return verdict
    K = P.degree
    implied = _implied(P.order, K, K * (K - rho + 1) - rho, rho - 1, rho)
    if implied is None:
        return Verdict(False, reason=f"rho={rho} gives no integral tuple")
    return Verdict(True, rho, r, implied)


def _single_nonzero(P: SpectralProfile) -> Optional[Tuple[int, int]]:
    rest = P.nontrivial()
    if not all(s.integral for s in rest):
        return None
    values = {s.rounded for s in rest if s.rounded != 0}
    if len(values) != 1:
        return None
    (value,) = values
    return sum(1 for s in rest if s.rounded == value), value


def derive_split(P: SpectralProfile) -> Optional[Tuple[int, int]]:
    """(s, sigma) read off an unstarred profile, or None when its nonzero
    sums are not one negative integer."""

    found = _single_nonzero(P)
    if found is None or found[1] >= 0:
        return None
    return found


def derive_starred(P: SpectralProfile) -> Optional[Tuple[int, int]]:
    """(r, rho) read off a starred profile, or None."""

    found = _single_nonzero(P)
    if found is None:
        return None
    count, value = found
    return count, value - 1


def minpoly_check(D: Digraph, rho: int, sigma: int, mu: Optional[int] = None) -> bool:
    """Exact test that (A - rho I)(A - sigma I) is a constant multiple of J.

    With mu given the constant must equal mu.
    """

    A = D.adjacency
    n = D.order
    product = matmul(A - rho * identity(n), A - sigma * identity(n))
    constant = int(product[0, 0]) if mu is None else mu
    return bool(np.array_equal(product, constant * ones(n)))


def tuple_minpoly_check(D: Digraph, p: ParamTuple) -> bool:
    """Exact test of A^2 - (lam - mu)A + (mu - t)I = mu J."""

    A = D.adjacency
    n = D.order
    if n != p.n:
        return False
    lhs = matmul(A, A) - (p.lam - p.mu) * A + (p.mu - p.t) * identity(n)
    return bool(np.array_equal(lhs, p.mu * ones(n)))
