"""Integer arithmetic on DSRG parameter tuples.

Feasibility conditions, eigenvalues, complementation, the classification of
balanced tuples and the parameter map of the Kronecker product construction.
Everything here is exact: square roots are taken with ``math.isqrt``.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from tqdm import tqdm

from .errors import InfeasibleError, OutOfRangeError, PreconditionError

logger = logging.getLogger(__name__)


class Flag(str, Enum):
    DSRG = "DSRG"
    SRG = "SRG"
    TOURNAMENT = "tournament"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True, order=True)
class ParamTuple:
    """Parameters (n, k, mu, lambda, t) of a directed strongly regular graph.

    Tuples order lexicographically in that field order.

    Parameters
    ----------
    n: number of vertices
    k: in- and out-degree
    mu: number of 2-paths between non-adjacent distinct vertices
    lam: number of 2-paths along an arc
    t: number of 2-cycles through a vertex
    """

    n: int
    k: int
    mu: int
    lam: int
    t: int

    def __post_init__(self):
        for name in ("n", "k", "mu", "lam", "t"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise OutOfRangeError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n < 1:
            raise OutOfRangeError(f"n must be positive, got {self.n}")
        if self.lam < 0 or self.mu < 0:
            raise OutOfRangeError(f"negative path count in {self}")
        if not 0 <= self.t <= self.k < self.n:
            raise OutOfRangeError(f"need 0 <= t <= k < n, got {self}")

    @property
    def flag(self) -> Flag:
        if self.t == self.k:
            return Flag.SRG
        if self.t == 0:
            return Flag.TOURNAMENT
        return Flag.DSRG

    @property
    def is_proper(self) -> bool:
        return self.flag is Flag.DSRG

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.n, self.k, self.mu, self.lam, self.t)

    def gcd(self) -> int:
        return math.gcd(math.gcd(math.gcd(self.n, self.k), math.gcd(self.mu, self.lam)), self.t)

    def divided(self, q: int) -> "ParamTuple":
        """All five parameters divided by q."""
        values = self.as_tuple()
        if q < 1 or any(v % q for v in values):
            raise InfeasibleError(f"{self} is not divisible by {q}")
        return ParamTuple(*(v // q for v in values))

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class SpectrumTriple:
    """Eigenvalues k, rho, sigma with multiplicities 1, r, s."""

    k: int
    rho: int
    sigma: int
    r: int
    s: int
    d: int

    @property
    def eigenvalues(self) -> Tuple[int, int, int]:
        return (self.k, self.rho, self.sigma)

    @property
    def multiplicities(self) -> Tuple[int, int, int]:
        return (1, self.r, self.s)

    def trace(self) -> int:
        return self.k + self.rho * self.r + self.sigma * self.s

    def multiset(self) -> Counter:
        """Eigenvalue multiset; coinciding eigenvalues are merged."""
        counts = Counter()
        for value, mult in zip(self.eigenvalues, self.multiplicities):
            if mult:
                counts[value] += mult
        return counts


@dataclass
class FeasibilityReport:
    params: ParamTuple
    status: Status
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class ClassLabel:
    """One of the four balanced classes R1..R4 with free parameter n_r and
    multiplier m."""

    label: str
    n_r: int
    m: int

    def reconstruct(self) -> ParamTuple:
        return ParamTuple(*_CLASS_FORMULAS[self.label](self.n_r, self.m))


def _discriminant(p: ParamTuple) -> int:
    return (p.mu - p.lam) ** 2 + 4 * (p.t - p.mu)


def _exact_sqrt(value: int) -> Optional[int]:
    if value < 0:
        return None
    root = math.isqrt(value)
    return root if root * root == value else None


def check_feasible(p: ParamTuple) -> FeasibilityReport:
    """
    Test the necessary conditions for a proper DSRG with parameters p.

    Parameters
    ----------
    p: ParamTuple
        tuple to test

    Returns
    -------
    report: FeasibilityReport
        status is NOT_APPLICABLE for t=0 or t=k, otherwise PASS or FAIL
        with the names of all violated conditions

    """

    if not p.is_proper:
        return FeasibilityReport(p, Status.NOT_APPLICABLE, [f"t={p.t} is outside 0<t<k"])

    n, k, mu, lam, t = p.as_tuple()
    violations = []
    if k * (k + mu - lam) != t + (n - 1) * mu:
        violations.append("k(k+mu-lam) = t+(n-1)mu")

    d = _exact_sqrt(_discriminant(p))
    if d is None or d == 0:
        violations.append("(mu-lam)^2+4(t-mu) is a positive square")
    else:
        numerator = 2 * k - (mu - lam) * (n - 1)
        if numerator % d:
            violations.append("d divides 2k-(mu-lam)(n-1)")
        else:
            quotient = numerator // d
            if (quotient - (n - 1)) % 2:
                violations.append("quotient = n-1 (mod 2)")
            if abs(quotient) > n - 1:
                violations.append("|quotient| <= n-1")

    if not 0 <= lam < t:
        violations.append("0 <= lam < t")
    if not 0 < mu <= t:
        violations.append("0 < mu <= t")
    if not -2 * (k - t - 1) <= mu - lam <= 2 * (k - t):
        violations.append("-2(k-t-1) <= mu-lam <= 2(k-t)")

    if d:
        try:
            spectrum(p)
        except InfeasibleError:
            violations.append("multiplicities r, s are nonnegative integers")

    status = Status.FAIL if violations else Status.PASS
    return FeasibilityReport(p, status, violations)


def spectrum(p: ParamTuple) -> SpectrumTriple:
    """Eigenvalues and multiplicities of a DSRG with parameters p.

    Works for any tuple whose discriminant is a positive square and whose
    multiplicities come out as nonnegative integers, SRG tuples included.
    """

    d = _exact_sqrt(_discriminant(p))
    if not d:
        raise InfeasibleError(f"{p}: (mu-lam)^2+4(t-mu) is not a positive square")
    # rho and sigma are integers since d and mu-lam have the same parity
    rho = (-(p.mu - p.lam) + d) // 2
    sigma = (-(p.mu - p.lam) - d) // 2
    r_num = -(p.k + sigma * (p.n - 1))
    s_num = p.k + rho * (p.n - 1)
    if r_num % d or s_num % d:
        raise InfeasibleError(f"{p}: multiplicities are not integral")
    r, s = r_num // d, s_num // d
    if r < 0 or s < 0:
        raise InfeasibleError(f"{p}: negative multiplicity (r={r}, s={s})")
    return SpectrumTriple(k=p.k, rho=rho, sigma=sigma, r=r, s=s, d=d)


def complement_params(p: ParamTuple) -> ParamTuple:
    """Parameters of the complement J-I-A."""

    n, k, mu, lam, t = p.as_tuple()
    shift = n - 2 * k
    values = (n, n - k - 1, shift + lam, shift + mu - 2, shift + t - 1)
    if min(values) < 0:
        raise OutOfRangeError(f"complement of {p} has a negative parameter {values}")
    return ParamTuple(*values)


def _r1(n_r, m):
    return (2 * n_r * m, n_r * m, (n_r // 2 + 1) * m, (n_r // 2 - 1) * m, (n_r // 2 + 1) * m)


def _r2(n_r, m):
    return (2 * n_r * m, n_r * m, (n_r + 1) // 2 * m, (n_r - 1) // 2 * m, (n_r + 1) // 2 * m)


def _r3(n_r, m):
    return (2 * n_r * m, (n_r - 1) * m, (n_r - 1) // 2 * m, (n_r - 3) // 2 * m, (n_r - 1) // 2 * m)


def _r4(n_r, m):
    return (2 * n_r * m, (n_r - 2) * m, (n_r // 2 - 1) * m, (n_r // 2 - 3) * m, (n_r // 2 - 1) * m)


_CLASS_FORMULAS = {"R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4}
_CLASS_DOMAIN = {
    "R1": lambda n_r: n_r % 4 == 0,
    "R2": lambda n_r: n_r % 2 == 1,
    "R3": lambda n_r: n_r % 2 == 1 and n_r >= 3,
    "R4": lambda n_r: n_r % 4 == 0 and n_r >= 8,
}


def is_balanced(p: ParamTuple) -> bool:
    return p.t == p.mu and 4 * p.k == p.n + 2 * p.lam + 2 * p.mu


def classify_balanced(p: ParamTuple) -> Optional[ClassLabel]:
    """
    Match a tuple with t=mu and 4k=n+2lam+2mu against the classes R1..R4.

    Multipliers are tried in increasing order, classes in label order.

    Returns
    -------
    label: ClassLabel or None
        None when p is not balanced or no class reproduces it

    """

    if not is_balanced(p):
        return None
    target = p.as_tuple()
    for m in range(1, p.n // 2 + 1):
        if p.n % (2 * m):
            continue
        n_r = p.n // (2 * m)
        for label, formula in _CLASS_FORMULAS.items():
            if _CLASS_DOMAIN[label](n_r) and formula(n_r, m) == target:
                return ClassLabel(label, n_r, m)
    return None


def enumerate_feasible(n_max: int, progress: bool = False) -> List[ParamTuple]:
    """
    All tuples with 0<t<k<n<=n_max passing check_feasible.

    Parameters
    ----------
    n_max: int
        largest vertex count
    progress: bool
        show a progress bar over n

    Returns
    -------
    tuples: list of ParamTuple
        sorted lexicographically

    """

    if n_max < 1:
        raise OutOfRangeError(f"n_max must be at least 1, got {n_max}")

    found = []
    for n in tqdm(range(1, n_max + 1), "Sieving", disable=not progress):
        for k in range(2, n):
            for t in range(1, k):
                for mu in range(1, t + 1):
                    for lam in range(0, t):
                        # cheapest condition first
                        if k * (k + mu - lam) != t + (n - 1) * mu:
                            continue
                        p = ParamTuple(n, k, mu, lam, t)
                        if check_feasible(p).passed:
                            found.append(p)
    found.sort()
    logger.debug("sieve up to n=%d kept %d tuples", n_max, len(found))
    return found


def product_params(p: ParamTuple) -> ParamTuple:
    """Parameters of (J-A) x A + A x (J-A) for a balanced tuple p."""

    if not is_balanced(p):
        raise PreconditionError(f"{p} needs t=mu and 4k=n+2lam+2mu")
    n, k, mu, lam, t = p.as_tuple()
    return ParamTuple(
        n * n,
        2 * k * (n - k),
        2 * (k * k - 2 * mu * lam),
        2 * (k * k - lam * lam - mu * mu),
        2 * (k * k - 2 * mu * lam),
    )

