"""Exact integer matrices, digraphs and the DSRG matrix-equation check.

Matrices are numpy int64 arrays. Products go through ``matmul`` and
``kronecker`` which bound the result before computing it and raise
IntegerOverflowError instead of wrapping around.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import FormatError, IntegerOverflowError, PreconditionError
from .paramlab import ParamTuple, is_balanced

logger = logging.getLogger(__name__)

INT_LIMIT = 2**62


def as_matrix(values) -> np.ndarray:
    """Square int64 copy of values."""

    matrix = np.array(values, dtype=np.int64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise FormatError(f"expected a square matrix, got shape {matrix.shape}")
    return matrix


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def ones(n: int) -> np.ndarray:
    return np.ones((n, n), dtype=np.int64)


def _magnitude(matrix: np.ndarray) -> int:
    return int(np.abs(matrix).max()) if matrix.size else 0


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two integer matrices."""

    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    bound = _magnitude(a) * _magnitude(b) * a.shape[1]
    if bound >= INT_LIMIT:
        raise IntegerOverflowError(f"product entries may reach {bound}")
    return a.astype(np.int64) @ b.astype(np.int64)


def kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Block matrix (a_ij * b)."""

    bound = _magnitude(a) * _magnitude(b)
    if bound >= INT_LIMIT:
        raise IntegerOverflowError(f"Kronecker entries may reach {bound}")
    return np.kron(a.astype(np.int64), b.astype(np.int64))


@dataclass(frozen=True, eq=False)
class Digraph:
    """
    Loopless digraph given by a 0/1 adjacency matrix.

    Parameters
    ----------
    adjacency: square 0/1 int64 array with zero diagonal, read-only
    labels: optional vertex names, e.g. group elements or cosets
    """

    adjacency: np.ndarray
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        matrix = as_matrix(self.adjacency)
        if matrix.shape[0] == 0:
            raise FormatError("a digraph needs at least one vertex")
        if not np.isin(matrix, (0, 1)).all():
            raise FormatError("adjacency entries must be 0 or 1")
        if np.any(np.diag(matrix)):
            raise FormatError("adjacency has loops")
        matrix.setflags(write=False)
        object.__setattr__(self, "adjacency", matrix)
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != matrix.shape[0]:
                raise FormatError(f"{len(labels)} labels for {matrix.shape[0]} vertices")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]], labels=None) -> "Digraph":
        if n < 1:
            raise FormatError(f"a digraph needs at least one vertex, got n={n}")
        matrix = np.zeros((n, n), dtype=np.int64)
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"arc ({u},{v}) outside 0..{n - 1}")
            matrix[u, v] = 1
        return cls(matrix, labels)

    @property
    def order(self) -> int:
        return self.adjacency.shape[0]

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for u, v in zip(*np.nonzero(self.adjacency)):
            yield int(u), int(v)

    def arc_count(self) -> int:
        return int(self.adjacency.sum())

    def label(self, vertex: int) -> str:
        return self.labels[vertex] if self.labels else str(vertex)

    def same_arcs(self, other: "Digraph") -> bool:
        return np.array_equal(self.adjacency, other.adjacency)

    def content_hash(self) -> str:
        """SHA-256 of the order and the row-major adjacency bytes."""
        digest = hashlib.sha256()
        digest.update(str(self.order).encode())
        digest.update(np.ascontiguousarray(self.adjacency, dtype=np.uint8).tobytes())
        return digest.hexdigest()


@dataclass(frozen=True)
class NotDSRG:
    """
    Evidence that a graph (or group ring square) is not a DSRG.

    Parameters
    ----------
    condition: first violated condition: 'regularity', 't-class',
        'lambda-class', 'mu-class', 'loop' or 'divisibility'
    witness: position(s) or group element(s) where it fails
    detail: human readable description with the conflicting values
    """

    condition: str
    witness: Tuple = ()
    detail: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return f"NotDSRG: {self.detail or self.condition}"


VerifyResult = Union[ParamTuple, NotDSRG]


def is_dsrg(result: VerifyResult) -> bool:
    return isinstance(result, ParamTuple)


def _constant_class(values: np.ndarray, positions: np.ndarray, condition: str, labeller):
    """Common value of values at positions, or NotDSRG with the first
    position that differs from the first one."""

    if len(positions) == 0:
        return None
    first = values[0]
    bad = np.nonzero(values != first)[0]
    if len(bad) == 0:
        return int(first)
    ref, odd = labeller(positions[0]), labeller(positions[bad[0]])
    return NotDSRG(
        condition,
        (ref, odd),
        f"{condition} non-constant at {odd}: {values[bad[0]]} vs {first} at {ref}",
    )


def classify_square(
    n: int, k: int, square: np.ndarray, arcs: np.ndarray, labeller=str
) -> VerifyResult:
    """
    Read t, lambda, mu off A^2 (or a group ring square laid out the same way).

    Parameters
    ----------
    n: int
        vertex count
    k: int
        degree
    square: 2d array
        entries of A^2
    arcs: 2d bool array
        True where A has an arc
    labeller: callable
        turns an index tuple into the name used in diagnostics

    Returns
    -------
    result: ParamTuple or NotDSRG
        an empty lambda class gives lambda=0, an empty mu class gives mu=t

    """

    diagonal = np.eye(n, dtype=bool)
    positions = {
        "t-class": np.argwhere(diagonal),
        "lambda-class": np.argwhere(arcs),
        "mu-class": np.argwhere(~arcs & ~diagonal),
    }
    values = {}
    for condition, where in positions.items():
        entries = square[where[:, 0], where[:, 1]] if len(where) else np.array([])
        found = _constant_class(entries, where, condition, lambda pos: labeller(tuple(int(i) for i in pos)))
        if isinstance(found, NotDSRG):
            return found
        values[condition] = found
    t = values["t-class"] if values["t-class"] is not None else 0
    lam = values["lambda-class"] if values["lambda-class"] is not None else 0
    mu = values["mu-class"] if values["mu-class"] is not None else t
    return ParamTuple(n, k, mu, lam, t)


def verify_dsrg(D: Digraph) -> VerifyResult:
    """
    Check A^2 = tI + lam A + mu (J-I-A) and AJ = JA = kJ exactly.

    Conditions are tested in the order regularity, t-class, lambda-class,
    mu-class; the first failure is reported with a witness position.

    Parameters
    ----------
    D: Digraph

    Returns
    -------
    result: ParamTuple or NotDSRG

    """

    A = D.adjacency
    n = D.order
    out_deg = A.sum(axis=1)
    in_deg = A.sum(axis=0)
    k = int(out_deg[0])
    for degrees, axis in ((out_deg, "out"), (in_deg, "in")):
        bad = np.nonzero(degrees != k)[0]
        if len(bad):
            v = int(bad[0])
            return NotDSRG(
                "regularity",
                (v,),
                f"regularity fails: {axis}-degree {int(degrees[v])} at {D.label(v)} vs {k}",
            )
    square = matmul(A, A)
    return classify_square(n, k, square, A.astype(bool), labeller=lambda pos: "(" + ",".join(map(str, pos)) + ")")


def complement_graph(D: Digraph) -> Digraph:
    n = D.order
    return Digraph(ones(n) - identity(n) - D.adjacency, D.labels)


def count_paths2(D: Digraph, x: int, y: int) -> int:
    """Number of z with x->z->y, by enumeration."""

    A = D.adjacency
    return sum(1 for z in range(D.order) if A[x, z] and A[z, y])


def _require(D: Digraph, check, message: str) -> ParamTuple:
    params = verify_dsrg(D)
    if not isinstance(params, ParamTuple):
        raise PreconditionError(f"input is not a DSRG: {params}")
    if not check(params):
        raise PreconditionError(f"{params}: {message}")
    return params


def _blown_up_labels(D: Digraph, m: int):
    return tuple(f"{D.label(v)}.{i}" for v in range(D.order) for i in range(m))


def expand_t_mu(D: Digraph, m: int) -> Digraph:
    """A x J_m; a DSRG with t=mu becomes one with every parameter times m."""

    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    _require(D, lambda p: p.t == p.mu, "expansion by J_m needs t=mu")
    if m == 1:
        return D
    return Digraph(kronecker(D.adjacency, ones(m)), _blown_up_labels(D, m))


def expand_t_lambda1(D: Digraph, m: int) -> Digraph:
    """A x J_m + I_n x (J_m - I_m), for a DSRG with t = lambda + 1."""

    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    _require(D, lambda p: p.t == p.lam + 1, "this expansion needs t=lambda+1")
    if m == 1:
        return D
    A = kronecker(D.adjacency, ones(m)) + kronecker(identity(D.order), ones(m) - identity(m))
    return Digraph(A, _blown_up_labels(D, m))


def product_graph(D: Digraph) -> Digraph:
    """(J-A) x A + A x (J-A) for a DSRG with t=mu and 4k=n+2lam+2mu."""

    _require(D, is_balanced, "product needs t=mu and 4k=n+2lam+2mu")
    A = D.adjacency
    co = ones(D.order) - A
    labels = tuple(f"{D.label(u)}|{D.label(v)}" for u in range(D.order) for v in range(D.order))
    return Digraph(kronecker(co, A) + kronecker(A, co), labels)
