import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from ..constructions import Construction, build
from ..errors import DSRGError, FormatError, InfeasibleError
from ..graphcore import Digraph, verify_dsrg
from ..paramlab import ParamTuple, spectrum
from ..quotients import stabilizer

logger = logging.getLogger(__name__)


def _int_list(values) -> bool:
    if isinstance(values, (str, dict)):
        return False
    try:
        return all(isinstance(x, int) and not isinstance(x, bool) for x in values)
    except TypeError:
        return False


@dataclass
class CatalogEntry:
    """
    Object storing one constructed graph of the catalog.

    Parameters
    ----------
    family: family id of the recipe
    params: recipe parameters, enough to rebuild the graph
    tuple: verified (n, k, mu, lam, t)
    flag: 'DSRG', 'SRG' or 'tournament'
    spectrum: eigenvalues and multiplicities {k, rho, sigma, r, s}, or None
        when the tuple has no integral spectrum
    stabilizers: orders of G_S and G_{S^-1} for Cayley graphs, else None
    hash: SHA-256 of the adjacency matrix
    arcs: optional arc list, re-verified on check

    """

    family: str
    params: Dict[str, Any]
    tuple: List[int]
    flag: str
    spectrum: Optional[Dict[str, int]]
    stabilizers: Optional[List[int]]
    hash: str
    arcs: Optional[List[List[int]]] = field(default=None)

    def __post_init__(self):
        for name in ("family", "flag", "hash"):
            if not isinstance(getattr(self, name), str):
                raise FormatError(f"catalog field {name!r} must be a string, got {getattr(self, name)!r}")
        if not isinstance(self.params, dict):
            raise FormatError(f"catalog field 'params' must be an object, got {self.params!r}")
        if not _int_list(self.tuple) or len(self.tuple) != 5:
            raise FormatError(f"catalog field 'tuple' must hold 5 integers, got {self.tuple!r}")
        if self.spectrum is not None and not (isinstance(self.spectrum, dict) and _int_list(self.spectrum.values())):
            raise FormatError(f"catalog field 'spectrum' must map names to integers, got {self.spectrum!r}")
        if self.stabilizers is not None and not _int_list(self.stabilizers):
            raise FormatError(f"catalog field 'stabilizers' must hold integers, got {self.stabilizers!r}")
        if self.arcs is not None and not (
            isinstance(self.arcs, list) and all(_int_list(arc) and len(arc) == 2 for arc in self.arcs)
        ):
            raise FormatError("catalog field 'arcs' must be a list of [u, v] integer pairs")

    @classmethod
    def from_construction(cls, construction: Construction, with_arcs: bool = True) -> "CatalogEntry":
        params = construction.params
        try:
            triple = spectrum(params)
            spec = {"k": triple.k, "rho": triple.rho, "sigma": triple.sigma, "r": triple.r, "s": triple.s}
        except InfeasibleError:
            spec = None
        stabilizers = None
        if construction.cayley is not None:
            stabilizers = [len(stabilizer(construction.cayley, direction)) for direction in ("out", "in")]
        D = construction.digraph
        return cls(
            family=construction.recipe.family.value,
            params=construction.recipe.params,
            tuple=list(params.as_tuple()),
            flag=params.flag.value,
            spectrum=spec,
            stabilizers=stabilizers,
            hash=D.content_hash(),
            arcs=[[u, v] for u, v in D.arcs()] if with_arcs else None,
        )

    @property
    def params_tuple(self) -> ParamTuple:
        return ParamTuple(*self.tuple)

    def to_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_line(cls, line: str) -> "CatalogEntry":
        try:
            return cls(**json.loads(line))
        except (ValueError, TypeError) as err:
            raise FormatError(f"bad catalog line: {err}") from None


class Catalog:
    """JSON-lines file of CatalogEntry records."""

    def __init__(self, path):
        self.path = Path(path)

    def lines(self) -> List[str]:
        if not self.path.exists():
            return []
        return [line for line in self.path.read_text().splitlines() if line.strip()]

    def entries(self) -> List[CatalogEntry]:
        return [CatalogEntry.from_line(line) for line in self.lines()]

    def add(self, entry: CatalogEntry) -> CatalogEntry:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as file:
            file.write(entry.to_line() + "\n")
        logger.info("added %s %s to %s", entry.family, entry.params_tuple, self.path)
        return entry

    def table(self) -> pd.DataFrame:
        rows = [
            {
                "family": e.family,
                "params": json.dumps(e.params, sort_keys=True),
                "tuple": str(e.params_tuple),
                "flag": e.flag,
                "stabilizers": "" if e.stabilizers is None else "/".join(map(str, e.stabilizers)),
                "hash": e.hash[:12],
            }
            for e in self.entries()
        ]
        return pd.DataFrame(rows, columns=["family", "params", "tuple", "flag", "stabilizers", "hash"])

    def check(self) -> pd.DataFrame:
        """
        Rebuild every entry from its recipe and re-verify its arc payload.

        Returns
        -------
        report: DataFrame
            one row per line with columns 'line', 'family', 'tuple', 'ok'
            and 'problem'

        """

        rows = []
        for number, line in enumerate(self.lines(), start=1):
            try:
                entry = CatalogEntry.from_line(line)
                problem = _entry_problem(entry)
                family, stored = entry.family, str(entry.params_tuple)
            except DSRGError as err:
                family, stored, problem = "", "", str(err)
            rows.append({"line": number, "family": family, "tuple": stored, "ok": problem is None, "problem": problem or ""})
            if problem:
                logger.warning("catalog line %d: %s", number, problem)
        return pd.DataFrame(rows, columns=["line", "family", "tuple", "ok", "problem"])


def _entry_problem(entry: CatalogEntry) -> Optional[str]:
    stored = entry.params_tuple
    rebuilt = build(entry.family, **entry.params)
    if rebuilt.params != stored:
        return f"recipe rebuilds as {rebuilt.params}, stored {stored}"
    if rebuilt.digraph.content_hash() != entry.hash:
        return "recipe rebuilds with a different adjacency hash"
    if entry.flag != stored.flag.value:
        return f"flag {entry.flag} does not match {stored}"
    if entry.arcs is not None:
        payload = Digraph.from_arcs(stored.n, entry.arcs)
        if verify_dsrg(payload) != stored:
            return "arc payload does not verify with the stored tuple"
        if payload.content_hash() != entry.hash:
            return "arc payload hash differs"
    return None
