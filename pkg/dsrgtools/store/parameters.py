import os
from pathlib import Path
from dataclasses import dataclass, field
from typing import Union


def _default_catalog():
    return Path(os.environ.get("DSRG_CATALOG", "dsrg_catalog.jsonl"))


@dataclass
class Param:
    """Object storing the run-level settings of the command line tool and
    the sweeps, e.g. the catalog location, the seed of random sweeps and
    the size limits of the exhaustive checks.

    Parameters
    ----------
    catalog: JSON-lines file holding constructed graphs; defaults to the
        DSRG_CATALOG environment variable, else dsrg_catalog.jsonl
    output_folder: where Parameters.yml and result tables are written
    seed: seed of every randomized sweep
    tolerance: tolerance for classifying root-of-unity sums as integers or zero
    aut_max_order: largest vertex count accepted by the brute-force
        automorphism count
    max_order: largest group order a construction may build
    sweep_n_max: largest n of the spectral sweep
    sweep_m_max: largest m of the spectral sweep
    random_pairs: number of random (group, connection set) pairs checked
        by both oracles
    random_max_order: largest group order of those pairs

    """

    catalog: Union[Path, str] = field(default_factory=_default_catalog)
    output_folder: Union[Path, str] = None
    seed: int = 0
    tolerance: float = 1e-9
    aut_max_order: int = 10
    max_order: int = 2000
    sweep_n_max: int = 8
    sweep_m_max: int = 4
    random_pairs: int = 100
    random_max_order: int = 24

    def __post_init__(self):

        # catalog file
        if self.catalog is not None:
            self.catalog = Path(self.catalog)

        # output directory
        if self.output_folder is not None:
            self.output_folder = Path(self.output_folder)
