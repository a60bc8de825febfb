import logging
from dataclasses import asdict, fields
from pathlib import Path

import pandas as pd
import yaml

from .store.parameters import Param

logger = logging.getLogger(__name__)


def load_param(path):
    """
    Load the settings stored in a Parameters.yml file.

    Parameters
    ----------
    path: str or Path
        Parameters.yml file, or the folder containing it

    Returns
    -------
    param: Param object
        As created by dsrgtools.store.parameters.Param

    """

    path = Path(path)
    if path.is_dir():
        path = path.joinpath("Parameters.yml")
    with open(path) as file:
        documents = yaml.full_load(file) or {}

    known = {f.name for f in fields(Param)}
    unknown = sorted(set(documents) - known)
    if unknown:
        raise ValueError(f"unknown settings in {path}: {unknown}")
    param = Param(**documents)
    param.output_folder = param.output_folder or path.parent
    return param


def export_param(param, folder=None):
    """Write param to Parameters.yml in folder (default: param.output_folder)."""

    folder = Path(folder or param.output_folder or ".")
    folder.mkdir(parents=True, exist_ok=True)
    dict_file = {}
    for key, value in asdict(param).items():
        dict_file[key] = value.as_posix() if isinstance(value, Path) else value

    path = folder.joinpath("Parameters.yml")
    with open(path, "w") as file:
        yaml.dump(dict_file, file)
    logger.info("settings written to %s", path)
    return path


def params_to_dataframe(tuples):
    """Table with one row per parameter tuple, with its flag."""

    return pd.DataFrame(
        [list(p.as_tuple()) + [p.flag.value] for p in tuples],
        columns=["n", "k", "mu", "lam", "t", "flag"],
    )


def export_table(df, path):
    """Write a result table as CSV."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    logger.info("%d rows written to %s", len(df), path)
    return path
