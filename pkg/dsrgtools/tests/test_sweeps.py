import pytest
from dask.distributed import Client

from dsrgtools.constructions import dihedral_family, semidirect_family
from dsrgtools.graphcore import verify_dsrg
from dsrgtools.sweeps import dual_oracle_sweep, feasibility_audit, standard_constructions, theorem_suite


@pytest.fixture(scope="module")
def constructions():
    return standard_constructions()


def test_standard_constructions_verify(constructions):
    assert len(constructions) == 17
    for construction in constructions:
        assert verify_dsrg(construction.digraph) == construction.params, construction.recipe


def test_dual_oracle_sweep(constructions):
    df = dual_oracle_sweep(constructions, count=100, seed=3)
    assert (df["source"] == "random").sum() == 100
    assert len(df) == 100 + len(constructions)
    assert "(6,2,1,0,1)" in set(df["result"])


def test_dual_oracle_sweep_dask():
    with Client(processes=False) as client:
        df = dual_oracle_sweep([semidirect_family(3, 2, [1])], count=5, seed=1, client=client)
    assert len(df) == 6
    assert df.loc[0, "result"] == "(6,2,1,0,1)"


def test_theorem_suite(constructions):
    df = theorem_suite(constructions)
    assert len(df) == 17
    smallest = df.loc[df["tuple"] == "(6,2,1,0,1)"]
    assert smallest["aut"].item() == 6
    assert smallest["aut_bound"].item() == 12
    assert smallest["G_S"].item() == 2
    quotients = set(df.loc[df["tuple"] == "(20,8,4,2,4)", "out_quotient"])
    assert "(10,4,2,1,2)" in quotients
    assert (df["aut"].dropna() <= df["aut_bound"].dropna()).all()


def test_feasibility_audit(constructions):
    df = feasibility_audit(constructions)
    assert "(20,8,4,2,4)" in set(df["tuple"])
    complement = df.loc[df["tuple"] == "(6,2,1,0,1)", "complement"]
    assert complement.iloc[0] == "(6,3,2,1,2)"
    assert all(int(t.strip("()").split(",")[0]) <= 20 for t in df["tuple"])


def test_feasibility_audit_small():
    df = feasibility_audit([dihedral_family(4), semidirect_family(5, 4, [1, 4])], n_max=8)
    assert df.to_dict("records") == [
        {"family": "dihedral {'n': 4}", "tuple": "(8,3,1,1,2)", "complement": "(8,4,3,1,3)"}
    ]
