from collections import Counter

import pytest

from dsrgtools.errors import BadParamsError, NonIntegerSpectrumError, OutOfRangeError
from dsrgtools.groups import SemidirectSpec
from dsrgtools.constructions import semidirect_family, semidirect_identity_family
from dsrgtools.paramlab import ParamTuple
from dsrgtools.spectral import (
    charpoly_factors,
    derive_split,
    derive_starred,
    eigenvalue_list,
    minpoly_check,
    profile,
    split_criterion,
    starred_criterion,
    tuple_minpoly_check,
    uniform_criterion,
)
from dsrgtools.sweeps import spectral_cases, spectral_sweep


@pytest.fixture
def make_profile():
    def _make_profile(n, m, k, H, starred=False):
        return profile(SemidirectSpec(n, m, k), H, starred=starred)

    return _make_profile


def test_sums_of_smallest_graph(make_profile):
    P = make_profile(3, 2, 2, [1])
    assert P.rounded() == (2, -1, -1)
    assert P.integral
    assert P.degree == 2 and P.order == 6


def test_uniform_criterion(make_profile):
    verdict = uniform_criterion(make_profile(3, 2, 2, [1]))
    assert verdict
    assert verdict.value == -1 and verdict.multiplicity == 2
    assert verdict.implied == ParamTuple(6, 2, 1, 0, 1)
    assert str(verdict) == "YES value=-1 count=2 -> (6,2,1,0,1)"


def test_uniform_criterion_rejects_irrational_sums(make_profile):
    verdict = uniform_criterion(make_profile(5, 2, 4, [1]))
    assert not verdict
    assert verdict.witness == 1
    assert "not an integer" in verdict.reason
    assert str(verdict).startswith("NO at u=1")


def test_split_criterion(make_profile):
    P = make_profile(3, 2, 2, [1])
    assert derive_split(P) == (2, -1)
    verdict = split_criterion(P, 2, -1)
    assert verdict and verdict.implied == ParamTuple(6, 2, 1, 0, 1)
    assert not split_criterion(P, 1, -1), "wrong multiplicity"
    with pytest.raises(BadParamsError):
        split_criterion(P, 2, 0)


def test_split_criterion_on_semidirect_family(make_profile):
    construction = semidirect_family(5, 4, [1, 4])
    P = make_profile(5, 4, 2, [1, 4])
    found = derive_split(P)
    assert found is not None
    verdict = split_criterion(P, *found)
    assert verdict.implied == construction.params


def test_starred_criterion(make_profile):
    P = make_profile(3, 2, 2, [1], starred=True)
    assert P.degree == 3
    assert derive_starred(P) == (2, 0)
    verdict = starred_criterion(P, 2, 0)
    assert verdict
    assert verdict.implied == ParamTuple(6, 3, 2, 1, 2)
    assert verdict.implied == semidirect_identity_family(3, 2, [1]).params
    with pytest.raises(BadParamsError):
        starred_criterion(P, 2, -1)


def test_criteria_check_the_profile_kind(make_profile):
    with pytest.raises(BadParamsError):
        uniform_criterion(make_profile(3, 2, 2, [1], starred=True))
    with pytest.raises(BadParamsError):
        starred_criterion(make_profile(3, 2, 2, [1]), 2, 0)


def test_exponent_range(make_profile):
    with pytest.raises(OutOfRangeError):
        make_profile(3, 2, 2, [0])
    with pytest.raises(OutOfRangeError):
        make_profile(3, 2, 2, [3])


def test_charpoly_factors(make_profile):
    assert charpoly_factors(make_profile(3, 2, 2, [1])) == Counter({2: 1, 0: 3, -1: 2})
    assert charpoly_factors(make_profile(3, 2, 2, [1], starred=True)) == Counter({3: 1, -1: 3, 0: 2})
    with pytest.raises(NonIntegerSpectrumError):
        charpoly_factors(make_profile(5, 2, 4, [1]))


def test_eigenvalue_list_traces(make_profile):
    P = make_profile(5, 2, 4, [1, 2])
    values = eigenvalue_list(P)
    assert len(values) == 10
    assert abs(values.sum()) < 1e-9


def test_minpoly_checks():
    construction = semidirect_family(3, 2, [1])
    assert minpoly_check(construction.digraph, 0, -1)
    assert not minpoly_check(construction.digraph, 1, -1)
    assert minpoly_check(construction.digraph, 0, -1, mu=1)
    assert not minpoly_check(construction.digraph, 0, -1, mu=2), "the multiple of J must be mu"
    assert tuple_minpoly_check(construction.digraph, construction.params)
    assert not tuple_minpoly_check(construction.digraph, ParamTuple(6, 2, 1, 1, 1))


def test_spectral_cases_cover_nontrivial_actions():
    cases = spectral_cases(5, 2)
    assert (3, 2, 2, (1,)) in cases
    assert all(k % n != 1 for n, m, k, H in cases)
    assert all(1 <= len(H) <= n - 2 for n, m, k, H in cases)


def test_spectral_sweep_agrees_with_verification():
    df = spectral_sweep(n_max=8, m_max=4)
    assert len(df) > 0
    assert df["criterion"].any()
    assert not df.loc[~df["criterion"], "tuple"].astype(bool).any(), "criterion missed a DSRG"
    found = df.loc[(df["n"] == 3) & (df["m"] == 2) & (~df["starred"]), "tuple"].tolist()
    assert set(found) == {"(6,2,1,0,1)"}, "both exponent sets give the smallest graph"
