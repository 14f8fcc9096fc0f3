import json
import os
from math import comb
from fractions import Fraction as F
from pathlib import Path

import pytest

import hoeffding_urn as hu

DATA = Path(os.environ.get("HOEFFDING_URN_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))

UNIF_HALF = hu.truncated_uniform(F(1, 2), 12)


def test_moments_and_probabilities():
    assert hu.moments(hu.beta(1, 1), 3) == [1, F(1, 2), F(1, 3), F(1, 4)]
    assert hu.config_probability(hu.beta(1, 1), 4, 2) == F(1, 30)
    assert hu.config_probability(hu.dirac(F(1, 3)), 2, 1) == F(2, 9)
    two_point = hu.discrete([(F(1, 3), F(1, 2)), (F(2, 3), F(1, 2))])
    total = sum(comb(5, j) * hu.config_probability(two_point, 5, j) for j in range(6))
    assert total == 1


def test_documents_from_files_match_builders():
    text = (DATA / "beta11.json").read_text()
    assert hu.moments(text, 4) == hu.moments(hu.beta(1, 1), 4)


def test_check_verdicts():
    ok = hu.check(hu.beta(2, 3), 4)
    assert ok["verdict"] == "DECOMPOSABLE_UP_TO_N_MAX"
    assert all(r["value"] == "0" for r in ok["residuals"])

    bad = hu.check(UNIF_HALF, 4)
    assert bad["verdict"] == "NOT_DECOMPOSABLE"
    assert (bad["witness"]["n"], bad["witness"]["u"], bad["witness"]["z"]) == (2, 2, 0)
    assert hu.prop1_residual(UNIF_HALF, 2, 2, 0) == F(-3, 56)
    assert hu.weak_independence_residual(UNIF_HALF, 2, 2, 0) == F(-1, 56)
    assert not hu.definition_a(UNIF_HALF, 2)
    assert hu.definition_a(hu.beta(1, 1), 3)


def test_kernel_and_projection():
    kernel = hu.canonical_kernel(UNIF_HALF, 3)
    assert kernel[0] == 1
    d = hu.project(hu.dirac(F(1, 2)), hu.statistic([0, 0, 1]))
    assert d["type"] == "hoeffding_decomposition"


def test_moment_dynamics():
    assert hu.recover_beta(F(1, 2), F(3, 10)) == (2, 2)
    assert hu.moment_recursion_residual(UNIF_HALF, 2) == F(-1, 2304)
    assert hu.moment_recursion_residual(hu.beta(2, 3), 4) == 0
    c = hu.moments(hu.beta(2, 3), 4)
    assert hu.next_moment(c[3], c[2], c[1]) == c[4]
    assert hu.classify(hu.beta(2, 3), 5)["classification"] == "POLYA"


def test_simulation_is_seeded():
    a = hu.simulate(measure=hu.beta(1, 1), n=6, trials=2000, seed=5)
    b = hu.simulate(measure=hu.beta(1, 1), n=6, trials=2000, seed=5)
    assert a == b
    urn = {"f": {"type": "identity"}, "r": 1, "b": 1}
    assert hu.simulate(urn=urn, n=6, trials=2000, seed=17) == hu.simulate(urn=json.dumps(urn), n=6, trials=2000, seed=17)
    with pytest.raises(ValueError):
        hu.simulate(n=6, trials=2000, seed=1)


def test_errors_carry_codes():
    with pytest.raises(hu.HoeffdingUrnError) as info:
        hu.recover_beta(F(1, 2), F(1, 4))
    assert info.value.code == "MOMENT_REGION"
    with pytest.raises(hu.HoeffdingUrnError) as info:
        hu.simulate(measure=hu.beta(1, 1), n=6, trials=500, seed=1)
    assert info.value.code == "TRIALS_TOO_FEW"
    with pytest.raises(ValueError):
        hu.moments('{"type":"gamma"}', 3)
