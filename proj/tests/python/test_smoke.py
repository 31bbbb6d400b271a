import math

import pytest
from scipy import stats

import surgstat


def test_lognormal_moments_match_table_row():
    mean, var = surgstat.lognormal_moments(0.469, 0.211)
    assert abs(mean - 1.776) < 0.02
    assert abs(var - 0.741) < 0.02


def test_lognormal_fit_matches_scipy():
    x = list(stats.lognorm(s=0.45, scale=math.exp(0.5)).rvs(size=300, random_state=1))
    fit = surgstat.fit_family(x, "lognormal")
    shape, _, scale = stats.lognorm.fit(x, floc=0)
    assert fit["params"][0] == pytest.approx(math.log(scale), rel=1e-6)
    assert fit["params"][1] == pytest.approx(shape**2, rel=1e-6)


def test_selection_prefers_lognormal_for_lognormal_data():
    x = list(stats.lognorm(s=0.6, scale=1.5).rvs(size=2000, random_state=2))
    ranked = surgstat.select_best(x)
    assert ranked[0]["family"] == "lognormal"
    assert surgstat.select_best(x[:10]) is None


def test_shapiro_wilk_matches_scipy():
    x = list(stats.norm.rvs(size=60, random_state=3))
    ours = surgstat.shapiro_wilk(x)
    ref = stats.shapiro(x)
    assert ours["statistic"] == pytest.approx(ref.statistic, abs=1e-6)
    assert ours["p_value"] == pytest.approx(ref.pvalue, rel=1e-3)


def test_exact_multinomial_small_case():
    r = surgstat.exact_multinomial([3, 0, 0], [1 / 3, 1 / 3, 1 / 3])
    assert r["p_value"] == pytest.approx(1 / 9, abs=1e-12)


def test_capacity_methods_and_determinism():
    row = next(r for r in surgstat.fixture_durations()
               if r["specialty"] == "Orthopaedic" and r["patient_class"] == "non_elective")
    approx = surgstat.max_patients(row["mu"], row["sigma2"], 8.0, "approx")
    boot = surgstat.max_patients(row["mu"], row["sigma2"], 8.0, "bootstrap", seed=1)
    assert approx == boot == 2
    x = [1.0, 2.0, 3.5, 0.7, 1.9]
    a = surgstat.bootstrap_percentile(x, 3, seed=5)
    assert surgstat.bootstrap_percentile(x, 3, seed=5, workers=3) == a


def test_simulate_week():
    blocks = [{"specialty": "Urology", "day": "Mon", "n_assigned": 3}]
    out = surgstat.simulate_week(blocks, replicates=2000, seed=4)
    assert 0.0 <= out["overtime_probability_per_block"][0] <= 1.0
    assert out == surgstat.simulate_week(blocks, replicates=2000, seed=4, workers=2)


def test_errors_carry_kind():
    with pytest.raises(surgstat.SurgstatError, match="^DivisionByZero"):
        surgstat.breakdown_day_probability(1, 0)
    with pytest.raises(surgstat.SurgstatError, match="^MissingParams"):
        surgstat.simulate_week([{"specialty": "Nobody", "day": "Mon", "n_assigned": 1}], replicates=10)
