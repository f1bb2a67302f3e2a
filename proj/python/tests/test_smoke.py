import math

import pytest

import photometrix as pm


def test_noon_poisson_at_one_absorbed_photon():
    assert pm.qfi_noon_poisson(1.0) == pytest.approx(math.exp(-1.0), abs=1e-12)


def test_cfi_below_qfi():
    for mu in (0.0, 0.2, 0.5):
        q = pm.qfi_tfs_exact(3, mu, 1.0)
        for g in (0.0, 0.3, 1.1):
            assert pm.cfi_nrm(3, 3, mu, 1.0, g) <= q * (1 + 1e-10)


def test_beamsplitter_rows_sum_to_one():
    total = sum(pm.beamsplitter_prob(3, 2, q, 0.7) for q in range(-2, 4))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_advantage_at_moderate_noise():
    assert pm.advantage_ratio(8, 1.0, 0.95, 0.05) > 1.0


def test_infeasible_budget_raises():
    with pytest.raises(pm.Infeasible):
        pm.tfs_precision(4, total_time=1.0, t_ext=2.0)


def test_switch_time_close_to_formula():
    n = 1000.0
    rel = abs(pm.switch_time(n) - pm.switch_time_formula(n)) / pm.switch_time(n)
    assert rel < 0.1
