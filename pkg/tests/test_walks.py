import math

import numpy as np
import pytest

from rwlab.stepdist import discretized_cauchy, power_law_pmf
from rwlab.walks import (
    convolution_checkpoints,
    convolve_pmf,
    halfmass_check,
    resistance_growth_diagnostic,
    simulate,
)


def test_simulate_fair_walk_matches_convolution_oracle():
    # independent oracle: E[visits to 0 by T] = sum_n P(S_n = 0), exact binomials
    T, trials = 2500, 300
    dist = power_law_pmf(1, 8.0, 1)  # only +-1 steps, each 1/2
    expected = 1.0
    logs = np.cumsum(np.log(np.arange(1, T + 1)))

    def log_binom(n, k):
        if k == 0:
            return 0.0
        return logs[n - 1] - logs[k - 1] - logs[n - k - 1]

    for n in range(2, T + 1, 2):
        expected += math.exp(log_binom(n, n // 2) - n * math.log(2))
    stats = simulate(dist, T, trials, np.random.default_rng(42))
    assert abs(stats.mean_visits_to_origin - expected) < 4 * stats.visits_std_error
    # sqrt growth ballpark: sqrt(2T/pi)
    assert expected == pytest.approx(math.sqrt(2 * T / math.pi), rel=0.05)


def test_simulate_symmetric_mean_and_reproducibility():
    dist = power_law_pmf(2, 3.5, 8)
    a = simulate(dist, 300, 200, np.random.default_rng(9))
    b = simulate(dist, 300, 200, np.random.default_rng(9))
    assert a.mean_visits_to_origin == b.mean_visits_to_origin
    assert a.checkpoints[-1].return_probability == b.checkpoints[-1].return_probability
    assert a.mean_distinct_sites <= 301


def test_convolve_point_mass_at_zero_steps():
    pmf = convolve_pmf(discretized_cauchy(), 0, support_radius=50)
    assert pmf.prob(0) == 1.0 and pmf.window_mass() == 1.0
    assert pmf.value_error_bound == 0.0


def test_convolve_two_steps_argmax_at_origin():
    pmf = convolve_pmf(discretized_cauchy(), 2, support_radius=5000)
    assert pmf.argmax() == 0
    vals = pmf.values
    assert (vals <= pmf.prob(0)).all()


def test_convolve_symmetry_is_exact():
    pmf = convolve_pmf(discretized_cauchy(), 7, support_radius=2000)
    assert np.array_equal(pmf.values, pmf.values[::-1])


def test_convolve_mass_accounting():
    pmf = convolve_pmf(discretized_cauchy(), 20, support_radius=4000)
    total = pmf.window_mass() + pmf.outside_mass()
    assert abs(total - 1.0) < 1e-9


def test_convolve_lower_bound_scaling():
    # P(S_n = 0) (6n + 1) >= 0.5 at small n via the killed lower bound
    for n in (2, 6, 10):
        pmf = convolve_pmf(discretized_cauchy(), n)
        assert pmf.prob(0) * (6 * n + 1) >= 0.5


def test_convolution_checkpoints_match_single_runs():
    recs = convolution_checkpoints(discretized_cauchy(), 8, support_radius=3000)
    by_n = {r.steps: r for r in recs}
    solo = convolve_pmf(discretized_cauchy(), 6, support_radius=3000)
    assert by_n[6].prob(0) == pytest.approx(solo.prob(0), abs=1e-15)


def test_convolve_audit_failure_signals():
    with pytest.raises(ValueError, match="audit"):
        convolve_pmf(discretized_cauchy(), 50, support_radius=60, per_step_tol=1e-12)


def test_halfmass_examples():
    assert halfmass_check(1) == pytest.approx(2 / math.pi * math.atan(3), abs=1e-9)
    assert halfmass_check(1) >= 0.5
    assert halfmass_check(10) >= 0.5


def test_residual_rounding_is_bounded_by_one():
    # R = Y - sgn(Y) ceil|Y| always lies in (-1, 1), so |sum R_k| <= n holds surely
    rng = np.random.default_rng(1)
    y = rng.standard_cauchy(100_000)
    x = np.sign(y) * np.ceil(np.abs(y))
    r = y - x
    assert np.abs(r).max() < 1.0
    assert np.abs(np.cumsum(r)).max() <= len(r)


def test_resistance_growth_monotone_and_matches_explicit_network():
    dist = power_law_pmf(2, 3.5, 6)
    growth = resistance_growth_diagnostic(dist, [3, 5, 8])
    assert growth.resistances == sorted(growth.resistances)

    # explicit-network cross-check at the smallest window
    from rwlab.network import WeightedNetwork, effective_conductance

    n = 3
    pts = [(x, y) for x in range(-n, n + 1) for y in range(-n, n + 1)]
    edges = []
    for i, u in enumerate(pts):
        for v in pts[i + 1:]:
            c = dist.pmf((u[0] - v[0], u[1] - v[1]))
            if c > 0:
                edges.append((u, v, c))
    out = "out"
    verts = pts + [out]
    for u in pts:
        c_out = 1.0 - sum(dist.pmf((u[0] - v[0], u[1] - v[1])) for v in pts)
        edges.append((u, out, c_out))
    net = WeightedNetwork(verts, edges)
    explicit = 1.0 / effective_conductance(net, [(0, 0)], [out]).value
    assert growth.resistances[0] == pytest.approx(explicit, rel=1e-9)


def test_resistance_growth_requires_increasing_windows():
    dist = power_law_pmf(2, 3.5, 4)
    with pytest.raises(ValueError):
        resistance_growth_diagnostic(dist, [8, 4])
