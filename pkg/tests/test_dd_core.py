import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from dutchdraw import (
    LinearForm,
    MeasureId,
    NonlinearMeasure,
    ProblemShape,
    ShapeMismatch,
    ThetaOutOfRange,
    UndefinedMeasure,
    all_measures,
    discretize_theta,
    evaluate_measure,
    feasible_k_bounds,
    linear_form,
    measure,
    measure_range,
    sample_dd,
    theta_star_grid,
    tp_pmf,
    tp_support,
)
from dutchdraw.expectations import counts_at


def enum_tp_histogram(m, p, k):
    """Independent subset-enumeration oracle, exact rationals."""
    tallies = {}
    for chosen in combinations(range(m), k):
        tp = sum(1 for i in chosen if i < p)
        tallies[tp] = tallies.get(tp, 0) + 1
    total = math.comb(m, k)
    return {tp: Fraction(c, total) for tp, c in sorted(tallies.items())}


# --- theta discretization -------------------------------------------------

def test_discretize_half_up_at_lower_boundary():
    # 1/(2M) must land on k=1: the argmin intervals [0, 1/(2M)) exclude it
    assert discretize_theta(0.05, 10).k == 1


@pytest.mark.parametrize("theta,m,k", [
    (0.0, 5, 0),
    (0.31, 10, 3),
    (0.15, 10, 2),   # 1.5 rounds up
    (0.25, 2, 1),    # 0.5 rounds up
    (1.0, 7, 7),
    (0.9999, 3, 3),
])
def test_discretize_examples(theta, m, k):
    d = discretize_theta(theta, m)
    assert d.k == k
    assert d.theta_star == pytest.approx(k / m)


def test_discretize_rejects_out_of_range():
    for bad in (-0.1, 1.1, math.nan, math.inf):
        with pytest.raises(ThetaOutOfRange):
            discretize_theta(bad, 4)


def test_theta_star_grid():
    assert [d.theta_star for d in theta_star_grid(2)] == [0.0, 0.5, 1.0]
    assert [d.k for d in theta_star_grid(1)] == [0, 1]
    assert len(theta_star_grid(4)) == 5


# --- TP support and pmf ---------------------------------------------------

@pytest.mark.parametrize("m,p,k,lo,hi", [
    (10, 9, 1, 0, 1),
    (4, 2, 4, 2, 2),
    (4, 2, 3, 1, 2),
])
def test_tp_support_examples(m, p, k, lo, hi):
    sup = tp_support(ProblemShape(m, p), k)
    assert (sup.start, sup[-1]) == (lo, hi)


def test_tp_support_matches_enumeration():
    for m in range(1, 9):
        for p in range(m + 1):
            for k in range(m + 1):
                hist = enum_tp_histogram(m, p, k)
                assert list(tp_support(ProblemShape(m, p), k)) == list(hist)


def test_tp_pmf_frozen_examples():
    d = tp_pmf(ProblemShape(4, 2), 2)
    assert d.pmf(0) == pytest.approx(1 / 6, abs=1e-12)
    assert d.pmf(1) == pytest.approx(2 / 3, abs=1e-12)
    assert d.pmf(2) == pytest.approx(1 / 6, abs=1e-12)
    assert d.pmf(3) == 0.0

    d = tp_pmf(ProblemShape(10, 9), 1)
    assert d.pmf(0) == pytest.approx(0.1, abs=1e-12)
    assert d.pmf(1) == pytest.approx(0.9, abs=1e-12)

    d = tp_pmf(ProblemShape(5, 5), 3)
    assert list(d.support) == [3]
    assert d.pmf(3) == 1.0


def test_tp_pmf_against_enumeration_small():
    for m in range(1, 9):
        for p in range(m + 1):
            for k in range(m + 1):
                hist = enum_tp_histogram(m, p, k)
                d = tp_pmf(ProblemShape(m, p), k)
                for s, frac in hist.items():
                    assert d.pmf(s) == pytest.approx(float(frac), abs=1e-12)


def test_tp_pmf_normalization_and_mean_sweep():
    rng = np.random.default_rng(7)
    cells = [(m, p, k)
             for m in range(1, 61)
             for p in range(m + 1)
             for k in range(m + 1)]
    # spot the 60 < m <= 200 band with randomized cells
    for _ in range(2000):
        m = int(rng.integers(61, 201))
        cells.append((m, int(rng.integers(0, m + 1)), int(rng.integers(0, m + 1))))
    for m, p, k in cells:
        d = tp_pmf(ProblemShape(m, p), k)
        assert float(np.sum(d.probs)) == pytest.approx(1.0, abs=1e-12)
        assert (d.probs >= 0).all() and (d.probs <= 1).all()
        assert d.mean() == pytest.approx(k * p / m, abs=1e-10)


# --- linear forms ---------------------------------------------------------

def test_linear_form_examples():
    lf = linear_form(measure("tpr"), ProblemShape(10, 4), 3)
    assert (lf.a, lf.b) == (0.25, 0.0)
    lf = linear_form(measure("fn"), ProblemShape(10, 4), 3)
    assert (lf.a, lf.b) == (-1.0, 4.0)
    lf = linear_form(measure("acc"), ProblemShape(4, 2), 1)
    assert (lf.a, lf.b) == (0.5, 0.25)


def test_linear_form_kappa_coefficients():
    m, p, k = 10, 4, 3
    d = p * (m - k) + (m - p) * k
    lf = linear_form(measure("kappa"), ProblemShape(m, p), k)
    assert lf.a == pytest.approx(2 * m / d, abs=1e-15)
    assert lf.b == pytest.approx(-2 * k * p / d, abs=1e-15)


def test_linear_form_mcc_coefficients():
    m, p, k = 12, 5, 4
    c = math.sqrt(k * (m - k) * p * (m - p))
    lf = linear_form(measure("mcc"), ProblemShape(m, p), k)
    assert lf.a == pytest.approx(m / c, rel=1e-14)
    assert lf.b == pytest.approx(-p * k / c, rel=1e-14)


def test_linear_form_rejects_nonlinear_and_undefined():
    with pytest.raises(NonlinearMeasure):
        linear_form(measure("g2"), ProblemShape(4, 2), 1)
    with pytest.raises(NonlinearMeasure):
        linear_form(measure("pt"), ProblemShape(4, 2), 1)
    with pytest.raises(UndefinedMeasure):
        linear_form(measure("ppv"), ProblemShape(4, 2), 0)
    with pytest.raises(UndefinedMeasure):
        linear_form(measure("kappa"), ProblemShape(4, 4), 4)
    with pytest.raises(UndefinedMeasure):
        linear_form(measure("kappa"), ProblemShape(4, 0), 0)


def test_linear_form_matches_point_evaluation_everywhere():
    """Central correctness property: a*s + b equals the raw measure value
    on the counts forced by TP = s, for every support point."""
    specs = [s for s in all_measures() if s.is_linear_in_tp]
    specs += [measure("fbeta", beta=0.5), measure("fbeta", beta=2.0)]
    for m in range(1, 15):
        for p in range(m + 1):
            shape = ProblemShape(m, p)
            for k in range(m + 1):
                for spec in specs:
                    try:
                        lf = linear_form(spec, shape, k)
                    except UndefinedMeasure:
                        continue
                    for s in tp_support(shape, k):
                        want = evaluate_measure(spec, counts_at(shape, k, s))
                        assert lf.value(s) == pytest.approx(want, abs=1e-12), \
                            (spec.display_name, m, p, k, s)


def test_measure_range_examples():
    assert measure_range(measure("tpr"), ProblemShape(4, 2), 2) == \
        pytest.approx([0.0, 0.5, 1.0])
    assert measure_range(measure("tp"), ProblemShape(4, 2), 4) == [2.0]
    assert measure_range(measure("acc"), ProblemShape(2, 1), 1) == \
        pytest.approx([0.0, 1.0])


def test_feasible_k_bounds():
    assert feasible_k_bounds(measure("acc"), ProblemShape(5, 2)) == (0, 5)
    assert feasible_k_bounds(measure("ppv"), ProblemShape(5, 2)) == (1, 5)
    assert feasible_k_bounds(measure("npv"), ProblemShape(5, 2)) == (0, 4)
    assert feasible_k_bounds(measure("mcc"), ProblemShape(5, 2)) == (1, 4)
    assert feasible_k_bounds(measure("kappa"), ProblemShape(5, 5)) == (0, 4)
    assert feasible_k_bounds(measure("kappa"), ProblemShape(5, 0)) == (1, 5)
    with pytest.raises(UndefinedMeasure):
        feasible_k_bounds(measure("tpr"), ProblemShape(5, 0))
    with pytest.raises(UndefinedMeasure):
        feasible_k_bounds(measure("mk"), ProblemShape(1, 1))


# --- the sampler ----------------------------------------------------------

def test_sample_dd_edges_and_determinism():
    shape = ProblemShape(3, 2)
    y = np.array([1, 1, 0])
    assert sample_dd(1, shape, 0, y).tolist() == [0, 0, 0]
    assert sample_dd(1, shape, 3, y).tolist() == [1, 1, 1]
    a = sample_dd(42, ProblemShape(8, 3), 4, [1, 1, 1, 0, 0, 0, 0, 0])
    b = sample_dd(42, ProblemShape(8, 3), 4, [1, 1, 1, 0, 0, 0, 0, 0])
    assert a.tolist() == b.tolist()
    assert a.sum() == 4


def test_sample_dd_validates_inputs():
    shape = ProblemShape(4, 2)
    with pytest.raises(ShapeMismatch):
        sample_dd(0, shape, 1, [1, 1, 0])           # wrong length
    with pytest.raises(ShapeMismatch):
        sample_dd(0, shape, 1, [1, 1, 1, 0])        # wrong positive count
    with pytest.raises(ValueError):
        sample_dd(0, shape, 5, [1, 1, 0, 0])        # k out of range


def test_sample_dd_identity_web():
    """Base-measure identities: TP+FP = k, TP+FN = p, TN+FP = n."""
    from dutchdraw import confusion_counts

    rng = np.random.default_rng(3)
    for _ in range(200):
        m = int(rng.integers(1, 40))
        p = int(rng.integers(0, m + 1))
        k = int(rng.integers(0, m + 1))
        y = np.zeros(m, dtype=np.int64)
        y[rng.choice(m, size=p, replace=False)] = 1
        pred = sample_dd(int(rng.integers(2 ** 63)), ProblemShape(m, p), k, y)
        c = confusion_counts(y, pred)
        assert c.predicted_positives == k
        assert c.positives == p
        assert c.negatives == m - p


def test_sample_dd_uniformity_and_tp_law():
    """10^5 seeded draws on m=6, p=2, k=2: each position is predicted
    positive with frequency 1/3 +- 0.01, and the TP histogram matches
    tp_pmf within 4 standard errors per support point."""
    m, p, k, n_draws = 6, 2, 2, 100_000
    shape = ProblemShape(m, p)
    y = np.array([1, 1, 0, 0, 0, 0])
    pos_freq = np.zeros(m)
    tp_tally = np.zeros(3)
    for seed in range(n_draws):
        pred = sample_dd(seed, shape, k, y)
        pos_freq += pred
        tp_tally[int(pred[0] + pred[1])] += 1
    pos_freq /= n_draws
    assert np.all(np.abs(pos_freq - k / m) < 0.01)
    d = tp_pmf(shape, k)
    for s in d.support:
        freq = tp_tally[s] / n_draws
        se = math.sqrt(d.pmf(s) * (1 - d.pmf(s)) / n_draws)
        assert abs(freq - d.pmf(s)) <= 4 * se
