"""Exit criteria, one test each; the summary lists a PASS/FAIL line per criterion."""

import time

import numpy as np
import pytest

from conftest import random_weights
from owafl.core import AgmvsParams, Mechanism, agmvs_locate, locate_batch, order_statistic_as_agmvs, owa_locate, preset, utility
from owafl.fairness import ifs_at, pf_at, pf_at_bruteforce
from owafl.incentives import (
    best_case_utility,
    construct_nomw_violation,
    construct_sp_violation,
    is_nom,
    is_sp,
    reachable_interval,
    worst_case_utility,
)
from owafl.verify import (
    GridSpec,
    _grid_array,
    compatibility_matrix,
    cross_validate,
    empirical_fairness,
    empirical_sp,
    simplex_grid,
)

TOL = 1e-9
CASES = 10_000


@pytest.mark.acceptance(1, "Example 1 reproduction")
def test_example1():
    start = time.perf_counter()
    oa = preset("olympic_average", 5)
    sa = preset("standard_average", 5).params
    x = (0.1, 0.3, 0.5, 0.7, 0.9)
    assert oa(x) == pytest.approx(0.5, abs=TOL)
    assert oa((0.1, 0.0, 0.5, 0.7, 0.9)) == pytest.approx(13 / 30, abs=TOL)
    assert reachable_interval(sa, 0.3).hi == pytest.approx(0.86, abs=TOL)
    assert reachable_interval(sa, 0.0).hi == pytest.approx(0.8, abs=TOL)
    assert worst_case_utility(sa, 0.3, 0.3) == pytest.approx(0.44, abs=TOL)
    assert worst_case_utility(sa, 0.3, 0.0) == pytest.approx(0.5, abs=TOL)
    assert worst_case_utility(oa.params, 0.3, 0.3) == pytest.approx(0.3, abs=TOL)
    assert worst_case_utility(oa.params, 0.3, 0.0) == pytest.approx(0.3, abs=TOL)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "reachable sets")
def test_reachable_sets():
    oa = preset("olympic_average", 5).params
    sa = preset("standard_average", 5).params
    for r in (0.0, 0.3, 1.0):
        iv = reachable_interval(oa, r)
        assert (iv.lo, iv.hi) == pytest.approx((0.0, 1.0), abs=TOL)
    iv = reachable_interval(sa, 0.3)
    assert (iv.lo, iv.hi) == pytest.approx((0.06, 0.86), abs=TOL)
    iv = reachable_interval(sa, 0.0)
    assert (iv.lo, iv.hi) == pytest.approx((0.0, 0.8), abs=TOL)


@pytest.mark.acceptance(3, "median / center / average on (0,1,1,1,1)")
def test_triptych():
    x = (0.0, 1.0, 1.0, 1.0, 1.0)
    y = preset("median", 5)(x)
    assert y == 1.0
    v = ifs_at(x, y)
    assert not v.holds and v.witness.coalition == (1,)

    y = preset("center", 5)(x)
    assert y == pytest.approx(0.5, abs=TOL)
    assert ifs_at(x, y).holds
    v = pf_at(x, y)
    assert not v.holds and v.witness.coalition == (2, 3, 4, 5)

    y = preset("standard_average", 5)(x)
    assert y == pytest.approx(0.8, abs=TOL)
    assert pf_at(x, y).holds


@pytest.mark.acceptance(4, "compatibility matrix")
def test_matrix():
    expected = {
        "SP": {"PF": False, "IFS": False, "UN": True},
        "NOM": {"PF": False, "IFS": False, "UN": True},
        "NOM-B": {"PF": True, "IFS": True, "UN": True},
    }
    for n in (3, 4, 5, 6):
        start = time.perf_counter()
        matrix = compatibility_matrix(n)
        assert matrix.pattern() == expected
        grid_size = sum(1 for _ in simplex_grid(n, 2 * n))
        for (r, c), cell in matrix.cells.items():
            if not cell.compatible:
                assert cell.grid_confirmed and cell.grid_size == grid_size
        assert time.perf_counter() - start < 30


@pytest.mark.acceptance(5, "characterization cross-validation")
def test_cross_validation():
    start = time.perf_counter()
    for spec in (GridSpec(3, k=10, m=4), GridSpec(4, k=6, m=4)):
        report = cross_validate(spec)
        assert report.mismatches == 0
        assert report.weight_vectors == sum(1 for _ in simplex_grid(spec.n, 4))
    assert time.perf_counter() - start < 300


@pytest.mark.acceptance(6, "PF reduction equals brute force")
def test_pf_reduction():
    rng = np.random.default_rng(6)
    for n in range(2, 9):
        disagreements = 0
        for i in range(1200):
            if i % 3 == 0:
                x = tuple(float(v) for v in rng.integers(0, 5, n) / 4)
                y = float(rng.integers(0, 5) / 4)
            else:
                x = tuple(float(v) for v in rng.random(n))
                y = float(rng.random())
            disagreements += pf_at(x, y).holds != pf_at_bruteforce(x, y).holds
        assert disagreements == 0, n


@pytest.mark.acceptance(7, "constructive witnesses")
def test_witnesses():
    rng = np.random.default_rng(7)
    sp_done = nom_done = 0
    while sp_done < 200 or nom_done < 200:
        w = random_weights(rng, int(rng.integers(2, 9)))
        if sp_done < 200 and not is_sp(w):
            wit = construct_sp_violation(w)
            truthful = owa_locate(w, wit.truthful_profile)
            lied = owa_locate(w, wit.manipulated_profile)
            assert utility(wit.truth, lied) - utility(wit.truth, truthful) > 0
            sp_done += 1
        if nom_done < 200 and not is_nom(w):
            wit = construct_nomw_violation(w)
            t = wit.truth
            assert worst_case_utility(w, t, wit.misreport) - worst_case_utility(w, t, t) > 0
            nom_done += 1


@pytest.mark.acceptance(8, "uniform phantom and order statistics")
def test_uniform_phantom():
    up = preset("uniform_phantom", 5)
    spec = GridSpec(5, k=10)
    assert empirical_sp(up, spec)[0]
    assert empirical_fairness(up, "PF", spec)[0]
    for n in (3, 4, 5):
        X = _grid_array(GridSpec(n, k=10))
        S = np.sort(X, axis=1)
        for j in range(1, n + 1):
            got = locate_batch(Mechanism.agmvs(order_statistic_as_agmvs(j, n)), X)
            assert np.array_equal(got, S[:, j - 1])
        # scalar path on a sample of rows
        for row in X[:: max(1, len(X) // 500)]:
            for j in range(1, n + 1):
                assert agmvs_locate(order_statistic_as_agmvs(j, n), tuple(row)) == sorted(row)[j - 1]


def _random_mechanism(rng):
    n = int(rng.integers(1, 8))
    if rng.random() < 0.7:
        return Mechanism.owa(random_weights(rng, n))
    return Mechanism.agmvs(AgmvsParams(tuple(float(v) for v in rng.random(n - 1)), n))


@pytest.mark.acceptance(9, "invariant suites")
def test_invariants():
    rng = np.random.default_rng(9)
    for _ in range(CASES):
        mech = _random_mechanism(rng)
        n = mech.n
        x = rng.random(n)
        y = mech(tuple(x))
        # Pareto range
        assert x.min() - TOL <= y <= x.max() + TOL
        # monotonicity in one coordinate
        i = int(rng.integers(n))
        bumped = x.copy()
        bumped[i] = rng.uniform(x[i], 1.0)
        assert mech(tuple(bumped)) >= y - TOL
        # anonymity
        assert mech(tuple(rng.permutation(x))) == pytest.approx(y, abs=TOL)
        # unanimity
        c = float(rng.random())
        assert mech((c,) * n) == pytest.approx(c, abs=TOL)
        # best case of a truthful report is always 1
        w = mech.params if mech.family == "owa" else random_weights(rng, n)
        t = float(rng.random())
        assert best_case_utility(w, t, t) == 1.0
