import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_weights
from owafl.core import DomainError, OwaWeights, owa_locate, preset
from owafl.fairness import (
    BRUTEFORCE_MAX_N,
    CoalitionWitness,
    FairnessVerdict,
    ifs_at,
    is_ifs,
    is_pf,
    is_proportional,
    is_ufs,
    pf_at,
    pf_at_bruteforce,
    proportional_at,
    ufs_at,
    unanimous_at,
)
from owafl.verify import GridSpec, empirical_fairness, simplex_grid

FIG5 = (0.0, 1.0, 1.0, 1.0, 1.0)


class TestPointChecks:
    def test_median_on_fig5(self):
        v = ifs_at(FIG5, 1.0)
        assert not v.holds
        assert v.witness.coalition == (1,) and v.witness.binding_agent == 1
        assert v.witness.slack == pytest.approx(-0.2)

    def test_center_on_fig5(self):
        assert ifs_at(FIG5, 0.5).holds
        v = pf_at(FIG5, 0.5)
        assert not v.holds
        assert v.witness.coalition == (2, 3, 4, 5)
        assert v.witness.slack == pytest.approx(-0.3)
        assert not ufs_at(FIG5, 0.5).holds

    def test_average_on_fig5(self):
        for check in (ifs_at, ufs_at, pf_at, pf_at_bruteforce):
            assert check(FIG5, 0.8).holds

    def test_ufs_groups(self):
        v = ufs_at((0.2, 0.7, 0.2, 0.2), 0.7)
        assert not v.holds
        assert v.witness.coalition == (1, 3, 4)
        assert v.witness.slack == pytest.approx(0.25 - 0.5)

    def test_proportional(self):
        assert proportional_at((0, 1, 1, 0), 0.5).holds
        v = proportional_at((0, 1, 1, 1), 0.5)
        assert not v.holds and v.witness.coalition == (2, 3, 4)
        assert not proportional_at((0, 0, 0), 0.1).holds
        with pytest.raises(DomainError):
            proportional_at((0, 0.5), 0.5)

    def test_unanimous(self):
        assert unanimous_at((0.3, 0.3), 0.3).holds
        assert not unanimous_at((0.3, 0.3), 0.4).holds
        assert unanimous_at((0.3, 0.4), 0.9).holds

    def test_outcome_domain(self):
        with pytest.raises(DomainError):
            pf_at((0.1, 0.2), 1.5)

    def test_bruteforce_cap(self):
        with pytest.raises(DomainError):
            pf_at_bruteforce((0.5,) * (BRUTEFORCE_MAX_N + 1), 0.5)


def _random_pair(rng, n):
    if rng.random() < 0.4:
        # coarse values give many ties
        x = tuple(float(v) for v in rng.integers(0, 5, n) / 4)
        y = float(rng.integers(0, 5) / 4)
    else:
        x = tuple(float(v) for v in rng.random(n))
        y = float(rng.random())
    return x, y


class TestReduction:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_bruteforce(self, rng, n):
        for _ in range(300):
            x, y = _random_pair(rng, n)
            assert pf_at(x, y).holds == pf_at_bruteforce(x, y).holds, (x, y)

    @given(st.lists(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]), min_size=1, max_size=7), st.floats(0, 1))
    def test_matches_bruteforce_ties(self, x, y):
        assert pf_at(x, y).holds == pf_at_bruteforce(x, y).holds

    def test_witness_slack_is_exact(self, rng):
        for _ in range(300):
            x, y = _random_pair(rng, 5)
            v = pf_at(x, y)
            if v.holds:
                continue
            members = v.witness.coalition
            pts = [x[i - 1] for i in members]
            bound = 1 - len(members) / 5 + max(pts) - min(pts)
            assert abs(x[v.witness.binding_agent - 1] - y) - bound == pytest.approx(-v.witness.slack)
            assert abs(x[v.witness.binding_agent - 1] - y) == pytest.approx(max(abs(p - y) for p in pts))


class TestImplications:
    def test_point_level_chain(self, rng):
        # every singleton and co-located group is a PF coalition
        for _ in range(2000):
            n = int(rng.integers(1, 7))
            x, y = _random_pair(rng, n)
            if pf_at(x, y).holds:
                assert ufs_at(x, y).holds
            if ufs_at(x, y).holds:
                assert ifs_at(x, y).holds

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_analytic_chain(self, n):
        for w in simplex_grid(n, 2 * n):
            if is_pf(w):
                assert is_proportional(w) and is_ufs(w) and is_ifs(w)

    def test_examples(self):
        assert is_pf(preset("standard_average", 4).params)
        assert is_ifs(preset("center", 4).params) and not is_pf(preset("center", 4).params)
        assert not is_ifs(preset("median", 4).params)
        assert not is_ifs(preset("olympic_average", 5).params)
        assert is_proportional(OwaWeights((0.25,) * 4))
        assert not is_proportional(OwaWeights((0.5, 0, 0, 0.5)))


class TestAgainstGrid:
    @pytest.mark.parametrize("n, m, k", [(3, 10, 10), (4, 4, 10), (5, 4, 5)])
    @pytest.mark.parametrize("prop, pred", [("IFS", is_ifs), ("PF", is_pf)])
    def test_analytic_equals_empirical(self, n, m, k, prop, pred):
        spec = GridSpec(n, k=k)
        for w in simplex_grid(n, m):
            holds, witness = empirical_fairness(w, prop, spec)
            assert holds == pred(w), w
            if witness is not None:
                assert owa_locate(w, witness.profile) == pytest.approx(witness.outcome)

    @pytest.mark.parametrize("n", [3, 4])
    def test_ufs_and_p(self, n):
        spec = GridSpec(n, k=4)
        for w in simplex_grid(n, 4):
            assert empirical_fairness(w, "UFS", spec)[0] == is_ufs(w), w
            assert empirical_fairness(w, "P", spec)[0] == is_proportional(w), w

    def test_random_weights(self, rng):
        spec = GridSpec(4, k=4)
        for _ in range(20):
            w = random_weights(rng, 4)
            assert empirical_fairness(w, "IFS", spec)[0] == is_ifs(w)


class TestVerdict:
    def test_violation_needs_negative_slack(self):
        with pytest.raises(ValueError):
            FairnessVerdict("PF", False)
        with pytest.raises(ValueError):
            FairnessVerdict("PF", False, CoalitionWitness((1,), 1, 0.1))
        with pytest.raises(ValueError):
            FairnessVerdict("XX", True)

    def test_json_round_trip(self):
        v = pf_at(FIG5, 0.5)
        data = json.loads(json.dumps(v.to_dict()))
        assert FairnessVerdict.from_dict(data) == v
        ok = ifs_at(FIG5, 0.5)
        assert FairnessVerdict.from_dict(ok.to_dict()) == ok
        assert bool(ok) and not bool(v)

    def test_1_based(self):
        x = np.array([0.9, 0.1])
        v = ifs_at(tuple(x), 0.0)
        assert v.witness.binding_agent == 1
