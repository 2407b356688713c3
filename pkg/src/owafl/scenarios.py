"""Worked scenarios replayed end to end: each returns every intermediate quantity."""

from __future__ import annotations

from . import fairness, incentives
from .core import OwaWeights, Profile, cost, preset, utility

SCENARIOS = ("example1", "fig2", "fig3", "fig5")


def example1() -> dict:
    """Olympic versus standard average, five agents at 0.1, 0.3, ..., 0.9; agent 2 considers reporting 0."""
    x = Profile(tuple(0.2 * i - 0.1 for i in range(1, 6)))
    truth, lie = x[1], 0.0
    oa = preset("olympic_average", 5)
    sa = preset("standard_average", 5)
    out = {"profile": list(x), "agent": 2, "truth": truth, "misreport": lie}

    oa_truthful = oa(x)
    oa_lied = oa(x.replace(2, lie))
    oa_w = oa.params
    out["olympic"] = {
        "truthful_outcome": oa_truthful,
        "manipulated_outcome": oa_lied,
        "sp_gain": utility(truth, oa_lied) - utility(truth, oa_truthful),
        "reachable_truthful": _interval(incentives.reachable_interval(oa_w, truth)),
        "reachable_misreport": _interval(incentives.reachable_interval(oa_w, lie)),
        "worst_utility_truthful": incentives.worst_case_utility(oa_w, truth, truth),
        "worst_utility_misreport": incentives.worst_case_utility(oa_w, truth, lie),
        "nom": incentives.is_nom(oa_w),
    }
    sa_w = sa.params
    r_true = incentives.reachable_interval(sa_w, truth)
    r_lie = incentives.reachable_interval(sa_w, lie)
    out["standard"] = {
        "reachable_truthful": _interval(r_true),
        "reachable_misreport": _interval(r_lie),
        "worst_outcome_truthful": r_true.hi,
        "worst_outcome_misreport": r_lie.hi,
        "worst_utility_truthful": incentives.worst_case_utility(sa_w, truth, truth),
        "worst_utility_misreport": incentives.worst_case_utility(sa_w, truth, lie),
        "nom": incentives.is_nom(sa_w),
    }
    return out


def fig2() -> dict:
    """The profitable misreport against a non-order-statistic OWA, for the center (n=3) and the standard average (n=5)."""
    out = {}
    for name, n in (("center", 3), ("standard_average", 5)):
        w = preset(name, n).params
        wit = incentives.construct_sp_violation(w)
        out[name] = {
            "weights": list(w),
            "truthful_profile": list(wit.truthful_profile),
            "manipulated_profile": list(wit.manipulated_profile),
            **wit.to_dict(),
            "replayed_gain": wit.replay(w),
        }
    return out


def fig3(w1: float = 0.4, truth: float = 0.2, n: int = 5) -> dict:
    """Worst cases for an agent at ``truth`` when the lowest weight is ``w1``; the rest spread evenly."""
    rest = (1.0 - w1) / (n - 1)
    w = OwaWeights((w1,) + (rest,) * (n - 1))
    wit = incentives.construct_nomw_violation(w, truth=truth)
    return {
        "weights": list(w),
        "truth": truth,
        "misreport": wit.misreport,
        "admissible_truth_below": (1.0 - w1) / 2.0,
        "worst_outcome_truthful": wit.truthful_outcome,
        "worst_outcome_misreport": wit.manipulated_outcome,
        "worst_utility_truthful": incentives.worst_case_utility(w, truth, truth),
        "worst_utility_misreport": incentives.worst_case_utility(w, truth, wit.misreport),
        "gain": wit.gain,
        "witness": wit.to_dict(),
    }


def fig5() -> dict:
    """One agent at 0, four at 1: median, center and standard average side by side."""
    x = Profile((0.0, 1.0, 1.0, 1.0, 1.0))
    out = {"profile": list(x)}
    for name in ("median", "center", "standard_average"):
        y = preset(name, 5)(x)
        out[name] = {
            "outcome": y,
            "costs": [cost(xi, y) for xi in x],
            "IFS": fairness.ifs_at(x, y).to_dict(),
            "UFS": fairness.ufs_at(x, y).to_dict(),
            "PF": fairness.pf_at(x, y).to_dict(),
        }
    return out


def _interval(r) -> list:
    return [r.lo, r.hi]


def run(name: str) -> dict:
    try:
        fn = {"example1": example1, "fig2": fig2, "fig3": fig3, "fig5": fig5}[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None
    return fn()
