"""
Incentive analysis of OWA mechanisms.

Because an OWA is monotone and continuous in every report, the outcomes an
agent can face after reporting ``r`` form the interval obtained by moving all
other agents to 0 or to 1.  Best- and worst-case utilities, and hence the
non-obvious-manipulability check, follow from the interval endpoints.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .core import EPS_W, OwaWeights, Profile, check_location, owa_locate, utility


@dataclass(frozen=True)
class ReachableInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi <= 1.0:
            raise ValueError(f"not a sub-interval of [0, 1]: [{self.lo}, {self.hi}]")

    def __contains__(self, y: float) -> bool:
        return self.lo <= y <= self.hi

    def distance_to(self, y: float) -> float:
        if y < self.lo:
            return self.lo - y
        if y > self.hi:
            return y - self.hi
        return 0.0


@dataclass(frozen=True)
class ManipulationWitness:
    """A report that beats truth-telling for the 1-based ``agent``.

    For ``kind == "SP"`` both outcomes come from the same ``profile_others``.
    For the worst/best-case kinds, ``profile_others`` is the opponents'
    profile that realises the truthful extreme and ``misreport_others`` the
    one that realises the extreme after misreporting; ``gain`` then compares
    the extreme utilities.
    """

    agent: int
    truth: float
    misreport: float
    profile_others: tuple[float, ...]
    truthful_outcome: float
    manipulated_outcome: float
    gain: float
    kind: str = "SP"
    misreport_others: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.gain > 0:
            raise ValueError(f"a manipulation witness needs positive gain, got {self.gain}")
        if self.kind not in ("SP", "NOM-W", "NOM-B"):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        object.__setattr__(self, "profile_others", tuple(self.profile_others))
        if self.misreport_others is not None:
            object.__setattr__(self, "misreport_others", tuple(self.misreport_others))

    def _insert(self, report, others) -> Profile:
        locs = list(others)
        locs.insert(self.agent - 1, report)
        return Profile(tuple(locs))

    @property
    def truthful_profile(self) -> Profile:
        return self._insert(self.truth, self.profile_others)

    @property
    def manipulated_profile(self) -> Profile:
        others = self.profile_others if self.misreport_others is None else self.misreport_others
        return self._insert(self.misreport, others)

    def replay(self, mechanism) -> float:
        """Recompute the gain by evaluating ``mechanism`` on both profiles."""
        if isinstance(mechanism, OwaWeights):
            f = lambda x: owa_locate(mechanism, x)  # noqa: E731
        else:
            f = mechanism
        honest = f(self.truthful_profile)
        lied = f(self.manipulated_profile)
        return utility(self.truth, lied) - utility(self.truth, honest)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["profile_others"] = list(self.profile_others)
        if self.misreport_others is not None:
            out["misreport_others"] = list(self.misreport_others)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ManipulationWitness":
        data = dict(data)
        data["profile_others"] = tuple(data["profile_others"])
        if data.get("misreport_others") is not None:
            data["misreport_others"] = tuple(data["misreport_others"])
        return cls(**data)


def reachable_interval(w: OwaWeights, report: float) -> ReachableInterval:
    report = check_location(report, "report")
    lo = w.last * report
    hi = 1.0 - w.first + w.first * report
    # Guard the ordering against one-ulp rounding when w is an order statistic.
    return ReachableInterval(min(lo, report), max(hi, report))


def worst_case_utility(w: OwaWeights, truth: float, report: float) -> float:
    truth = check_location(truth, "truth")
    r = reachable_interval(w, report)
    return 1.0 - max(abs(truth - r.lo), abs(truth - r.hi))


def best_case_utility(w: OwaWeights, truth: float, report: float) -> float:
    truth = check_location(truth, "truth")
    return 1.0 - reachable_interval(w, report).distance_to(truth)


def is_sp(w: OwaWeights) -> bool:
    return any(wj >= 1.0 - EPS_W for wj in w.weights)


def is_nom(w: OwaWeights) -> bool:
    return is_sp(w) or (w.first <= EPS_W and w.last <= EPS_W)


def is_nom_b(w: OwaWeights) -> bool:
    # Every OWA attains utility 1 for a truthful agent when all others copy her peak.
    return True


def _interior(v: float) -> bool:
    return EPS_W < v < 1.0 - EPS_W


def construct_sp_violation(w: OwaWeights) -> ManipulationWitness | None:
    """Profitable misreport for a non-order-statistic OWA.

    With ``j`` the smallest rank whose weight is strictly inside ``(0, 1)``,
    put ``j - 1`` agents at 0, agent ``j`` at 1/2 and the rest at 1.  Shading
    the middle report down by ``eps`` pulls the outcome ``w_j * eps`` closer.
    """
    if is_sp(w):
        return None
    j = next(k for k, wk in enumerate(w.weights, start=1) if _interior(wk))
    wj = w.weights[j - 1]
    eps = min(0.25, (1.0 - wj) / (2.0 * wj))
    others = (0.0,) * (j - 1) + (1.0,) * (w.n - j)
    truth, misreport = 0.5, 0.5 - eps
    honest = owa_locate(w, others[: j - 1] + (truth,) + others[j - 1 :])
    lied = owa_locate(w, others[: j - 1] + (misreport,) + others[j - 1 :])
    return ManipulationWitness(
        agent=j,
        truth=truth,
        misreport=misreport,
        profile_others=others,
        truthful_outcome=honest,
        manipulated_outcome=lied,
        gain=utility(truth, lied) - utility(truth, honest),
    )


def construct_nomw_violation(w: OwaWeights, truth: float | None = None) -> ManipulationWitness | None:
    """Worst-case manipulation for an OWA that fails NOM.

    Uses the lowest weight when it lies in ``(0, 1)``: an agent whose peak is
    below ``(1 - w_1) / 2`` does better in the worst case by reporting 0.
    Otherwise the construction is mirrored using the top weight.  ``truth``
    defaults to the midpoint of the admissible range and is given in the
    unmirrored frame.
    """
    if is_nom(w):
        return None
    mirrored = not _interior(w.first)
    wk = w.last if mirrored else w.first
    t = (1.0 - wk) / 4.0 if truth is None else check_location(truth, "truth")
    if not 0.0 < t < (1.0 - wk) / 2.0:
        raise ValueError(f"truth {t} outside the admissible range (0, {(1.0 - wk) / 2.0})")
    if mirrored:
        t, misreport = 1.0 - t, 1.0
    else:
        misreport = 0.0
    honest_others = _worst_others(w, t, t)
    lied_others = _worst_others(w, t, misreport)
    honest = owa_locate(w, _with_first(t, honest_others))
    lied = owa_locate(w, _with_first(misreport, lied_others))
    return ManipulationWitness(
        agent=1,
        truth=t,
        misreport=misreport,
        profile_others=honest_others,
        truthful_outcome=honest,
        manipulated_outcome=lied,
        gain=worst_case_utility(w, t, misreport) - worst_case_utility(w, t, t),
        kind="NOM-W",
        misreport_others=lied_others,
    )


def _with_first(report, others):
    return (report,) + tuple(others)


def _worst_others(w: OwaWeights, truth: float, report: float) -> tuple[float, ...]:
    r = reachable_interval(w, report)
    side = 0.0 if abs(truth - r.lo) > abs(truth - r.hi) else 1.0
    return (side,) * (w.n - 1)
