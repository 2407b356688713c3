"""
Proportionality-based fairness for facility locations.

Point-level checks take a profile and an outcome; mechanism-level predicates
take OWA weights.  Coalitions and agents are reported 1-based.

``pf_at`` avoids enumerating coalitions: for a coalition with extreme
locations ``p <= q`` the bound ``1 - |S|/n + (q - p)`` only tightens when
every agent located in ``[p, q]`` joins, and the farthest member from the
outcome is always at ``p`` or ``q``.  Checking each pair of sorted positions
therefore covers every coalition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .core import EPS_LOC, EPS_W, DomainError, OwaWeights, ProfileLike, as_profile, check_location

FAIRNESS_PROPERTIES = ("IFS", "UFS", "PF", "P", "UN")
BRUTEFORCE_MAX_N = 12


@dataclass(frozen=True)
class CoalitionWitness:
    coalition: tuple[int, ...]
    binding_agent: int
    slack: float

    def to_dict(self) -> dict:
        return {"coalition": list(self.coalition), "binding_agent": self.binding_agent, "slack": self.slack}

    @classmethod
    def from_dict(cls, data: dict) -> "CoalitionWitness":
        return cls(tuple(data["coalition"]), data["binding_agent"], data["slack"])


@dataclass(frozen=True)
class FairnessVerdict:
    property: str
    holds: bool
    witness: CoalitionWitness | None = None

    def __post_init__(self):
        if self.property not in FAIRNESS_PROPERTIES:
            raise ValueError(f"unknown fairness property {self.property!r}")
        if not self.holds and (self.witness is None or not self.witness.slack < 0):
            raise ValueError("a violated verdict needs a witness with negative slack")

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FairnessVerdict":
        w = data.get("witness")
        return cls(data["property"], data["holds"], None if w is None else CoalitionWitness.from_dict(w))


def _verdict(prop, violation):
    if violation is None:
        return FairnessVerdict(prop, True)
    return FairnessVerdict(prop, False, violation)


def ifs_at(x: ProfileLike, y: float) -> FairnessVerdict:
    x = as_profile(x)
    y = check_location(y, "outcome")
    bound = 1.0 - 1.0 / x.n
    for agent, xi in enumerate(x.locations, start=1):
        slack = bound - abs(xi - y)
        if slack < -EPS_LOC:
            return _verdict("IFS", CoalitionWitness((agent,), agent, slack))
    return _verdict("IFS", None)


def ufs_at(x: ProfileLike, y: float) -> FairnessVerdict:
    """Only the full group at each location is checked; smaller groups have looser bounds."""
    x = as_profile(x)
    y = check_location(y, "outcome")
    order = sorted(range(x.n), key=lambda i: x.locations[i])
    for c, members in groupby(order, key=lambda i: x.locations[i]):
        members = tuple(i + 1 for i in members)
        slack = 1.0 - len(members) / x.n - abs(c - y)
        if slack < -EPS_LOC:
            return _verdict("UFS", CoalitionWitness(members, members[0], slack))
    return _verdict("UFS", None)


def pf_at(x: ProfileLike, y: float) -> FairnessVerdict:
    x = as_profile(x)
    y = check_location(y, "outcome")
    n = x.n
    order = sorted(range(n), key=lambda i: x.locations[i])
    sx = [x.locations[i] for i in order]
    for a in range(n):
        p = sx[a]
        # first sorted position holding location p
        start = a
        while start > 0 and sx[start - 1] == p:
            start -= 1
        for b in range(a, n):
            q = sx[b]
            stop = b
            while stop + 1 < n and sx[stop + 1] == q:
                stop += 1
            size = stop - start + 1
            dp, dq = abs(p - y), abs(q - y)
            slack = 1.0 - size / n + (q - p) - max(dp, dq)
            if slack < -EPS_LOC:
                members = tuple(sorted(order[k] + 1 for k in range(start, stop + 1)))
                binding = order[a] + 1 if dp >= dq else order[b] + 1
                return _verdict("PF", CoalitionWitness(members, binding, slack))
    return _verdict("PF", None)


def pf_at_bruteforce(x: ProfileLike, y: float) -> FairnessVerdict:
    """Enumerate every non-empty coalition directly."""
    x = as_profile(x)
    y = check_location(y, "outcome")
    n = x.n
    if n > BRUTEFORCE_MAX_N:
        raise DomainError(f"brute-force PF is limited to n <= {BRUTEFORCE_MAX_N}, got {n}")
    locs = x.locations
    for mask in range(1, 2**n):
        members = [i for i in range(n) if mask >> i & 1]
        pts = [locs[i] for i in members]
        bound = 1.0 - len(members) / n + (max(pts) - min(pts))
        far = max(members, key=lambda i: abs(locs[i] - y))
        slack = bound - abs(locs[far] - y)
        if slack < -EPS_LOC:
            return _verdict("PF", CoalitionWitness(tuple(i + 1 for i in members), far + 1, slack))
    return _verdict("PF", None)


def proportional_at(x: ProfileLike, y: float) -> FairnessVerdict:
    """Proportionality on a 0/1 profile: the outcome must equal the share of agents at 1."""
    x = as_profile(x)
    y = check_location(y, "outcome")
    if any(v not in (0.0, 1.0) for v in x.locations):
        raise DomainError("proportionality is defined on profiles with every location in {0, 1}")
    ones = tuple(i for i, v in enumerate(x.locations, start=1) if v == 1.0)
    slack = -abs(y - len(ones) / x.n)
    if slack < -EPS_LOC:
        coalition = ones or tuple(range(1, x.n + 1))
        return _verdict("P", CoalitionWitness(coalition, coalition[0], slack))
    return _verdict("P", None)


def unanimous_at(x: ProfileLike, y: float) -> FairnessVerdict:
    x = as_profile(x)
    y = check_location(y, "outcome")
    c = x.locations[0]
    if any(v != c for v in x.locations):
        return _verdict("UN", None)
    slack = -abs(y - c)
    if slack < -EPS_LOC:
        return _verdict("UN", CoalitionWitness(tuple(range(1, x.n + 1)), 1, slack))
    return _verdict("UN", None)


POINT_CHECKS = {
    "IFS": ifs_at,
    "UFS": ufs_at,
    "PF": pf_at,
    "P": proportional_at,
    "UN": unanimous_at,
}


def is_ifs(w: OwaWeights) -> bool:
    return w.first >= 1.0 / w.n - EPS_W and w.last >= 1.0 / w.n - EPS_W


def is_pf(w: OwaWeights) -> bool:
    return all(abs(wj - 1.0 / w.n) <= EPS_W for wj in w.weights)


def is_proportional(w: OwaWeights) -> bool:
    # On the profile with j agents at 0 and the rest at 1 the OWA returns 1 minus the j-th prefix sum.
    total = 0.0
    for j, wj in enumerate(w.weights, start=1):
        total += wj
        if abs(total - j / w.n) > w.n * EPS_W:
            return False
    return True


def is_ufs(w: OwaWeights) -> bool:
    # For OWAs PF, UFS and P coincide.
    return is_pf(w)


def is_unanimous(w: OwaWeights) -> bool:
    return True


ANALYTIC_FAIRNESS = {
    "IFS": is_ifs,
    "UFS": is_ufs,
    "PF": is_pf,
    "P": is_proportional,
    "UN": is_unanimous,
}
