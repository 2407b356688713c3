"""
Domain types and mechanism families for one-dimensional facility location.

Agents report peaks on the street ``[0, 1]``; a mechanism maps the profile of
reports to a facility location.  Three families are provided:

* OWA: a weighted sum of the sorted reports, weights indexed by rank.
* AGMVS: the median of the reports together with ``n - 1`` fixed phantoms.
* GMVS: ``min`` over non-empty coalitions ``S`` of ``max(x_S, alpha_S)``.

Agents are labelled ``1..n`` wherever an index leaves the library (witnesses,
coalitions, GMVS subset keys); internal arrays are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

EPS_W = 1e-9
EPS_LOC = 1e-9
N_MAX_GMVS = 16

PRESET_NAMES = (
    "median",
    "center",
    "standard_average",
    "olympic_average",
    "order_statistic",
    "uniform_phantom",
)


class DomainError(ValueError):
    """Raised when an input violates a type invariant."""


def check_location(value, what: str = "location") -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
        raise DomainError(f"{what} must be a real number, got {value!r}")
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{what} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class Profile:
    """Reported peaks in agent order (not sorted)."""

    locations: tuple[float, ...]

    def __post_init__(self):
        locs = tuple(check_location(v, f"location of agent {i + 1}") for i, v in enumerate(self.locations))
        if not locs:
            raise DomainError("a profile needs at least one agent")
        object.__setattr__(self, "locations", locs)

    @property
    def n(self) -> int:
        return len(self.locations)

    def __len__(self):
        return len(self.locations)

    def __iter__(self):
        return iter(self.locations)

    def __getitem__(self, i):
        return self.locations[i]

    def replace(self, agent: int, value: float) -> "Profile":
        """Profile with the 1-based ``agent`` reporting ``value`` instead."""
        locs = list(self.locations)
        locs[agent - 1] = value
        return Profile(tuple(locs))


ProfileLike = Union[Profile, Sequence[float]]


def as_profile(x: ProfileLike) -> Profile:
    return x if isinstance(x, Profile) else Profile(tuple(x))


@dataclass(frozen=True)
class OwaWeights:
    """OWA weights ``w_1..w_n``; ``w_j`` multiplies the j-th smallest report."""

    weights: tuple[float, ...]

    def __post_init__(self):
        ws = []
        for j, v in enumerate(self.weights):
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)):
                raise DomainError(f"weight w_{j + 1} must be a real number, got {v!r}")
            v = float(v)
            if not (-EPS_W <= v <= 1.0 + EPS_W):
                raise DomainError(f"weight w_{j + 1} = {v!r} outside [0, 1]")
            ws.append(v)
        if not ws:
            raise DomainError("at least one weight is required")
        total = math.fsum(ws)
        if abs(total - 1.0) > EPS_W:
            raise DomainError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", tuple(ws))

    @property
    def n(self) -> int:
        return len(self.weights)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, j):
        return self.weights[j]

    @property
    def first(self) -> float:
        return self.weights[0]

    @property
    def last(self) -> float:
        return self.weights[-1]


@dataclass(frozen=True)
class AgmvsParams:
    """Phantom peaks ``beta_1..beta_{n-1}`` of an anonymous median voter scheme."""

    betas: tuple[float, ...]
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"agent count must be a positive integer, got {self.n!r}")
        betas = tuple(check_location(b, f"phantom beta_{l + 1}") for l, b in enumerate(self.betas))
        if len(betas) != self.n - 1:
            raise DomainError(f"expected {self.n - 1} phantoms for n={self.n}, got {len(betas)}")
        object.__setattr__(self, "betas", betas)


@dataclass(frozen=True)
class GmvsParams:
    """Subset parameters of a generalized median voter scheme.

    ``alphas[mask - 1]`` is ``alpha_S`` for the coalition whose bitmask is
    ``mask`` (bit ``i`` set means agent ``i + 1`` belongs to ``S``).
    """

    alphas: tuple[float, ...]
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"agent count must be a positive integer, got {self.n!r}")
        if self.n > N_MAX_GMVS:
            raise DomainError(f"GMVS supports at most {N_MAX_GMVS} agents, got {self.n}")
        alphas = tuple(check_location(a, "alpha") for a in self.alphas)
        if len(alphas) != 2**self.n - 1:
            raise DomainError(f"expected {2**self.n - 1} subset parameters, got {len(alphas)}")
        object.__setattr__(self, "alphas", alphas)

    @classmethod
    def from_mapping(cls, alphas: Mapping[Iterable[int], float], n: int) -> "GmvsParams":
        """Build from ``{coalition: alpha}`` with coalitions given as 1-based agent sets."""
        if n > N_MAX_GMVS:
            raise DomainError(f"GMVS supports at most {N_MAX_GMVS} agents, got {n}")
        table: list[float | None] = [None] * (2**n - 1)
        for coalition, value in alphas.items():
            mask = 0
            for agent in coalition:
                if not 1 <= agent <= n:
                    raise DomainError(f"agent {agent} outside 1..{n}")
                mask |= 1 << (agent - 1)
            if mask == 0:
                raise DomainError("the empty coalition carries no parameter")
            if table[mask - 1] is not None:
                raise DomainError(f"duplicate entry for coalition {sorted(coalition)}")
            table[mask - 1] = value
        missing = [m + 1 for m, v in enumerate(table) if v is None]
        if missing:
            raise DomainError(f"{len(missing)} coalitions have no parameter")
        return cls(tuple(table), n)

    def alpha(self, coalition: Iterable[int]) -> float:
        mask = 0
        for agent in coalition:
            mask |= 1 << (agent - 1)
        return self.alphas[mask - 1]


@dataclass(frozen=True)
class Mechanism:
    """Uniform handle over the three mechanism families."""

    family: str
    params: Union[OwaWeights, AgmvsParams, GmvsParams]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        expected = {"owa": OwaWeights, "agmvs": AgmvsParams, "gmvs": GmvsParams}
        if self.family not in expected:
            raise DomainError(f"unknown mechanism family {self.family!r}")
        if not isinstance(self.params, expected[self.family]):
            raise DomainError(f"{self.family} mechanism needs {expected[self.family].__name__}")

    @classmethod
    def owa(cls, weights, label=None) -> "Mechanism":
        if not isinstance(weights, OwaWeights):
            weights = OwaWeights(tuple(weights))
        return cls("owa", weights, label)

    @classmethod
    def agmvs(cls, betas, n=None, label=None) -> "Mechanism":
        if not isinstance(betas, AgmvsParams):
            betas = tuple(betas)
            betas = AgmvsParams(betas, len(betas) + 1 if n is None else n)
        return cls("agmvs", betas, label)

    @classmethod
    def gmvs(cls, params: GmvsParams, label=None) -> "Mechanism":
        return cls("gmvs", params, label)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def is_anonymous(self) -> bool:
        return self.family in ("owa", "agmvs")

    @property
    def name(self) -> str:
        return self.label or self.family

    def __call__(self, x: ProfileLike) -> float:
        return locate(self, x)


def utility(peak: float, outcome: float) -> float:
    """``1 - |peak - outcome|``."""
    return 1.0 - abs(check_location(peak, "peak") - check_location(outcome, "outcome"))


def cost(peak: float, outcome: float) -> float:
    return abs(check_location(peak, "peak") - check_location(outcome, "outcome"))


def _check_length(expected: int, x: Profile):
    if len(x) != expected:
        raise DomainError(f"profile has {len(x)} agents, mechanism expects {expected}")


def owa_locate(w: OwaWeights, x: ProfileLike) -> float:
    x = as_profile(x)
    _check_length(w.n, x)
    # A stable sort keeps ties in agent order; the weighted sum does not depend on it.
    ordered = sorted(x.locations)
    value = math.fsum(wj * xj for wj, xj in zip(w.weights, ordered))
    # fsum can exceed the convex hull by one ulp.
    return min(max(value, ordered[0]), ordered[-1])


def left_median(points: Sequence[float]) -> float:
    """The ``ceil(m/2)``-th smallest of ``m`` points."""
    if not points:
        raise DomainError("median of an empty multiset")
    ordered = sorted(points)
    return ordered[(len(ordered) + 1) // 2 - 1]


def agmvs_locate(p: AgmvsParams, x: ProfileLike) -> float:
    x = as_profile(x)
    _check_length(p.n, x)
    return left_median(x.locations + p.betas)


def gmvs_locate(p: GmvsParams, x: ProfileLike) -> float:
    x = as_profile(x)
    _check_length(p.n, x)
    best = math.inf
    for mask in range(1, 2**p.n):
        worst_in_s = p.alphas[mask - 1]
        for i in range(p.n):
            if mask >> i & 1 and x.locations[i] > worst_in_s:
                worst_in_s = x.locations[i]
        if worst_in_s < best:
            best = worst_in_s
    return best


def locate(mech: Mechanism, x: ProfileLike) -> float:
    if mech.family == "owa":
        return owa_locate(mech.params, x)
    if mech.family == "agmvs":
        return agmvs_locate(mech.params, x)
    return gmvs_locate(mech.params, x)


def locate_batch(mech: Mechanism, xs: np.ndarray) -> np.ndarray:
    """Vectorised ``locate`` over the rows of an ``(m, n)`` array.

    Inputs are trusted (grid sweeps build them); no range validation here.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 2 or xs.shape[1] != mech.n:
        raise DomainError(f"expected an array of shape (m, {mech.n}), got {xs.shape}")
    if mech.family == "owa":
        w = np.asarray(mech.params.weights)
        ordered = np.sort(xs, axis=1)
        out = ordered @ w
        return np.clip(out, ordered[:, 0], ordered[:, -1])
    if mech.family == "agmvs":
        n = mech.n
        if n == 1:
            return xs[:, 0].copy()
        phantoms = np.broadcast_to(np.asarray(mech.params.betas), (xs.shape[0], n - 1))
        pooled = np.concatenate([xs, phantoms], axis=1)
        return np.partition(pooled, n - 1, axis=1)[:, n - 1]
    alphas = mech.params.alphas
    best = np.full(xs.shape[0], np.inf)
    for mask in range(1, 2**mech.n):
        cols = [i for i in range(mech.n) if mask >> i & 1]
        worst_in_s = np.maximum(xs[:, cols].max(axis=1), alphas[mask - 1])
        np.minimum(best, worst_in_s, out=best)
    return best


def order_statistic_weights(j: int, n: int) -> OwaWeights:
    _check_index(j, n)
    return OwaWeights(tuple(1.0 if k == j - 1 else 0.0 for k in range(n)))


def order_statistic_as_agmvs(j: int, n: int) -> AgmvsParams:
    """Phantoms that make the AGMVS return the j-th smallest report: ``n - j`` zeros, then ones."""
    _check_index(j, n)
    return AgmvsParams(tuple(0.0 if k < n - j else 1.0 for k in range(n - 1)), n)


def agmvs_as_gmvs(p: AgmvsParams) -> GmvsParams:
    """Lift an AGMVS to the equivalent GMVS.

    With phantoms sorted ascending as ``b_1..b_{n-1}``, the scheme has
    ``alpha_S = b_{n-|S|}`` and ``alpha_N = 0``.
    """
    if p.n > N_MAX_GMVS:
        raise DomainError(f"GMVS supports at most {N_MAX_GMVS} agents, got {p.n}")
    b = sorted(p.betas)
    by_size = [0.0] * (p.n + 1)
    for s in range(1, p.n):
        by_size[s] = b[p.n - s - 1]
    alphas = tuple(by_size[bin(mask).count("1")] for mask in range(1, 2**p.n))
    return GmvsParams(alphas, p.n)


def _check_index(j, n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"agent count must be a positive integer, got {n!r}")
    if isinstance(j, bool) or not isinstance(j, int) or not 1 <= j <= n:
        raise DomainError(f"order statistic index must be in 1..{n}, got {j!r}")


def preset(name: str, n: int, j: int | None = None) -> Mechanism:
    """Named mechanisms.

    ``order_statistic`` needs ``j``; it may also be folded into the name as
    ``order_statistic:3``.  ``median`` is the ``ceil(n/2)``-th order statistic.
    """
    if ":" in name:
        name, _, raw = name.partition(":")
        try:
            j = int(raw)
        except ValueError:
            raise DomainError(f"bad order statistic index {raw!r}") from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"agent count must be a positive integer, got {n!r}")
    if name == "median":
        k = (n + 1) // 2
        return Mechanism.owa(order_statistic_weights(k, n), label="median")
    if name == "center":
        if n == 1:
            return Mechanism.owa((1.0,), label="center")
        return Mechanism.owa(tuple(0.5 if k in (0, n - 1) else 0.0 for k in range(n)), label="center")
    if name == "standard_average":
        return Mechanism.owa((1.0 / n,) * n, label="standard_average")
    if name == "olympic_average":
        if n < 3:
            raise DomainError("the Olympic average needs at least 3 agents")
        inner = 1.0 / (n - 2)
        return Mechanism.owa((0.0,) + (inner,) * (n - 2) + (0.0,), label="olympic_average")
    if name == "order_statistic":
        if j is None:
            raise DomainError("order_statistic needs an index j")
        return Mechanism.owa(order_statistic_weights(j, n), label=f"order_statistic:{j}")
    if name == "uniform_phantom":
        return Mechanism.agmvs(AgmvsParams(tuple(l / n for l in range(1, n)), n), label="uniform_phantom")
    raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")


def subsets(n: int):
    """Non-empty coalitions of ``1..n`` as sorted tuples, by size then lexicographically."""
    agents = range(1, n + 1)
    for size in range(1, n + 1):
        yield from combinations(agents, size)
