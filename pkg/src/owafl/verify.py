"""
Exhaustive grid verification of incentive and fairness properties.

Every empirical check scans a finite grid and returns ``(holds, witness)``
with the first witness in a fixed iteration order, so repeated runs produce
identical reports.  A grid pass is evidence rather than proof; reports label
empirical verdicts with the grid step used.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import fairness, incentives
from .core import (
    EPS_LOC,
    DomainError,
    Mechanism,
    OwaWeights,
    Profile,
    locate,
    locate_batch,
    order_statistic_weights,
    preset,
    utility,
)
from .io import mechanism_from_dict, mechanism_to_dict

DEFAULT_BUDGET = 10**7
INCENTIVE_PROPERTIES = ("SP", "NOM", "NOM-B")
REPORT_PROPERTIES = ("SP", "NOM", "NOM-B", "IFS", "PF", "P", "UN")
CROSS_VALIDATED = ("SP", "NOM", "NOM-B", "IFS", "PF", "P")
MATRIX_ROWS = ("SP", "NOM", "NOM-B")
MATRIX_COLUMNS = ("PF", "IFS", "UN")

# rows per vectorised block in the SP sweep
_BLOCK_CELLS = 1 << 22


class BudgetExceeded(DomainError):
    pass


class VerificationMismatch(AssertionError):
    """Analytic and empirical verdicts disagree."""

    def __init__(self, weights, prop, analytic, empirical, witness=None):
        self.weights = weights
        self.property = prop
        self.analytic = analytic
        self.empirical = empirical
        self.witness = witness
        super().__init__(
            f"{prop}: analytic={analytic} but empirical={empirical} for weights {list(weights)}"
            + (f"; witness {witness}" if witness is not None else "")
        )

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights),
            "property": self.property,
            "analytic": self.analytic,
            "empirical": self.empirical,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class GridSpec:
    """Location grid ``{0, 1/k, ..., 1}`` and weight simplex grid with step ``1/m``."""

    n: int
    k: int = 10
    m: int = 4
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        for name in ("n", "k", "m", "budget"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise DomainError(f"grid parameter {name} must be a positive integer, got {v!r}")

    @property
    def location_step(self) -> float:
        return 1.0 / self.k

    @property
    def weight_step(self) -> float:
        return 1.0 / self.m

    @property
    def misreport_step(self) -> float:
        return 1.0 / self.k

    @property
    def points(self) -> tuple[float, ...]:
        return tuple(i / self.k for i in range(self.k + 1))

    @property
    def profile_count(self) -> int:
        return (self.k + 1) ** self.n

    def label(self) -> str:
        return f"grid-verified at step 1/{self.k}"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "m": self.m, "budget": self.budget}

    @classmethod
    def from_dict(cls, data: dict) -> "GridSpec":
        return cls(data["n"], data["k"], data["m"], data["budget"])


def _charge(spec: GridSpec, evaluations: int, what: str):
    if evaluations > spec.budget:
        raise BudgetExceeded(
            f"{what} needs {evaluations} mechanism evaluations, over the budget of {spec.budget}; "
            "use a coarser grid or raise the budget"
        )


def enumerate_profiles(spec: GridSpec) -> Iterator[Profile]:
    """All ``(k+1)^n`` grid profiles in lexicographic order."""
    _charge(spec, spec.profile_count, "profile enumeration")
    for combo in itertools.product(spec.points, repeat=spec.n):
        yield Profile(combo)


def _grid_array(spec: GridSpec, n: int | None = None) -> np.ndarray:
    n = spec.n if n is None else n
    idx = np.indices((spec.k + 1,) * n).reshape(n, -1).T
    return idx / spec.k


def _as_mechanism(mech) -> Mechanism:
    if isinstance(mech, Mechanism):
        return mech
    if isinstance(mech, OwaWeights):
        return Mechanism.owa(mech)
    raise TypeError(f"expected a Mechanism or OwaWeights, got {type(mech).__name__}")


def _check_arity(mech: Mechanism, spec: GridSpec):
    if mech.n != spec.n:
        raise DomainError(f"grid is for n={spec.n} but mechanism has n={mech.n}")


def empirical_sp(mech, spec: GridSpec):
    """Search the grid for a profitable unilateral misreport.

    Iterates profiles lexicographically, then agents, then misreports.
    """
    mech = _as_mechanism(mech)
    _check_arity(mech, spec)
    n, K = spec.n, spec.k + 1
    _charge(spec, spec.profile_count * (1 + n * K), "SP sweep")
    xs = _grid_array(spec)
    grid = np.asarray(spec.points)
    block = max(1, _BLOCK_CELLS // (n * n * K))
    for start in range(0, xs.shape[0], block):
        X = xs[start : start + block]
        B = X.shape[0]
        base = locate_batch(mech, X)
        gains = np.empty((B, n, K))
        for i in range(n):
            lied = np.repeat(X[:, None, :], K, axis=1)
            lied[:, :, i] = grid[None, :]
            out = locate_batch(mech, lied.reshape(B * K, n)).reshape(B, K)
            t = X[:, i : i + 1]
            gains[:, i, :] = np.abs(t - base[:, None]) - np.abs(t - out)
        hits = np.flatnonzero(gains.ravel() > EPS_LOC)
        for flat in hits:
            b, i, r = np.unravel_index(flat, gains.shape)
            witness = _sp_witness(mech, tuple(float(v) for v in X[b]), int(i), float(grid[r]))
            if witness is not None:
                return False, witness
    return True, None


def _sp_witness(mech, profile, i, misreport):
    truth = profile[i]
    others = profile[:i] + profile[i + 1 :]
    honest = locate(mech, profile)
    lied = locate(mech, profile[:i] + (misreport,) + profile[i + 1 :])
    gain = utility(truth, lied) - utility(truth, honest)
    if gain <= EPS_LOC:
        return None
    return incentives.ManipulationWitness(
        agent=i + 1,
        truth=truth,
        misreport=misreport,
        profile_others=others,
        truthful_outcome=honest,
        manipulated_outcome=lied,
        gain=gain,
    )


def _nom_tables_closed_form(w: OwaWeights, spec: GridSpec):
    pts = spec.points
    worst = np.array([[incentives.worst_case_utility(w, t, r) for r in pts] for t in pts])
    best = np.array([[incentives.best_case_utility(w, t, r) for r in pts] for t in pts])
    return worst, best


def _nom_closed_form_witness(w, t, r, kind):
    if kind == "NOM-W":
        honest_others = incentives._worst_others(w, t, t)
        lied_others = incentives._worst_others(w, t, r)
        gain = incentives.worst_case_utility(w, t, r) - incentives.worst_case_utility(w, t, t)
    else:
        # Best case: the truthful best is always 1 for an OWA, so this branch is unreachable for valid weights.
        honest_others = lied_others = (t,) * (w.n - 1)
        gain = incentives.best_case_utility(w, t, r) - incentives.best_case_utility(w, t, t)
    return incentives.ManipulationWitness(
        agent=1,
        truth=t,
        misreport=r,
        profile_others=honest_others,
        truthful_outcome=locate(Mechanism.owa(w), (t,) + honest_others),
        manipulated_outcome=locate(Mechanism.owa(w), (r,) + lied_others),
        gain=gain,
        kind=kind,
        misreport_others=lied_others,
    )


def _nom_scan_grid(mech: Mechanism, spec: GridSpec, which):
    n, K = spec.n, spec.k + 1
    agents = [0] if mech.is_anonymous else list(range(n))
    others = _grid_array(spec, n - 1)
    _charge(spec, len(agents) * K * others.shape[0], "NOM sweep")
    grid = np.asarray(spec.points)
    for i in agents:
        rows = []
        for r in grid:
            full = np.insert(others, i, r, axis=1)
            rows.append(locate_batch(mech, full))
        F = np.stack(rows)  # F[r, o]
        for ti, t in enumerate(grid):
            U = 1.0 - np.abs(t - F)
            for kind in which:
                if kind == "NOM-W":
                    ext, arg = U.min(axis=1), U.argmin(axis=1)
                else:
                    ext, arg = U.max(axis=1), U.argmax(axis=1)
                bad = np.flatnonzero(ext > ext[ti] + EPS_LOC)
                if bad.size:
                    ri = int(bad[0])
                    honest_others = tuple(float(v) for v in others[arg[ti]])
                    lied_others = tuple(float(v) for v in others[arg[ri]])
                    honest = locate(mech, _insert(honest_others, i, float(t)))
                    lied = locate(mech, _insert(lied_others, i, float(grid[ri])))
                    return incentives.ManipulationWitness(
                        agent=i + 1,
                        truth=float(t),
                        misreport=float(grid[ri]),
                        profile_others=honest_others,
                        truthful_outcome=honest,
                        manipulated_outcome=lied,
                        gain=float(ext[ri] - ext[ti]),
                        kind=kind,
                        misreport_others=lied_others,
                    )
    return None


def _insert(others, i, value):
    return others[:i] + (value,) + others[i:]


def _nom_scan(mech, spec: GridSpec, engine: str, which=("NOM-W", "NOM-B")):
    mech = _as_mechanism(mech)
    _check_arity(mech, spec)
    if engine == "grid":
        return _nom_scan_grid(mech, spec, which)
    if engine != "closed_form":
        raise DomainError(f"unknown NOM engine {engine!r}")
    if mech.family != "owa":
        raise DomainError("the closed-form NOM engine applies to OWA mechanisms only; use engine='grid'")
    w = mech.params
    worst, best = _nom_tables_closed_form(w, spec)
    pts = spec.points
    for ti, t in enumerate(pts):
        for ri, r in enumerate(pts):
            for kind in which:
                table = worst if kind == "NOM-W" else best
                if table[ti, ri] > table[ti, ti] + EPS_LOC:
                    return _nom_closed_form_witness(w, t, r, kind)
    return None


def empirical_nom(mech, spec: GridSpec, engine: str = "closed_form"):
    """Check both the best- and worst-case conditions over grid (truth, report) pairs.

    ``engine="closed_form"`` uses the reachable-interval utilities (OWA only);
    ``engine="grid"`` minimises and maximises over all grid opponent profiles
    and works for any mechanism.
    """
    witness = _nom_scan(mech, spec, engine)
    return witness is None, witness


def empirical_nom_b(mech, spec: GridSpec, engine: str = "closed_form"):
    witness = _nom_scan(mech, spec, engine, which=("NOM-B",))
    return witness is None, witness


@dataclass(frozen=True)
class FairnessWitness:
    profile: tuple[float, ...]
    outcome: float
    verdict: fairness.FairnessVerdict

    def to_dict(self) -> dict:
        return {"profile": list(self.profile), "outcome": self.outcome, "verdict": self.verdict.to_dict()}


def _binary_profiles(n: int, anonymous: bool) -> list[tuple[float, ...]]:
    """0/1 profiles, most agents at 1 first."""
    if anonymous:
        return [(0.0,) * (n - ones) + (1.0,) * ones for ones in range(n, -1, -1)]
    combos = itertools.product((0.0, 1.0), repeat=n)
    return sorted(combos, key=lambda c: (-sum(c), c))


def _batch_slack(prop: str, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    n = X.shape[1]
    d = np.abs(X - Y[:, None])
    if prop == "IFS":
        return (1.0 - 1.0 / n) - d.max(axis=1)
    if prop == "UFS":
        mult = (X[:, :, None] == X[:, None, :]).sum(axis=2)
        return (1.0 - mult / n - d).min(axis=1)
    if prop == "PF":
        S = np.sort(X, axis=1)
        dS = np.abs(S - Y[:, None])
        out = np.full(X.shape[0], np.inf)
        for a in range(n):
            inside_lo = S >= S[:, a : a + 1]
            for b in range(a, n):
                size = (inside_lo & (S <= S[:, b : b + 1])).sum(axis=1)
                slack = 1.0 - size / n + (S[:, b] - S[:, a]) - np.maximum(dS[:, a], dS[:, b])
                np.minimum(out, slack, out=out)
        return out
    raise DomainError(f"no batch check for {prop}")


def empirical_fairness(mech, prop: str, spec: GridSpec):
    """Scan for a profile whose outcome violates ``prop``.

    P looks only at 0/1 profiles and UN only at constant grid profiles.  For
    IFS, UFS and PF the 0/1 corner profiles are scanned first (most agents at
    1 first), then the rest of the grid in lexicographic order.
    """
    mech = _as_mechanism(mech)
    _check_arity(mech, spec)
    if prop not in fairness.FAIRNESS_PROPERTIES:
        raise DomainError(f"unknown fairness property {prop!r}")
    check = fairness.POINT_CHECKS[prop]
    n = spec.n
    if prop in ("P", "UN"):
        if prop == "P":
            candidates = _binary_profiles(n, mech.is_anonymous)
        else:
            candidates = [(c,) * n for c in spec.points]
        _charge(spec, len(candidates), f"{prop} sweep")
        for x in candidates:
            y = locate(mech, x)
            verdict = check(x, y)
            if not verdict.holds:
                return False, FairnessWitness(x, y, verdict)
        return True, None

    _charge(spec, spec.profile_count + 2**n, f"{prop} sweep")
    corners = np.array(_binary_profiles(n, anonymous=False))
    for X in (corners, _grid_array(spec)):
        Y = locate_batch(mech, X)
        slack = _batch_slack(prop, X, Y)
        for row in np.flatnonzero(slack < -EPS_LOC / 2):
            x = tuple(float(v) for v in X[row])
            y = locate(mech, x)
            verdict = check(x, y)
            if not verdict.holds:
                return False, FairnessWitness(x, y, verdict)
    return True, None


def simplex_grid(n: int, m: int) -> Iterator[OwaWeights]:
    """Weight vectors ``(c_1/m, ..., c_n/m)`` for every composition of ``m`` into ``n`` non-negative parts.

    Compositions are generated in lexicographic order of ``(c_1, ..., c_n)``.
    """
    def parts(remaining, slots):
        if slots == 1:
            yield (remaining,)
            return
        for c in range(remaining + 1):
            for rest in parts(remaining - c, slots - 1):
                yield (c,) + rest

    for comp in parts(m, n):
        yield OwaWeights(tuple(c / m for c in comp))


ANALYTIC_INCENTIVES = {
    "SP": incentives.is_sp,
    "NOM": incentives.is_nom,
    "NOM-B": incentives.is_nom_b,
}


def analytic_predicates() -> dict:
    return {**ANALYTIC_INCENTIVES, **fairness.ANALYTIC_FAIRNESS}


def _empirical(prop, w, spec, nom_engine="closed_form"):
    if prop == "SP":
        return empirical_sp(w, spec)
    if prop == "NOM":
        return empirical_nom(w, spec, engine=nom_engine)
    if prop == "NOM-B":
        return empirical_nom_b(w, spec, engine=nom_engine)
    return empirical_fairness(w, prop, spec)


def _witness_dict(witness):
    return None if witness is None else witness.to_dict()


def _revalidate(prop, mech, witness):
    """Replay a witness through the scalar operations."""
    if witness is None:
        return True
    if isinstance(witness, incentives.ManipulationWitness):
        return witness.replay(mech) > 0
    y = locate(mech, witness.profile)
    return not fairness.POINT_CHECKS[prop](witness.profile, y).holds and witness.verdict.witness.slack < 0


@dataclass
class CrossValidationReport:
    spec: GridSpec
    weight_vectors: int = 0
    checks: int = 0
    mismatches: int = 0
    satisfied: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "grid": self.spec.to_dict(),
            "weight_vectors": self.weight_vectors,
            "checks": self.checks,
            "mismatches": self.mismatches,
            "satisfied": dict(sorted(self.satisfied.items())),
            "basis": self.spec.label(),
        }


def cross_validate(spec: GridSpec, analytic: dict | None = None) -> CrossValidationReport:
    """Compare each analytic predicate with its grid verdict over the whole weight simplex grid.

    NOM and NOM-B are checked with both the closed-form and the brute-force
    grid engine.  ``analytic`` overrides individual predicates (used to
    exercise the failure path).  Raises :class:`VerificationMismatch` on the
    first disagreement.
    """
    predicates = analytic_predicates()
    if analytic:
        predicates.update(analytic)
    report = CrossValidationReport(spec, satisfied={p: 0 for p in CROSS_VALIDATED})
    for w in simplex_grid(spec.n, spec.m):
        report.weight_vectors += 1
        for prop in CROSS_VALIDATED:
            expected = bool(predicates[prop](w))
            engines = ("closed_form", "grid") if prop in ("NOM", "NOM-B") else ("closed_form",)
            for engine in engines:
                holds, witness = _empirical(prop, w, spec, nom_engine=engine)
                report.checks += 1
                if holds != expected or not _revalidate(prop, Mechanism.owa(w), witness):
                    report.mismatches += 1
                    raise VerificationMismatch(w.weights, prop, expected, holds, _witness_dict(witness))
            report.satisfied[prop] += expected
    return report


@dataclass(frozen=True)
class MatrixCell:
    compatible: bool
    witness: tuple[float, ...] | None
    grid_confirmed: bool
    grid_size: int

    def to_dict(self) -> dict:
        return {
            "compatible": self.compatible,
            "witness": None if self.witness is None else list(self.witness),
            "grid_confirmed": self.grid_confirmed,
            "grid_size": self.grid_size,
        }


@dataclass(frozen=True)
class CompatibilityMatrix:
    n: int
    m: int
    cells: dict

    def cell(self, row: str, col: str) -> MatrixCell:
        return self.cells[(row, col)]

    def pattern(self) -> dict:
        return {row: {col: self.cells[(row, col)].compatible for col in MATRIX_COLUMNS} for row in MATRIX_ROWS}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "rows": list(MATRIX_ROWS),
            "columns": list(MATRIX_COLUMNS),
            "cells": {f"{r}x{c}": self.cells[(r, c)].to_dict() for r in MATRIX_ROWS for c in MATRIX_COLUMNS},
        }

    def to_csv(self) -> str:
        lines = ["," + ",".join(MATRIX_COLUMNS)]
        for r in MATRIX_ROWS:
            lines.append(r + "," + ",".join("yes" if self.cells[(r, c)].compatible else "no" for c in MATRIX_COLUMNS))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        width = 7
        out = [f"OWA compatibility, n={self.n} (incompatible cells grid-searched with step 1/{self.m})"]
        out.append("".ljust(width) + "".join(c.ljust(width) for c in MATRIX_COLUMNS))
        for r in MATRIX_ROWS:
            out.append(r.ljust(width) + "".join(("yes" if self.cells[(r, c)].compatible else "no").ljust(width) for c in MATRIX_COLUMNS))
        out.append("witnesses:")
        for r in MATRIX_ROWS:
            for c in MATRIX_COLUMNS:
                cell = self.cells[(r, c)]
                if cell.witness is not None:
                    out.append(f"  {r} x {c}: " + format_vector(cell.witness))
        return "\n".join(out) + "\n"


def _candidate_weights(n: int) -> list[OwaWeights]:
    """Weight vectors that meet every non-empty cell of the matrix.

    SP holds exactly on the order-statistic vertices, so each SP cell is
    decided by them.  NOM adds only the face ``w_1 = w_n = 0``, which meets
    UN (Olympic average) but neither IFS nor PF since both need
    ``w_1 >= 1/n``.  NOM-B holds everywhere, so its cells are non-empty iff
    the fairness property is satisfiable at all, witnessed by the standard
    average.
    """
    cands = [order_statistic_weights(j, n) for j in range(1, n + 1)]
    cands.append(preset("standard_average", n).params)
    cands.append(preset("center", n).params)
    cands.append(preset("olympic_average", n).params)
    return cands


def compatibility_matrix(n: int, m: int | None = None) -> CompatibilityMatrix:
    """Decide each (incentive, fairness) cell for OWAs with ``n`` agents.

    Compatible cells carry a witness; incompatible cells are confirmed by
    checking every vector of the weight simplex grid with step ``1/m``
    (default ``m = 2n``).
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise DomainError(f"the compatibility matrix needs n >= 3, got {n!r}")
    m = 2 * n if m is None else m
    preds = analytic_predicates()
    cands = _candidate_weights(n)
    grid = None
    cells = {}
    for r in MATRIX_ROWS:
        for c in MATRIX_COLUMNS:
            witness = next((w for w in cands if preds[r](w) and preds[c](w)), None)
            if witness is not None:
                cells[(r, c)] = MatrixCell(True, witness.weights, False, 0)
                continue
            if grid is None:
                grid = list(simplex_grid(n, m))
            found = next((w for w in grid if preds[r](w) and preds[c](w)), None)
            if found is not None:
                raise VerificationMismatch(found.weights, f"{r}x{c}", False, True)
            cells[(r, c)] = MatrixCell(False, None, True, len(grid))
    return CompatibilityMatrix(n, m, cells)


@dataclass(frozen=True)
class PropertyRecord:
    analytic: bool | None
    empirical: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"analytic": self.analytic, "empirical": self.empirical, "witness": self.witness}

    @classmethod
    def from_dict(cls, data: dict) -> "PropertyRecord":
        return cls(data["analytic"], data["empirical"], data["witness"])


@dataclass(frozen=True)
class PropertyReport:
    mechanism: Mechanism
    records: dict
    grid: GridSpec

    def __post_init__(self):
        for prop, rec in self.records.items():
            if rec.analytic is not None and rec.analytic != rec.empirical:
                raise VerificationMismatch(
                    getattr(self.mechanism.params, "weights", ()), prop, rec.analytic, rec.empirical, rec.witness
                )

    def verdict(self, prop: str) -> bool:
        rec = self.records[prop]
        return rec.empirical if rec.analytic is None else rec.analytic

    def to_dict(self) -> dict:
        return {
            "mechanism": mechanism_to_dict(self.mechanism),
            "grid": self.grid.to_dict(),
            "basis": self.grid.label(),
            "properties": {p: self.records[p].to_dict() for p in self.records},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PropertyReport":
        return cls(
            mechanism_from_dict(data["mechanism"]),
            {p: PropertyRecord.from_dict(r) for p, r in data["properties"].items()},
            GridSpec.from_dict(data["grid"]),
        )

    def to_text(self) -> str:
        out = [f"mechanism: {self.mechanism.name} ({self.mechanism.family}, n={self.mechanism.n})"]
        out.append(f"empirical verdicts {self.grid.label()}")
        out.append(f"{'property':<9}{'analytic':<10}{'empirical':<10}witness")
        for p, rec in self.records.items():
            a = "-" if rec.analytic is None else _mark(rec.analytic)
            out.append(f"{p:<9}{a:<10}{_mark(rec.empirical):<10}{_describe_witness(rec.witness)}")
        return "\n".join(out) + "\n"


def _mark(b: bool) -> str:
    return "yes" if b else "no"


def format_number(v: float) -> str:
    return f"{v:.12g}"


def format_vector(vs) -> str:
    return "(" + ", ".join(format_number(v) for v in vs) + ")"


def _describe_witness(w: dict | None) -> str:
    if w is None:
        return ""
    if "profile" in w:
        v = w["verdict"]["witness"]
        return (
            f"x={format_vector(w['profile'])} f(x)={format_number(w['outcome'])} "
            f"coalition={v['coalition']} slack={format_number(v['slack'])}"
        )
    return (
        f"{w['kind']}: agent {w['agent']} truth={format_number(w['truth'])} "
        f"report={format_number(w['misreport'])} gain={format_number(w['gain'])}"
    )


def analyze(mech, spec: GridSpec | None = None) -> PropertyReport:
    """Full property table for a mechanism.

    OWA mechanisms get analytic verdicts next to the grid verdicts; other
    families get grid verdicts only.
    """
    mech = _as_mechanism(mech)
    spec = spec or GridSpec(mech.n)
    _check_arity(mech, spec)
    is_owa = mech.family == "owa"
    engine = "closed_form" if is_owa else "grid"
    preds = analytic_predicates()
    records = {}
    for prop in REPORT_PROPERTIES:
        holds, witness = _empirical(prop, mech, spec, nom_engine=engine)
        analytic = bool(preds[prop](mech.params)) if is_owa else None
        records[prop] = PropertyRecord(analytic, holds, _witness_dict(witness))
    return PropertyReport(mech, records, spec)
