"""Asymmetry quantification for square contingency tables.

Implements the symmetry chi-square test, the power-divergence-type
asymmetry measure (a [0,1] index parameterized by lam, reducing to the
Hellinger, Kullback-Leibler, Cressie-Read, and Pearson forms at
lam = -1/2, 0, 2/3, 1), its per-cell decomposition, and the chi-square
calibrated power-divergence test statistic.

Every quantity here is a plug-in functional of the cell probabilities,
so it is invariant under scaling all counts by a constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConsistencyError,
    DegenerateTableError,
    DiagonalCellError,
    LambdaOutOfRangeError,
)
from .table import ContingencyTable, ProbabilityTable, to_probabilities

# lam values closer to 0 than this use the analytic lam -> 0 limit; the
# generic formula is 0/0 at 0 and loses accuracy in a shrinking band around it.
LAMBDA_ZERO_TOL = 1e-10

_LN2 = math.log(2.0)

NAMED_DIVERGENCES = {
    "hellinger": -0.5,
    "kl": 0.0,
    "cressie-read": 2.0 / 3.0,
    "pearson": 1.0,
}


@dataclass(frozen=True)
class BowkerResult:
    statistic: float
    dof: int
    p_value: float


@dataclass(frozen=True)
class AsymmetryProfile:
    """The asymmetry measure together with its per-cell decomposition.

    ``phi_cells[i, j]`` is the non-negative departure carried by cell
    (i, j); it equals ``phi_cells[j, i]`` and the off-diagonal total is
    ``phi_total``. ``zero_pair_cells`` lists pairs (i, j), i < j, where
    both opposing cells are empty; those cells contribute 0 by continuous
    extension.
    """

    lam: float
    delta: float
    phi_total: float
    phi_cells: np.ndarray = field(repr=False)
    zero_pair_cells: tuple[tuple[int, int], ...] = ()


def require_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam > -1.0 or math.isinf(lam) or math.isnan(lam):
        raise LambdaOutOfRangeError(f"lam must be a finite number > -1, got {lam}")
    return lam


def power_divergence_scale(lam: float) -> float:
    """The factor lam*(lam+1)/(2**lam - 1), taken at its limit 1/ln 2 for lam = 0.

    This converts between the normalized asymmetry measure and the
    chi-square calibrated divergence statistic; both sides of that
    conversion must use the same branch.
    """
    lam = require_lambda(lam)
    if abs(lam) < LAMBDA_ZERO_TOL:
        return 1.0 / _LN2
    return lam * (lam + 1.0) / math.expm1(lam * _LN2)


def bowker_statistic(t: ContingencyTable) -> BowkerResult:
    """Chi-square test of the symmetry hypothesis n_ij ~ n_ji.

    Sums (n_ij - n_ji)^2 / (n_ij + n_ji) over unordered category pairs,
    skipping pairs with no observations in either direction. The degrees
    of freedom are R(R-1)/2 regardless of skipped pairs.
    """
    from .confidence import chi_square_cdf  # deferred: confidence imports us too

    counts = t.counts
    size = t.size
    stat = 0.0
    for i in range(size):
        for j in range(i + 1, size):
            tot = counts[i, j] + counts[j, i]
            if tot > 0:
                diff = float(counts[i, j] - counts[j, i])
                stat += diff * diff / float(tot)
    dof = size * (size - 1) // 2
    return BowkerResult(statistic=stat, dof=dof, p_value=1.0 - chi_square_cdf(dof, stat))


def _phi_pair(a: float, b: float, delta: float, lam: float) -> float:
    """Departure of one off-diagonal cell whose opposing cell holds b.

    Symmetric in (a, b) by construction. Equal or doubly-empty pairs return
    exactly 0. Uses expm1 throughout so the value stays accurate for lam
    arbitrarily close to the lam = 0 branch point.
    """
    if a == b or a + b == 0.0:
        return 0.0
    prefactor = (a + b) / (2.0 * delta)
    s1 = a / (a + b)
    s2 = 1.0 - s1  # exact complement: keeps 1 - s1 - s2 identically zero below
    if abs(lam) < LAMBDA_ZERO_TOL:
        ent = 0.0
        for s in (s1, s2):
            if s > 0.0:
                ent += s * math.log(s)
        return max(prefactor * (1.0 + ent / _LN2), 0.0)
    # 1 - s1^(1+lam) - s2^(1+lam) via expm1, so the value stays fully
    # accurate even when lam is within a few ulp of the branch point
    tail = 0.0
    for s in (s1, s2):
        if s > 0.0:
            tail -= s * math.expm1(lam * math.log(s))
    em = math.expm1(lam * _LN2)  # 2^lam - 1
    # (1 + em)/em written as 1 + 1/em so an overflowed em degrades to the
    # correct large-lam limit instead of inf/inf
    bracket = 1.0 - (1.0 + 1.0 / em) * tail
    return max(prefactor * bracket, 0.0)


def cell_departure(p: ProbabilityTable, lam: float, i: int, j: int) -> float:
    """Departure from symmetry carried by cell (i, j), 0-based indices.

    The value is shared by (i, j) and (j, i): each of the pair carries
    half of the pair's total departure.
    """
    lam = require_lambda(lam)
    if i == j:
        raise DiagonalCellError(f"cell ({i}, {i}) is on the diagonal")
    if p.delta <= 0.0:
        raise DegenerateTableError("all mass on the diagonal: asymmetry is undefined")
    lo, hi = (i, j) if i < j else (j, i)
    return _phi_pair(float(p.p[lo, hi]), float(p.p[hi, lo]), p.delta, lam)


def _phi_by_divergence_form(p: ProbabilityTable, lam: float) -> float:
    """The measure computed from its divergence definition.

    Independent of the per-cell route: sums p*_ij [(p*_ij/p^s_ij)^lam - 1]
    over occupied off-diagonal cells and rescales, where p* is the
    off-diagonal-normalized table and p^s its symmetrized version. The
    ratio reduces to 2 p_ij / (p_ij + p_ji).
    """
    mat = p.p
    size = p.size
    tot = 0.0
    for i in range(size):
        for j in range(size):
            if i == j or mat[i, j] == 0.0:
                continue
            ratio = 2.0 * mat[i, j] / (mat[i, j] + mat[j, i])
            star = mat[i, j] / p.delta
            if abs(lam) < LAMBDA_ZERO_TOL:
                tot += star * math.log(ratio)
            else:
                tot += star * math.expm1(lam * math.log(ratio))
    if abs(lam) < LAMBDA_ZERO_TOL:
        return tot / _LN2
    return tot / math.expm1(lam * _LN2)


def asymmetry_measure(p: ProbabilityTable, lam: float) -> AsymmetryProfile:
    """The [0,1] asymmetry measure with its per-cell decomposition.

    Computes the measure both as the sum of per-cell departures and from
    the divergence definition, and insists the two agree to 1e-12; a
    disagreement means a numerical defect, not a property of the data.

    Raises:
        LambdaOutOfRangeError: lam <= -1.
        DegenerateTableError: every observation is on the diagonal.
    """
    lam = require_lambda(lam)
    if p.delta <= 0.0:
        raise DegenerateTableError("all mass on the diagonal: asymmetry is undefined")
    size = p.size
    cells = np.zeros((size, size))
    zero_pairs: list[tuple[int, int]] = []
    total = 0.0
    try:
        for i in range(size):
            for j in range(i + 1, size):
                a, b = float(p.p[i, j]), float(p.p[j, i])
                if a + b == 0.0:
                    zero_pairs.append((i, j))
                    continue
                phi = _phi_pair(a, b, p.delta, lam)
                cells[i, j] = cells[j, i] = phi
                total += 2.0 * phi
        other = _phi_by_divergence_form(p, lam)
    except OverflowError as exc:
        raise LambdaOutOfRangeError(
            f"measure overflows double precision at lam={lam}"
        ) from exc
    if not (math.isfinite(total) and math.isfinite(other)):
        raise LambdaOutOfRangeError(
            f"measure overflows double precision at lam={lam}"
        )
    if abs(total - other) > 1e-12:
        raise ConsistencyError(
            f"asymmetry measure mismatch between definitions: {total!r} vs {other!r}"
        )
    total = min(total, 1.0)  # guard the upper bound against accumulated rounding
    cells.setflags(write=False)
    return AsymmetryProfile(
        lam=lam,
        delta=p.delta,
        phi_total=total,
        phi_cells=cells,
        zero_pair_cells=tuple(zero_pairs),
    )


def power_divergence_statistic(t: ContingencyTable, lam: float) -> float:
    """Chi-square calibrated power-divergence statistic for symmetry.

    Evaluates 2n/(lam (lam+1)) * sum p_ij [(2 p_ij/(p_ij+p_ji))^lam - 1]
    at the plug-in probabilities (the log form at lam = 0). At lam = 1
    this is exactly the symmetry chi-square statistic. The algebraic
    identity with the asymmetry measure (statistic = 2 n delta Phi / c,
    with c the power-divergence scale) is verified to 1e-10.
    """
    lam = require_lambda(lam)
    p = to_probabilities(t)
    if p.delta <= 0.0:
        raise DegenerateTableError("all mass on the diagonal: asymmetry is undefined")
    mat = p.p
    size = p.size
    acc = 0.0
    try:
        for i in range(size):
            for j in range(size):
                if i == j or mat[i, j] == 0.0:
                    continue
                ratio = 2.0 * mat[i, j] / (mat[i, j] + mat[j, i])
                if abs(lam) < LAMBDA_ZERO_TOL:
                    acc += mat[i, j] * math.log(ratio)
                else:
                    acc += mat[i, j] * math.expm1(lam * math.log(ratio))
    except OverflowError as exc:
        raise LambdaOutOfRangeError(
            f"statistic overflows double precision at lam={lam}"
        ) from exc
    if abs(lam) < LAMBDA_ZERO_TOL:
        stat = 2.0 * t.n * acc
    else:
        stat = 2.0 * t.n * acc / (lam * (lam + 1.0))
    if not math.isfinite(stat):
        raise LambdaOutOfRangeError(f"statistic overflows double precision at lam={lam}")
    profile = asymmetry_measure(p, lam)
    via_measure = 2.0 * t.n * p.delta * profile.phi_total / power_divergence_scale(lam)
    if abs(stat - via_measure) > 1e-10 * max(1.0, abs(stat)):
        raise ConsistencyError(
            f"power-divergence statistic mismatch: {stat!r} vs {via_measure!r}"
        )
    return stat
