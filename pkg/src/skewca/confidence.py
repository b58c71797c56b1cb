"""Chi-square numerics and per-category confidence circles.

The chi-square CDF and quantile are implemented in-house on top of the
regularized lower incomplete gamma function (series expansion for small
arguments, Lentz continued fraction for large), so golden outputs stay
bit-stable across library versions.

A category's confidence circle calibrates its coordinate against the
chi-square distribution of the power-divergence symmetry statistic: the
radius shrinks like 1/sqrt(n) while the center does not move with n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .decomposition import SymmetryDecomposition
from .divergence import AsymmetryProfile, power_divergence_scale
from .errors import (
    FullySymmetricError,
    IdentityMetricUnsupportedError,
    InvalidAlphaError,
    InvalidDofError,
    UnsupportedDimensionError,
)
from .table import ContingencyTable

_GAMMA_EPS = 1e-16
_GAMMA_MAX_ITER = 500


@dataclass(frozen=True)
class ConfidenceRegion:
    """Circular confidence region for one category in the dims 1-2 plane."""

    index: int
    label: str
    axis: str  # "row" or "column"
    center: tuple[float, float]
    radius_x: float
    radius_y: float
    alpha: float
    contains_origin: bool


def _lower_gamma_series(a: float, x: float) -> float:
    """Regularized P(a, x) by the power series, for x < a + 1."""
    if x == 0.0:
        return 0.0
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(_GAMMA_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_gamma_cf(a: float, x: float) -> float:
    """Regularized Q(a, x) by modified Lentz continued fraction, for x >= a + 1."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def regularized_gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma function P(a, x)."""
    if a <= 0.0:
        raise ValueError("shape parameter must be positive")
    if x < 0.0:
        raise ValueError("argument must be non-negative")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return min(_lower_gamma_series(a, x), 1.0)
    return max(1.0 - _upper_gamma_cf(a, x), 0.0)


def chi_square_cdf(dof: int, x: float) -> float:
    """CDF of the chi-square distribution with ``dof`` degrees of freedom."""
    if dof < 1:
        raise InvalidDofError(f"dof must be >= 1, got {dof}")
    if x < 0.0:
        return 0.0
    return regularized_gamma_p(dof / 2.0, x / 2.0)


def _chi_square_pdf(dof: int, x: float) -> float:
    if x <= 0.0:
        return 0.0
    half = dof / 2.0
    return math.exp((half - 1.0) * math.log(x) - x / 2.0 - half * math.log(2.0) - math.lgamma(half))


def _normal_upper_quantile(alpha: float) -> float:
    """z with P(Z > z) = alpha, via a low-order rational fit (initial guesses only)."""
    if alpha == 0.5:
        return 0.0
    if alpha > 0.5:
        return -_normal_upper_quantile(1.0 - alpha)
    # Hastings-style approximation; percent-level accuracy suffices here
    t = math.sqrt(-2.0 * math.log(alpha))
    return t - (2.515517 + 0.802853 * t + 0.010328 * t * t) / (
        1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t**3
    )


def chi_square_quantile(dof: int, alpha: float) -> float:
    """Upper-alpha point: q with 1 - CDF(q) = alpha.

    Starts from the Wilson-Hilferty cube approximation, brackets the root,
    and polishes with bisection-safeguarded Newton steps on the CDF.
    """
    if dof < 1:
        raise InvalidDofError(f"dof must be >= 1, got {dof}")
    if not 0.0 < alpha < 1.0:
        raise InvalidAlphaError(f"alpha must be in (0, 1), got {alpha}")
    target = 1.0 - alpha
    z = _normal_upper_quantile(alpha)
    wh = dof * (1.0 - 2.0 / (9.0 * dof) + z * math.sqrt(2.0 / (9.0 * dof))) ** 3
    guess = max(wh, 1e-8)
    lo, hi = 0.0, guess
    while chi_square_cdf(dof, hi) < target:
        lo = hi
        hi *= 2.0
        if hi > 1e12:
            raise ArithmeticError("failed to bracket the chi-square quantile")
    x = min(max(guess, lo), hi)
    for _ in range(200):
        f = chi_square_cdf(dof, x) - target
        if f > 0.0:
            hi = x
        else:
            lo = x
        df = _chi_square_pdf(dof, x)
        step_ok = df > 0.0
        if step_ok:
            nxt = x - f / df
            step_ok = lo < nxt < hi
        if not step_ok:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-15 * max(1.0, x):
            x = nxt
            break
        x = nxt
    return x


def confidence_regions(
    dec: SymmetryDecomposition,
    t: ContingencyTable,
    profile: AsymmetryProfile,
    alpha: float = 0.05,
) -> list[ConfidenceRegion]:
    """Confidence circles for every row and column category.

    The circle around category i has center (f_i1, f_i2) and radius
    d_i mu_1 sqrt(chi2_alpha c_lam / (2 n delta Phi) * (a_i1^2 + a_i2^2)),
    with chi2_alpha the upper-alpha chi-square point at R(R-1)/2 degrees
    of freedom and c_lam the power-divergence scale. The in-plane mass
    a_i1^2 + a_i2^2 equals one minus the category's mass on the remaining
    dimensions of the full orthonormal basis (including the null direction
    of odd-sized tables, which the retained factors drop). Radii for rows
    use left vectors, for columns right vectors.

    Raises:
        UnsupportedDimensionError: 2x2 table (no dimensions remain beyond
            the leading plane, and the calibration is not defined there).
        FullySymmetricError: zero asymmetry measure.
        IdentityMetricUnsupportedError: the derivation is tied to the
            averaged-margin metric.
        InvalidAlphaError: alpha outside (0, 1).
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidAlphaError(f"alpha must be in (0, 1), got {alpha}")
    size = dec.size
    if size == 2:
        raise UnsupportedDimensionError("confidence regions are undefined for 2x2 tables")
    if dec.metric != "averaged":
        raise IdentityMetricUnsupportedError(
            "confidence regions require the averaged-margin metric"
        )
    if dec.fully_symmetric or dec.total_inertia <= 0.0:
        raise FullySymmetricError("fully symmetric table: confidence regions are undefined")
    dof = size * (size - 1) // 2
    quantile = chi_square_quantile(dof, alpha)
    scale = power_divergence_scale(profile.lam)
    calibration = quantile * scale / (2.0 * t.n * profile.delta * dec.total_inertia)
    mu1 = float(dec.singular_values[0])
    mu2 = float(dec.singular_values[1])
    regions: list[ConfidenceRegion] = []
    for axis, vectors, coords in (
        ("row", dec.left_vectors, dec.row_coords),
        ("column", dec.right_vectors, dec.col_coords),
    ):
        for i in range(size):
            in_plane = float(vectors[i, 0] ** 2 + vectors[i, 1] ** 2)
            root = math.sqrt(max(calibration * in_plane, 0.0))
            rx = float(dec.metric_weights[i]) * mu1 * root
            ry = float(dec.metric_weights[i]) * mu2 * root
            fx, fy = float(coords[i, 0]), float(coords[i, 1])
            regions.append(
                ConfidenceRegion(
                    index=i,
                    label=dec.labels[i],
                    axis=axis,
                    center=(fx, fy),
                    radius_x=float(rx),
                    radius_y=float(ry),
                    alpha=float(alpha),
                    contains_origin=_ellipse_covers(fx, fy, rx, ry, 0.0, 0.0),
                )
            )
    return regions


def _ellipse_covers(cx: float, cy: float, rx: float, ry: float, x: float, y: float) -> bool:
    """Whether the ellipse centered at (cx, cy) with radii (rx, ry) covers (x, y)."""
    dx, dy = x - cx, y - cy
    if rx <= 0.0 or ry <= 0.0:
        return bool(dx == 0.0 and dy == 0.0)
    return bool((dx / rx) ** 2 + (dy / ry) ** 2 <= 1.0)
