"""Joint sum/difference analysis of two matched square tables.

Two tables over identical categories yield skew matrices S1 and S2 on a
common [0,1] scale, so S1 + S2 (shared asymmetry) and S1 - S2
(differential asymmetry) are directly comparable even when the sample
sizes differ wildly. One SVD of the block matrix [[S1, S2], [S2, S1]]
delivers both decompositions at once: its singular values are the union
of the sum and difference singular values, interleaved in descending
order, and its singular vectors stack the component vectors in
duplicated (sum) or sign-flipped (difference) blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decomposition import PairedSVD, SkewMatrix, metric_weights, paired_svd, skew_matrix
from .errors import ConsistencyError, DimensionMismatchError, LabelMismatchError
from .table import ContingencyTable, ProbabilityTable, to_probabilities, validate_table

# relative tolerance when attributing a block singular value to a component
MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class DimensionClass:
    """Attribution of one block dimension to the sum or difference component."""

    component: str  # "sum" or "difference"
    source_dim: int  # 1-based dimension within that component's own SVD
    singular_value: float


@dataclass(frozen=True)
class MatchedAnalysis:
    labels: tuple[str, ...]
    lam: float
    skew_first: SkewMatrix
    skew_second: SkewMatrix
    s_plus: np.ndarray = field(repr=False)
    s_minus: np.ndarray = field(repr=False)
    block: np.ndarray = field(repr=False)
    svd_plus: PairedSVD = field(repr=False)
    svd_minus: PairedSVD = field(repr=False)
    block_svd: PairedSVD = field(repr=False)
    dim_classes: tuple[DimensionClass, ...]
    pooled: ProbabilityTable = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class MatchedCoordinates:
    """First-block principal coordinates split by component.

    Rows come from left singular vectors, columns from right ones. Each
    matrix is R x (number of block dimensions attributed to the
    component), columns ordered by descending singular value.
    """

    metric: str
    sum_rows: np.ndarray = field(repr=False)
    sum_cols: np.ndarray = field(repr=False)
    sum_singular_values: np.ndarray = field(repr=False)
    difference_rows: np.ndarray = field(repr=False)
    difference_cols: np.ndarray = field(repr=False)
    difference_singular_values: np.ndarray = field(repr=False)


def _padded_values(svd: PairedSVD, full: int) -> np.ndarray:
    """Singular values padded with the structural zeros dropped for odd sizes."""
    vals = np.zeros(full)
    vals[: svd.n_dims] = svd.singular_values
    return vals


def _classify(block_values: np.ndarray, plus: np.ndarray, minus: np.ndarray):
    """Attribute each block singular value to the sum or the difference SVD.

    Greedy merge over the descending value lists; exact ties go to the sum
    component first. Verifies multiset equality as it goes.
    """
    classes: list[DimensionClass] = []
    ip = im = 0
    scale = max(float(block_values[0]) if block_values.size else 0.0, 1e-300)
    for value in block_values:
        dp = abs(value - plus[ip]) if ip < plus.size else math.inf
        dm = abs(value - minus[im]) if im < minus.size else math.inf
        if dp <= dm:
            classes.append(DimensionClass("sum", ip + 1, float(value)))
            mismatch = dp
            ip += 1
        else:
            classes.append(DimensionClass("difference", im + 1, float(value)))
            mismatch = dm
            im += 1
        if mismatch > MATCH_RTOL * scale:
            raise ConsistencyError(
                f"block singular value {value!r} matches no component value "
                f"(best residual {mismatch!r})"
            )
    return tuple(classes)


def build_matched(
    t1: ContingencyTable, t2: ContingencyTable, lam: float
) -> MatchedAnalysis:
    """Skew matrices, sum/difference SVDs, and the classified block SVD.

    Both tables must share the same labels in the same order and both must
    carry off-diagonal mass. The two skew matrices use the same lam.
    """
    if t1.size != t2.size:
        raise DimensionMismatchError(f"table sizes differ: {t1.size} vs {t2.size}")
    if t1.labels != t2.labels:
        raise LabelMismatchError(
            f"category labels differ or are ordered differently: "
            f"{t1.labels} vs {t2.labels}"
        )
    p1 = to_probabilities(t1)
    p2 = to_probabilities(t2)
    sk1 = skew_matrix(p1, lam)
    sk2 = skew_matrix(p2, lam)
    s1, s2 = sk1.values, sk2.values
    s_plus = s1 + s2
    s_minus = s1 - s2
    block = np.block([[s1, s2], [s2, s1]])
    svd_plus = paired_svd(s_plus)
    svd_minus = paired_svd(s_minus)
    block_svd = paired_svd(block)
    size = t1.size
    plus_vals = _padded_values(svd_plus, size)
    minus_vals = _padded_values(svd_minus, size)
    classes = _classify(block_svd.singular_values, plus_vals, minus_vals)
    _validate_block_structure(block_svd, classes, plus_vals, minus_vals)
    pooled = to_probabilities(validate_table(t1.labels, t1.counts + t2.counts))
    for arr in (s_plus, s_minus, block):
        arr.setflags(write=False)
    return MatchedAnalysis(
        labels=t1.labels,
        lam=sk1.lam,
        skew_first=sk1,
        skew_second=sk2,
        s_plus=s_plus,
        s_minus=s_minus,
        block=block,
        svd_plus=svd_plus,
        svd_minus=svd_minus,
        block_svd=block_svd,
        dim_classes=classes,
        pooled=pooled,
    )


def _validate_block_structure(
    block_svd: PairedSVD,
    classes: tuple[DimensionClass, ...],
    plus_vals: np.ndarray,
    minus_vals: np.ndarray,
) -> None:
    """Check the duplicated / sign-flipped block pattern of the singular vectors.

    Sum dimensions must have their second vector block equal to the first,
    difference dimensions the negated first. Dimensions whose singular
    value could belong to either component (value ties within tolerance)
    are skipped: there the attribution is a labeling convention and the
    vector blocks may legitimately mix.
    """
    vectors = block_svd.left_vectors
    half = vectors.shape[0] // 2
    scale = max(float(block_svd.singular_values[0]) if block_svd.singular_values.size else 0.0, 1e-300)
    for m, cls in enumerate(classes):
        value = cls.singular_value
        near_plus = np.any(np.abs(plus_vals - value) <= MATCH_RTOL * scale)
        near_minus = np.any(np.abs(minus_vals - value) <= MATCH_RTOL * scale)
        if near_plus and near_minus:
            continue
        top, bottom = vectors[:half, m], vectors[half:, m]
        expected = top if cls.component == "sum" else -top
        if not np.allclose(bottom, expected, atol=1e-8 * max(scale, 1.0)):
            raise ConsistencyError(
                f"block dimension {m + 1} tagged {cls.component!r} violates the "
                "duplicated/sign-flipped block pattern"
            )


def matched_coordinates(m: MatchedAnalysis, metric: str = "identity") -> MatchedCoordinates:
    """First-block principal coordinates for the sum and difference components.

    Under the identity metric (the default for matched analyses) the
    coordinates are the block singular vectors scaled by their singular
    values, reported on the first block of categories. The averaged
    metric weights rows by the pooled margins of the element-wise sum of
    the two tables.
    """
    size = m.size
    weights = metric_weights(m.pooled, metric)
    sums = [i for i, c in enumerate(m.dim_classes) if c.component == "sum"]
    diffs = [i for i, c in enumerate(m.dim_classes) if c.component == "difference"]
    left = m.block_svd.left_vectors
    right = m.block_svd.right_vectors
    values = m.block_svd.singular_values

    def block_coords(vectors: np.ndarray, dims: list[int]) -> np.ndarray:
        coords = vectors[:size, dims] * values[dims][None, :]
        return weights[:, None] * coords

    return MatchedCoordinates(
        metric=metric,
        sum_rows=block_coords(left, sums),
        sum_cols=block_coords(right, sums),
        sum_singular_values=values[sums].copy(),
        difference_rows=block_coords(left, diffs),
        difference_cols=block_coords(right, diffs),
        difference_singular_values=values[diffs].copy(),
    )
