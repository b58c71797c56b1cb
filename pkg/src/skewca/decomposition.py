"""Signed skew-symmetric decomposition and principal coordinates.

The asymmetry measure admits an exact matrix square root: the signed
skew-symmetric matrix whose (i, j) entry is sign(p_ij - p_ji) times the
square root of the cell departure. Its squared Frobenius norm is the
measure itself, and its SVD delivers category coordinates whose squared
distances to the origin decompose the measure by category.

Singular values of a real skew-symmetric matrix come in equal pairs, and
left/right singular vectors are linked by a block rotation: with J the
block-diagonal matrix of 2x2 blocks [[0, 1], [-1, 0]], the SVD can be
written S = A D J A^T with right vectors B = A J^T. We exploit that
structure instead of computing independent factors: pairing then holds
exactly and the rotation ambiguity inside each equal-singular-value plane
is fixed by an explicit canonical orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .divergence import asymmetry_measure
from .errors import FullySymmetricError, LambdaOutOfRangeError
from .table import ContingencyTable, ProbabilityTable, to_probabilities

METRICS = ("averaged", "identity")

# singular values below this fraction of the largest are structural zeros
ZERO_SINGULAR_RTOL = 1e-10


@dataclass(frozen=True)
class SkewMatrix:
    """Signed square-root matrix of the per-cell departures."""

    values: np.ndarray = field(repr=False)
    lam: float

    @property
    def size(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class PairedSVD:
    """SVD of a skew-symmetric matrix with exact pair structure.

    ``singular_values`` is non-increasing with entries equal in consecutive
    pairs; ``right_vectors`` equals ``left_vectors @ block_rotation.T``.
    The number of retained dimensions is R for even R and R - 1 for odd R,
    with structural zeros kept as explicit zero singular values.
    """

    left_vectors: np.ndarray = field(repr=False)
    singular_values: np.ndarray = field(repr=False)

    @property
    def n_dims(self) -> int:
        return int(self.left_vectors.shape[1])

    @property
    def block_rotation(self) -> np.ndarray:
        return block_rotation_matrix(self.n_dims)

    @property
    def right_vectors(self) -> np.ndarray:
        return self.left_vectors @ self.block_rotation.T

    def reconstruct(self) -> np.ndarray:
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


@dataclass(frozen=True)
class SymmetryDecomposition:
    """Principal coordinates of the skew decomposition under a metric.

    ``row_coords`` and ``col_coords`` are R x M; the same category's row
    and column points coincide when rotated about the origin. Squared
    singular values sum to ``total_inertia``, which equals the asymmetry
    measure. A fully symmetric table yields the flagged zero decomposition
    rather than an error.
    """

    labels: tuple[str, ...]
    lam: float
    metric: str
    svd: PairedSVD
    metric_weights: np.ndarray = field(repr=False)
    row_coords: np.ndarray = field(repr=False)
    col_coords: np.ndarray = field(repr=False)
    total_inertia: float
    contributions: np.ndarray = field(repr=False)
    fully_symmetric: bool

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def n_dims(self) -> int:
        return self.svd.n_dims

    @property
    def singular_values(self) -> np.ndarray:
        return self.svd.singular_values

    @property
    def left_vectors(self) -> np.ndarray:
        return self.svd.left_vectors

    @property
    def right_vectors(self) -> np.ndarray:
        return self.svd.right_vectors


@dataclass(frozen=True)
class LambdaScanResult:
    best_lambda: float
    best_contribution: float
    grid: tuple[float, ...]
    contributions: tuple[float, ...]
    inertias: tuple[float, ...]


def block_rotation_matrix(n_dims: int) -> np.ndarray:
    """Block-diagonal orthogonal skew matrix of [[0, 1], [-1, 0]] blocks."""
    if n_dims % 2 != 0:
        raise ValueError("the paired SVD always retains an even number of dimensions")
    j = np.zeros((n_dims, n_dims))
    for k in range(n_dims // 2):
        j[2 * k, 2 * k + 1] = 1.0
        j[2 * k + 1, 2 * k] = -1.0
    return j


def skew_matrix(p: ProbabilityTable, lam: float) -> SkewMatrix:
    """Signed element-wise square root of the cell departures.

    Antisymmetry is enforced by construction: the (j, i) entry is defined
    as the negative of the (i, j) entry, the diagonal as zero.
    """
    profile = asymmetry_measure(p, lam)
    size = p.size
    s = np.zeros((size, size))
    for i in range(size):
        for j in range(i + 1, size):
            root = math.sqrt(profile.phi_cells[i, j])
            signed = math.copysign(root, p.p[i, j] - p.p[j, i]) if root else 0.0
            s[i, j] = signed
            s[j, i] = -signed
    s.setflags(write=False)
    return SkewMatrix(values=s, lam=profile.lam)


def _off_diagonal_norm(a: np.ndarray) -> float:
    # summed directly from the off-diagonal entries: the textbook
    # ||A||^2 - ||diag||^2 form cancels catastrophically near convergence
    masked = a.copy()
    np.fill_diagonal(masked, 0.0)
    return float(np.linalg.norm(masked))


def _jacobi_eigh(mat: np.ndarray, sweep_tol: float = 1e-14, max_sweeps: int = 60):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps rotate away every off-diagonal element in turn until the
    off-diagonal Frobenius mass falls below sweep_tol times the matrix
    norm, or stops shrinking. Returns eigenvalues (descending, stable
    order) and the matching orthonormal eigenvector columns.
    """
    a = np.array(mat, dtype=float)
    n = a.shape[0]
    vecs = np.eye(n)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), vecs
    previous_off = math.inf
    for _ in range(max_sweeps):
        off = _off_diagonal_norm(a)
        if off <= sweep_tol * norm or off >= previous_off:
            break
        previous_off = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = vecs[:, p].copy(), vecs[:, q].copy()
                vecs[:, p] = c * vec_p - s * vec_q
                vecs[:, q] = s * vec_p + c * vec_q
    eigvals = np.diag(a).copy()
    order = np.argsort(-eigvals, kind="stable")
    return eigvals[order], vecs[:, order]


def _orthogonalize(vec: np.ndarray, against: Iterable[np.ndarray]) -> np.ndarray:
    for prev in against:
        vec = vec - (prev @ vec) * prev
    return vec


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    """Flip so the largest-magnitude entry is positive (ties: lowest index)."""
    return -vec if vec[int(np.argmax(np.abs(vec)))] < 0 else vec


def _next_seed(vecs: np.ndarray, used: list[bool], cols: list[np.ndarray]):
    """Unused eigenvector with the largest residual outside the built planes.

    Inside a degenerate eigenvalue cluster the plane spanned by one
    eigenvector and its image can swallow other eigenvectors of the same
    cluster, so residual norms decide which candidate still carries a new
    direction. Near-ties resolve to the lowest (highest-eigenvalue) index.
    """
    best_index, best_vec, best_norm = -1, None, -1.0
    for i in range(vecs.shape[1]):
        if used[i]:
            continue
        vec = _orthogonalize(vecs[:, i].copy(), cols)
        norm = float(np.linalg.norm(vec))
        if norm > best_norm + 1e-9:
            best_index, best_vec, best_norm = i, vec, norm
    used[best_index] = True
    return best_vec / best_norm


def paired_svd(skew: np.ndarray) -> PairedSVD:
    """Canonically oriented paired SVD of a skew-symmetric matrix.

    The symmetric positive-semidefinite matrix -S^2 is diagonalized by
    cyclic Jacobi; each of its eigenplanes carries one singular pair. A
    pair's first left vector is chosen inside its plane so that the
    category with the greatest in-plane mass gets a positive and maximal
    first coordinate (ties to the lowest index); the second vector is the
    image -S a / mu, which makes the pairing and the block-rotation link
    to the right vectors exact. Null-space dimensions keep zero singular
    values; for odd R the single leftover null vector is dropped.
    """
    size = skew.shape[0]
    n_dims = size if size % 2 == 0 else size - 1
    gram = -skew @ skew
    _, vecs = _jacobi_eigh(gram)
    # classify through the action of the matrix itself: squaring loses half
    # the available precision, the image norms do not
    probes = np.linalg.norm(skew @ vecs, axis=0)
    mu_max = float(probes.max(initial=0.0))
    left = np.zeros((size, n_dims))
    singular = np.zeros(n_dims)
    if mu_max == 0.0:
        left[:, :] = np.eye(size)[:, :n_dims]
        return PairedSVD(left_vectors=_ro(left), singular_values=_ro(singular))
    cols: list[np.ndarray] = []
    used = [False] * size
    for k in range(n_dims // 2):
        base = _next_seed(vecs, used, cols)
        image = skew @ base
        mu_probe = float(np.linalg.norm(image))
        if mu_probe <= ZERO_SINGULAR_RTOL * mu_max:
            first = _canonical_sign(base)
            second = _canonical_sign(_next_seed(vecs, used, cols + [first]))
            left[:, 2 * k], left[:, 2 * k + 1] = first, second
            cols += [first, second]
            continue
        partner = _orthogonalize(-image / mu_probe, cols)
        partner = partner - (base @ partner) * base
        partner /= np.linalg.norm(partner)
        pivot = int(np.argmax(base**2 + partner**2))
        first = base[pivot] * base + partner[pivot] * partner
        first /= np.linalg.norm(first)
        image = skew @ first
        mu = float(np.linalg.norm(image))
        second = _orthogonalize(-image / mu, cols + [first])
        second /= np.linalg.norm(second)
        left[:, 2 * k], left[:, 2 * k + 1] = first, second
        singular[2 * k] = singular[2 * k + 1] = mu
        cols += [first, second]
    # refined values may reorder near-ties; restore the non-increasing contract
    pair_order = np.argsort(-singular[::2], kind="stable")
    col_order = np.ravel(np.column_stack((2 * pair_order, 2 * pair_order + 1)))
    return PairedSVD(left_vectors=_ro(left[:, col_order]), singular_values=_ro(singular[col_order]))


def _ro(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def metric_weights(p: ProbabilityTable, metric: str) -> np.ndarray:
    """Per-category weights d_i of the chosen metric.

    The averaged metric gives rows and columns the common scale
    ((p_i. + p_.i)/2)^(-1/2); the identity metric leaves coordinates as
    scaled singular vectors. A category with no observations at all gets
    weight 1: it is trivially symmetric and its coordinates vanish anyway,
    so any finite weight yields the correct origin placement.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    if metric == "identity":
        return np.ones(p.size)
    margins = (p.row_margins + p.col_margins) / 2.0
    return np.where(margins > 0.0, margins, 1.0) ** -0.5


def decompose(s: SkewMatrix, p: ProbabilityTable, metric: str = "averaged") -> SymmetryDecomposition:
    """Principal coordinates, inertia, and contributions of a skew matrix.

    A fully symmetric table (zero matrix) is a legitimate outcome: it
    returns all coordinates at the origin, zero contributions, and the
    ``fully_symmetric`` flag instead of raising.
    """
    svd = paired_svd(np.asarray(s.values, dtype=float))
    weights = metric_weights(p, metric)
    inv_root = weights[:, None]
    row = inv_root * svd.left_vectors * svd.singular_values[None, :]
    col = inv_root * svd.right_vectors * svd.singular_values[None, :]
    inertia = float(np.sum(svd.singular_values**2))
    fully_symmetric = not np.any(s.values)
    if inertia > 0.0:
        contributions = 100.0 * svd.singular_values**2 / inertia
    else:
        contributions = np.zeros(svd.n_dims)
    return SymmetryDecomposition(
        labels=p.labels,
        lam=s.lam,
        metric=metric,
        svd=svd,
        metric_weights=_ro(weights),
        row_coords=_ro(row),
        col_coords=_ro(col),
        total_inertia=inertia,
        contributions=_ro(contributions),
        fully_symmetric=fully_symmetric,
    )


def contribution_ratios(dec: SymmetryDecomposition) -> np.ndarray:
    """Percentage of the total inertia carried by each dimension."""
    if dec.fully_symmetric or dec.total_inertia <= 0.0:
        raise FullySymmetricError("zero inertia: contribution ratios are undefined")
    return dec.contributions


def origin_distances(dec: SymmetryDecomposition) -> tuple[np.ndarray, np.ndarray]:
    """Distance of each category's row and column point from the origin.

    A category sits at the origin exactly when its whole row and column
    are symmetric.
    """
    return (
        np.linalg.norm(dec.row_coords, axis=1),
        np.linalg.norm(dec.col_coords, axis=1),
    )


def default_lambda_grid() -> np.ndarray:
    """lam from -0.99 to 3.00 in steps of 0.01."""
    return np.round(np.arange(-99, 301) * 0.01, 10)


def scan_lambda(
    t: ContingencyTable,
    grid: Sequence[float] | None = None,
    metric: str = "averaged",
) -> LambdaScanResult:
    """Grid search for the lam maximizing the dims 1-2 contribution.

    Evaluates the decomposition at every grid point and reports the first
    (smallest) lam attaining the maximum summed contribution of the two
    leading dimensions, together with the full profile in grid order.
    """
    pts = default_lambda_grid() if grid is None else np.asarray(list(grid), dtype=float)
    if pts.size == 0:
        raise ValueError("empty lambda grid")
    if np.any(pts <= -1.0):
        raise LambdaOutOfRangeError("grid contains lam <= -1")
    p = to_probabilities(t)
    contribs: list[float] = []
    phis: list[float] = []
    for lam in pts:
        dec = decompose(skew_matrix(p, float(lam)), p, metric)
        if dec.fully_symmetric:
            raise FullySymmetricError(
                "fully symmetric table: the contribution profile is undefined at every lam"
            )
        ratios = contribution_ratios(dec)
        contribs.append(float(ratios[0] + ratios[1]))
        phis.append(dec.total_inertia)
    # ties go to the smaller lam; a small tolerance keeps the rule meaningful
    # when two grid points agree to rounding noise
    top = max(contribs)
    best = next(i for i, c in enumerate(contribs) if c >= top - 1e-9)
    return LambdaScanResult(
        best_lambda=float(pts[best]),
        best_contribution=contribs[best],
        grid=tuple(float(x) for x in pts),
        contributions=tuple(contribs),
        inertias=tuple(phis),
    )
