"""Monte Carlo sampling of Haar orthogonal matrices and their eigenangles.

Everything here runs at machine precision with numpy: the point of the
sampler is statistical cross-validation of the exact determinant
formulas, not high-accuracy numerics.  The counting deviations carry two
deterministic inequalities that hold pathwise on every sample, so they
are asserted at construction rather than tested statistically.
"""

from dataclasses import dataclass

import numpy as np

from .symbols import EnsembleLabel

FIXED_EIG_TOL = 1e-8
ORTHOGONALITY_TOL = 1e-12

# Slack for comparing float64 evaluations of the two sides of an exact
# inequality; far below any statistically meaningful scale.
_PATHWISE_SLACK = 1e-9


class SamplingError(ArithmeticError):
    """Eigenvalue extraction disagreed with the label structure."""


@dataclass(frozen=True)
class EigenangleSample:
    label: EnsembleLabel
    n: int
    angles: tuple

    def __post_init__(self):
        if len(self.angles) != self.n:
            raise SamplingError(
                "expected %d free angles, got %d" % (self.n, len(self.angles))
            )
        prev = 0.0
        for a in self.angles:
            if not prev <= a < np.pi:
                raise SamplingError("angles must be sorted in (0, pi)")
            prev = a


@dataclass(frozen=True)
class CountingStats:
    max_angle_dev: float
    max_count_dev: float
    sup_count_dev: float

    def __post_init__(self):
        if self.sup_count_dev > 2 + self.max_count_dev + _PATHWISE_SLACK:
            raise SamplingError("pathwise counting inequality violated")


def sample_haar_orthogonal(N, rng):
    """Haar-distributed N x N orthogonal matrix.

    QR of a Gaussian matrix, with each column of Q rescaled by the sign
    of the matching R diagonal entry; without that fix numpy's QR sign
    convention would bias the distribution.
    """
    if N < 1:
        raise ValueError("N must be positive")
    z = rng.standard_normal((N, N))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r)).copy()
    d[d == 0] = 1.0
    q = q * d
    resid = np.max(np.abs(q.T @ q - np.eye(N)))
    if resid >= ORTHOGONALITY_TOL:
        raise SamplingError("orthogonality residual %.3e" % resid)
    return q


def sample_ensemble(label: EnsembleLabel, n, rng):
    """One draw of the n free eigenangles for the given label.

    Haar O(N) draws are rejected until the determinant sign matches the
    label (acceptance one half); the label's mandated fixed eigenvalues
    are stripped and the remaining conjugate pairs give the angles.
    """
    if n < 1:
        raise ValueError("n must be positive")
    N = label.matrix_size(n)
    while True:
        m = sample_haar_orthogonal(N, rng)
        det = np.linalg.det(m)
        if abs(abs(det) - 1.0) > 1e-10:
            raise SamplingError("determinant %.15f not near a unit" % det)
        if (det > 0) == (label.sign > 0):
            break
    w = np.linalg.eigvals(m)
    for v in label.fixed_eigenvalues:
        idx = np.where(np.abs(w - v) < FIXED_EIG_TOL)[0]
        if len(idx) != 1:
            raise SamplingError(
                "label %s mandates one eigenvalue at %+d, found %d"
                % (label, v, len(idx))
            )
        w = np.delete(w, idx[0])
    angles = np.sort(np.angle(w[w.imag > 0]))
    if len(angles) != n:
        raise SamplingError(
            "expected %d conjugate pairs, found %d" % (n, len(angles))
        )
    return EigenangleSample(label=label, n=n, angles=tuple(angles.tolist()))


def counting_stats(sample: EigenangleSample):
    """Deviations of the angles and of the counting function.

    The supremum deviation is exact, not discretized: between
    consecutive angles the counting function is constant, so the
    supremum is attained at the interval ends.
    """
    n = sample.n
    th = np.asarray(sample.angles)
    k = np.arange(1, n + 1)
    grid = np.pi * k / n
    max_angle_dev = float(np.max(np.abs(th - grid)))
    counts = np.searchsorted(th, grid, side="left")
    max_count_dev = float(np.max(np.abs(counts - (k - 1))))
    ext = np.concatenate(([0.0], th, [np.pi]))
    kk = np.arange(0, n + 1)
    sup_count_dev = float(
        np.max(np.maximum(kk - n * ext[:-1] / np.pi, n * ext[1:] / np.pi - kk))
    )
    stats = CountingStats(
        max_angle_dev=max_angle_dev,
        max_count_dev=max_count_dev,
        sup_count_dev=sup_count_dev,
    )
    if max_angle_dev > (np.pi / n) * (1 + max_count_dev) + _PATHWISE_SLACK:
        raise SamplingError("pathwise angle inequality violated")
    return stats


@dataclass(frozen=True)
class RigidityReport:
    label: EnsembleLabel
    n: int
    samples: int
    eps: float
    seed: object
    angle_fraction: float
    count_fraction: float


def rigidity_experiment(label: EnsembleLabel, n, samples, eps, rng, seed=None):
    """Fractions of samples satisfying the two rigidity thresholds.

    The angle threshold is (1+eps) log n / n, the counting threshold is
    (1/pi + eps) log n; both fractions tend to 1 as n grows.  The
    pathwise inequalities are asserted inside counting_stats on every
    sample along the way.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    angle_bound = (1 + eps) * np.log(n) / n
    count_bound = (1 / np.pi + eps) * np.log(n)
    angle_hits = 0
    count_hits = 0
    for _ in range(samples):
        stats = counting_stats(sample_ensemble(label, n, rng))
        if stats.max_angle_dev < angle_bound:
            angle_hits += 1
        if stats.sup_count_dev < count_bound:
            count_hits += 1
    return RigidityReport(
        label=label,
        n=n,
        samples=samples,
        eps=eps,
        seed=seed,
        angle_fraction=angle_hits / samples,
        count_fraction=count_hits / samples,
    )


def empirical_gap(label: EnsembleLabel, n, t0, samples, rng):
    """Fraction of samples with no angle in (0, t0), with binomial stderr."""
    if samples < 1:
        raise ValueError("samples must be positive")
    hits = 0
    for _ in range(samples):
        sample = sample_ensemble(label, n, rng)
        if sample.angles[0] >= t0:
            hits += 1
    p = hits / samples
    stderr = np.sqrt(p * (1 - p) / samples)
    return p, stderr


def occupancy_counts(label: EnsembleLabel, n, t0, samples, rng):
    """Histogram over {0..n} of the number of angles in (0, t0)."""
    if samples < 1:
        raise ValueError("samples must be positive")
    hist = np.zeros(n + 1, dtype=np.int64)
    for _ in range(samples):
        sample = sample_ensemble(label, n, rng)
        count = int(np.searchsorted(sample.angles, t0, side="left"))
        hist[count] += 1
    return hist
