"""Jointly Gaussian vector pairs: covariance validation, pseudo-inverse
matrix square roots, canonical correlations, and the vector extension of the
scalar common-information formula.

The pipeline is: validate the stacked covariance, whiten each marginal with
a pseudo-inverse square root, read the canonical correlations off an SVD of
the whitened cross-covariance, then water-fill the budget across the
resulting independent scalar pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .allocation import Allocation, as_rhos, waterfill
from .errors import CovarianceError, ParameterError
from .scalar import validate_budget

__all__ = [
    "PSD_RTOL",
    "RANK_RTOL",
    "SPECTRUM_CLAMP_BAND",
    "SYMMETRY_RTOL",
    "CanonicalSpectrum",
    "JointGaussianCov",
    "VectorCI",
    "canonical_correlations",
    "pinv_sqrt",
    "validate_cov",
    "wyner_ci_vector",
]

SYMMETRY_RTOL = 1e-9    # relative Frobenius asymmetry tolerated on blocks
PSD_RTOL = 1e-9         # min eigenvalue >= -PSD_RTOL * max eigenvalue
RANK_RTOL = 1e-10       # eigenvalues below RANK_RTOL * max count as zero
SPECTRUM_CLAMP_BAND = 1e-6  # singular values may overshoot 1 by this much


@dataclass(frozen=True)
class JointGaussianCov:
    """Covariance of a stacked pair of Gaussian vectors, held as blocks.

    Parameters
    ----------
    k_x : (dx, dx) array_like
        Covariance of the first vector.
    k_xy : (dx, dy) array_like
        Cross-covariance.
    k_y : (dy, dy) array_like
        Covariance of the second vector.
    """

    k_x: np.ndarray
    k_xy: np.ndarray
    k_y: np.ndarray

    def __post_init__(self):
        for name in ("k_x", "k_xy", "k_y"):
            try:
                arr = np.array(getattr(self, name), dtype=float)
            except (TypeError, ValueError) as exc:
                raise ParameterError(f"{name} is not a numeric matrix: {exc}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        for name in ("k_x", "k_y"):
            block = getattr(self, name)
            if block.ndim != 2 or block.shape[0] != block.shape[1]:
                raise ParameterError(
                    f"{name} must be square, got shape {block.shape}")
        if self.k_xy.ndim != 2 or self.k_xy.shape != (self.dim_x, self.dim_y):
            raise ParameterError(
                f"k_xy must have shape ({self.dim_x}, {self.dim_y}), "
                f"got {self.k_xy.shape}")

    @property
    def dim_x(self) -> int:
        return self.k_x.shape[0]

    @property
    def dim_y(self) -> int:
        return self.k_y.shape[0]

    @classmethod
    def from_joint(cls, joint, dim_x: int) -> "JointGaussianCov":
        """Split one stacked covariance matrix into blocks."""
        try:
            joint = np.array(joint, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"joint covariance is not numeric: {exc}")
        if joint.ndim != 2 or joint.shape[0] != joint.shape[1]:
            raise ParameterError(
                f"joint covariance must be square, got shape {joint.shape}")
        n = joint.shape[0]
        if not 0 < dim_x < n:
            raise ParameterError(
                f"dim_x must lie strictly between 0 and {n}, got {dim_x}")
        d = int(dim_x)
        return cls(joint[:d, :d], joint[:d, d:], joint[d:, d:])

    def stacked(self) -> np.ndarray:
        """The full (dx+dy) x (dx+dy) covariance matrix."""
        top = np.hstack([self.k_x, self.k_xy])
        bottom = np.hstack([self.k_xy.T, self.k_y])
        return np.vstack([top, bottom])


def validate_cov(cov: JointGaussianCov) -> JointGaussianCov:
    """Check finiteness, block symmetry, and joint positive
    semi-definiteness; return a copy with exactly symmetric diagonal blocks.

    Raises :class:`CovarianceError` naming the violated invariant, quoting
    the offending eigenvalue for PSD failures.
    """
    if not isinstance(cov, JointGaussianCov):
        raise ParameterError("validate_cov expects a JointGaussianCov")
    for name in ("k_x", "k_xy", "k_y"):
        if not np.all(np.isfinite(getattr(cov, name))):
            raise CovarianceError(f"{name} contains non-finite entries")
    symmetrized = {}
    for name in ("k_x", "k_y"):
        block = getattr(cov, name)
        asym = float(np.linalg.norm(block - block.T))
        scale = max(float(np.linalg.norm(block)), 1e-300)
        if asym > SYMMETRY_RTOL * scale:
            raise CovarianceError(
                f"{name} is not symmetric: ||K - K^T||_F / ||K||_F = "
                f"{asym / scale:.3e} exceeds {SYMMETRY_RTOL:.0e}")
        symmetrized[name] = 0.5 * (block + block.T)
    clean = JointGaussianCov(symmetrized["k_x"], cov.k_xy, symmetrized["k_y"])
    eigenvalues = np.linalg.eigvalsh(clean.stacked())
    lam_min, lam_max = float(eigenvalues[0]), float(eigenvalues[-1])
    if lam_min < -PSD_RTOL * max(lam_max, 0.0):
        raise CovarianceError(
            "stacked covariance is not positive semi-definite: "
            f"min eigenvalue {lam_min:.6e} (max eigenvalue {lam_max:.6e})")
    return clean


def pinv_sqrt(m) -> np.ndarray:
    """Inverse square root of a symmetric PSD matrix on its range.

    Eigenvalues above ``RANK_RTOL`` times the largest are inverted under the
    square root; the rest (the numerical null space) map to zero. For
    full-rank input ``R = pinv_sqrt(m)`` satisfies R m R = identity; in
    general R m R is the orthogonal projector onto range(m).
    """
    try:
        m = np.array(m, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"matrix is not numeric: {exc}")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError(f"matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise CovarianceError("matrix contains non-finite entries")
    asym = float(np.linalg.norm(m - m.T))
    scale = max(float(np.linalg.norm(m)), 1e-300)
    if asym > SYMMETRY_RTOL * scale:
        raise CovarianceError(
            f"matrix is not symmetric: relative asymmetry {asym / scale:.3e}")
    values, vectors = np.linalg.eigh(0.5 * (m + m.T))
    lam_max = float(values[-1]) if values.size else 0.0
    if values.size and float(values[0]) < -PSD_RTOL * max(lam_max, 0.0):
        raise CovarianceError(
            "matrix is not positive semi-definite: "
            f"min eigenvalue {float(values[0]):.6e}")
    cutoff = RANK_RTOL * max(lam_max, 0.0)
    inv_roots = np.zeros_like(values)
    keep = values > cutoff
    inv_roots[keep] = 1.0 / np.sqrt(values[keep])
    return (vectors * inv_roots) @ vectors.T


@dataclass(frozen=True)
class CanonicalSpectrum:
    """Descending canonical correlations in [0, 1]."""

    rhos: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "rhos", as_rhos(self.rhos))

    def __len__(self) -> int:
        return len(self.rhos)

    def __iter__(self):
        return iter(self.rhos)


def canonical_correlations(cov: JointGaussianCov) -> CanonicalSpectrum:
    """Singular values of the whitened cross-covariance, padded and clamped.

    The spectrum is padded with zeros to max(dx, dy), so pairs of unequal
    length behave as if the shorter vector were extended with independent
    components. Values beyond 1 + SPECTRUM_CLAMP_BAND signal an inconsistent
    covariance (impossible after validation) and raise; values inside the
    band are clamped to 1.
    """
    cov = validate_cov(cov)
    whitened = pinv_sqrt(cov.k_x) @ cov.k_xy @ pinv_sqrt(cov.k_y)
    svals = np.linalg.svd(whitened, compute_uv=False)
    rhos = []
    for s in svals:
        s = float(s)
        if s > 1.0 + SPECTRUM_CLAMP_BAND:
            raise CovarianceError(
                f"canonical correlation {s!r} exceeds 1: covariance is "
                "inconsistent")
        rhos.append(min(s, 1.0))
    rhos.extend([0.0] * (max(cov.dim_x, cov.dim_y) - len(rhos)))
    return CanonicalSpectrum(tuple(rhos))


class VectorCI(NamedTuple):
    """Relaxed common information of a vector pair plus the evidence."""

    value_nats: float
    spectrum: CanonicalSpectrum
    allocation: Allocation


def wyner_ci_vector(cov: JointGaussianCov, gamma: float) -> VectorCI:
    """Relaxed Wyner common information for jointly Gaussian vectors.

    Whitens to canonical components, then water-fills the budget across
    them. A canonical correlation of exactly 1 makes the value infinite for
    any finite budget (the pair shares a lossless common component).
    """
    gamma = validate_budget(gamma)
    spectrum = canonical_correlations(cov)
    alloc = waterfill(spectrum, gamma)
    return VectorCI(alloc.total_value, spectrum, alloc)
