"""Shared random-instance constructors for the test suite."""

import numpy as np

from gausswyner.vector import JointGaussianCov


def random_joint_cov(rng, dx, dy, damping=0.9):
    """A random valid covariance split into blocks.

    Builds S = A A^T / n (PSD by construction) and damps the cross block,
    which keeps the stacked matrix PSD (it is a convex combination of S and
    its block-diagonal part) and keeps canonical correlations away from 1.
    """
    n = dx + dy
    a = rng.normal(size=(n, n + 2))
    s = a @ a.T / (n + 2)
    return JointGaussianCov(s[:dx, :dx], damping * s[:dx, dx:], s[dx:, dx:])


def random_invertible(rng, n, smin=0.5, smax=2.0):
    """A random well-conditioned invertible matrix (singular values in
    [smin, smax])."""
    q1, _ = np.linalg.qr(rng.normal(size=(n, n)))
    q2, _ = np.linalg.qr(rng.normal(size=(n, n)))
    return q1 @ np.diag(rng.uniform(smin, smax, size=n)) @ q2
