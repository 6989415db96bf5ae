"""Gaussian-process surrogate and expected improvement.

Minimal standard instantiation: squared-exponential kernel on inputs
min-max normalized to the unit cube, constant mean, fixed length scale,
and a small noise floor (the training score is piecewise constant over at
most a dozen examples, so the noise floor also absorbs duplicate points).
"""

import math

import numpy as np

DEFAULT_LENGTH_SCALE = 0.25
DEFAULT_NOISE = 1e-6

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _phi(z):
    return np.exp(-0.5 * np.square(z)) / _SQRT_2PI


def _Phi(z):
    return 0.5 * (1.0 + np.vectorize(math.erf)(np.asarray(z) / _SQRT2))


def expected_improvement(mean, stdev, best):
    """Closed-form EI of a Gaussian over ``best``; elementwise on arrays."""
    mean = np.asarray(mean, dtype=float)
    stdev = np.asarray(stdev, dtype=float)
    improve = mean - best
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(stdev > 0, improve / np.where(stdev > 0, stdev, 1.0), 0.0)
    ei = np.where(
        stdev > 0,
        improve * _Phi(z) + stdev * _phi(z),
        np.maximum(improve, 0.0),
    )
    if ei.ndim == 0:
        return float(ei)
    return ei


class SurrogateState:
    """Observed points (unit cube) and scores, with a fitted GP posterior."""

    def __init__(self, points, scores, length_scale=DEFAULT_LENGTH_SCALE, noise=DEFAULT_NOISE):
        X = np.atleast_2d(np.asarray(points, dtype=float))
        y = np.asarray(scores, dtype=float)
        if len(X) != len(y) or len(y) == 0:
            raise ValueError("need one score per observed point")
        if X.min() < -1e-9 or X.max() > 1 + 1e-9:
            raise ValueError("observed points must lie in the unit cube")
        self.X = X
        self.y = y
        self.length_scale = float(length_scale)
        self.noise = float(noise)
        self.mean = float(y.mean())
        var = float(y.var())
        self.signal_var = var if var > 1e-12 else 1.0
        self._chol, self._alpha = self._fit()

    def _kernel(self, A, B):
        d2 = np.sum((A[:, None, :] - B[None, :, :]) ** 2, axis=-1)
        return self.signal_var * np.exp(-0.5 * d2 / self.length_scale**2)

    def _fit(self):
        n = len(self.y)
        K = self._kernel(self.X, self.X)
        jitter = self.noise
        for _ in range(8):
            try:
                chol = np.linalg.cholesky(K + jitter * np.eye(n))
                break
            except np.linalg.LinAlgError:
                jitter *= 10.0
        else:
            raise np.linalg.LinAlgError("kernel matrix not positive definite")
        resid = self.y - self.mean
        alpha = np.linalg.solve(chol.T, np.linalg.solve(chol, resid))
        return chol, alpha

    def posterior(self, Xq):
        """Posterior mean and standard deviation at query points."""
        Xq = np.atleast_2d(np.asarray(Xq, dtype=float))
        Ks = self._kernel(Xq, self.X)
        mean = self.mean + Ks @ self._alpha
        v = np.linalg.solve(self._chol, Ks.T)
        var = self.signal_var - np.sum(v * v, axis=0)
        return mean, np.sqrt(np.maximum(var, 0.0))
