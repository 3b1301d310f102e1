"""Effective sample size by Geyer's initial positive sequence."""

import logging

import numpy as np

from ..errors import TooFewSamples

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100


def autocorrelation(x: np.ndarray) -> np.ndarray:
    """Biased sample autocorrelation of a 1-d series, computed by FFT."""
    n = x.shape[0]
    centered = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, size)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), size)[:n] / n
    return acov / acov[0]


def _ess_1d(x: np.ndarray, clamp: bool) -> float:
    n = x.shape[0]
    if np.ptp(x) == 0.0:
        return 1.0
    rho = autocorrelation(x)
    tau = -1.0
    for k in range(0, n - 1, 2):
        pair = rho[k] + rho[k + 1]
        if pair <= 0.0:
            break
        tau += 2.0 * pair
    tau = max(tau, 1.0 / n)
    value = n / tau
    return min(value, float(n)) if clamp else value


def ess(samples: np.ndarray, clamp: bool = True) -> np.ndarray:
    """
    Per-coordinate effective sample size.

    Args:
        samples: N x d chain output (or a length-N series)
        clamp: Cap anti-correlated chains at N

    Raises:
        TooFewSamples: If N < 100
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    if samples.shape[0] < MIN_SAMPLES:
        raise TooFewSamples(f"ESS needs at least {MIN_SAMPLES} samples, got {samples.shape[0]}")
    return np.array([_ess_1d(samples[:, j], clamp) for j in range(samples.shape[1])])
