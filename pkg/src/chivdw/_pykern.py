"""Pure-numpy implementations of the numerical hot kernels.

These three functions dominate the runtime of every potential quadrature:
assembling the molecular response tensors on a batch of imaginary
frequencies, assembling the free-space propagator blocks on the same batch,
and contracting four 3x3 factors into a batched trace.  A compiled twin of
this module (``chivdw._ckern``) provides the same signatures; the
``chivdw.kernels`` front-end picks whichever is available.

All arrays are float64.  Shapes: frequency batches are (n,), tensor batches
are (n, 3, 3).
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def response_tensors(omegas: np.ndarray, ds: np.ndarray, mts: np.ndarray,
                     xis: np.ndarray):
    """Batched dynamic response tensors from transition data.

    Parameters: omegas (T,), electric dipoles ds (T, 3), real-represented
    magnetic dipoles mts (T, 3), frequencies xis (n,).

    Returns (alpha, beta_para, chi_em), each (n, 3, 3):
        alpha     = sum_t 2 w_t d_t d_t^T / (w_t^2 + xi^2)
        beta_para = sum_t 2 w_t m_t m_t^T / (w_t^2 + xi^2)
        chi_em    = sum_t 2 xi d_t m_t^T / (w_t^2 + xi^2)
    """
    omegas = np.asarray(omegas, dtype=float)
    ds = np.asarray(ds, dtype=float)
    mts = np.asarray(mts, dtype=float)
    xis = np.asarray(xis, dtype=float)
    n = xis.shape[0]
    if omegas.size == 0:
        zero = np.zeros((n, 3, 3))
        return zero, zero.copy(), zero.copy()
    denom = omegas[:, None] ** 2 + xis[None, :] ** 2      # (T, n)
    w_alpha = 2.0 * omegas[:, None] / denom               # (T, n)
    w_chi = 2.0 * xis[None, :] / denom                    # (T, n)
    dd = np.einsum('ti,tj->tij', ds, ds)
    mm = np.einsum('ti,tj->tij', mts, mts)
    dm = np.einsum('ti,tj->tij', ds, mts)
    alpha = np.einsum('tn,tij->nij', w_alpha, dd)
    beta_para = np.einsum('tn,tij->nij', w_alpha, mm)
    chi_em = np.einsum('tn,tij->nij', w_chi, dm)
    return alpha, beta_para, chi_em


def free_blocks(rvec: np.ndarray, xis: np.ndarray):
    """Batched free-space propagator building blocks.

    ``rvec`` is the separation vector from the second point to the first
    (r_a - r_b); ``xis`` the frequency batch (n,).

    Returns (S, X), each (n, 3, 3):
        S = e^{-xR}/(4 pi R^3) [f(x) I - g(x) RhRh^T],  x = xi R,
            f(x) = 1 + x + x^2,  g(x) = 3 + 3x + x^2
        X = xi e^{-xR}(1 + x)/(4 pi R^3) [rvec]_cross
    S is the doubly-reduced propagator (finite for xi >= 0); X is the
    frequency-weighted single-curl matrix from which all four duality blocks
    are assembled by sign flips.
    """
    rvec = np.asarray(rvec, dtype=float)
    xis = np.asarray(xis, dtype=float)
    R = float(np.sqrt(rvec @ rvec))
    rhat = rvec / R
    x = xis * R
    expf = np.exp(-x) / (4.0 * np.pi * R**3)
    f = 1.0 + x + x * x
    g = 3.0 + 3.0 * x + x * x
    rr = np.outer(rhat, rhat)
    eye = np.eye(3)
    S = expf[:, None, None] * (f[:, None, None] * eye
                               - g[:, None, None] * rr)
    cross = np.array([[0.0, -rvec[2], rvec[1]],
                      [rvec[2], 0.0, -rvec[0]],
                      [-rvec[1], rvec[0], 0.0]])
    pref = xis * expf * (1.0 + x)
    X = pref[:, None, None] * cross
    return S, X


def trace4(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray):
    """Batched trace of the product of four (n, 3, 3) tensor stacks."""
    return np.einsum('nij,njk,nkl,nli->n', a, b, c, d)
