"""Free-space field correlation blocks at imaginary frequency.

The pair potential consumes the environment only through four 3x3 blocks
coupling the electric/magnetic response slots of the two molecules.  This
module provides those blocks for two points in unbounded vacuum, together
with the underlying scattering Green tensor and its curls, and a
finite-difference curl used to cross-check the analytic forms.

Conventions (natural units, imaginary frequency xi >= 0, k = xi/c = xi):

* ``g0``            -- scattering Green tensor G(r, r', i xi); diverges as
                       1/xi^2 at zero frequency (static dipole field).
* ``g0_scaled``     -- xi^2 * G, finite everywhere including xi = 0.
* ``g0_curl_left``  -- curl of G in its *first* argument.  For separation
                       vector v = r - r' the result is
                       exp(-k s) (1 + k s) / (4 pi s^3) * cross(-v),
                       with s = |v| and cross(a) the matrix form of (a x).
* blocks            -- ee and mm blocks equal ``g0_scaled``; the em and me
                       blocks are xi times the corresponding single curls
                       and vanish linearly at xi = 0.

The em/me blocks obey the reciprocity relation
``block('e','m', r, r')^T = -block('m','e', r', r)`` while ee/mm transpose
plainly under argument exchange.

A Green-tensor provider is any object with this module's ``block``
signature; ``FreeSpaceProvider`` is the bundled vacuum implementation and
the potential integrators accept any structural look-alike (e.g. a cavity
or surface-dressed provider).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from chivdw import kernels

__all__ = [
    "Separation",
    "g0",
    "g0_scaled",
    "g0_curl_left",
    "g0_curl_both",
    "FreeSpaceProvider",
    "free_space_provider",
    "fd_curl_left",
]

_FOUR_PI = 4.0 * math.pi


def _cross_matrix(v: np.ndarray) -> np.ndarray:
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


@dataclass(frozen=True)
class Separation:
    """Pair of positions with cached distance and unit separation vector.

    The separation vector points from the second position to the first:
    ``r_hat = (r_a - r_b) / R``.
    """

    r_a: np.ndarray
    r_b: np.ndarray

    def __post_init__(self) -> None:
        ra = np.array(self.r_a, dtype=float).reshape(-1)
        rb = np.array(self.r_b, dtype=float).reshape(-1)
        if ra.shape != (3,) or rb.shape != (3,):
            raise ValueError("positions must be 3-vectors")
        if not (np.all(np.isfinite(ra)) and np.all(np.isfinite(rb))):
            raise ValueError("positions must be finite")
        diff = ra - rb
        dist = float(np.linalg.norm(diff))
        if dist <= 0.0:
            raise ValueError("positions must be distinct")
        ra.setflags(write=False)
        rb.setflags(write=False)
        object.__setattr__(self, "r_a", ra)
        object.__setattr__(self, "r_b", rb)
        object.__setattr__(self, "_dist", dist)
        rhat = diff / dist
        rhat.setflags(write=False)
        object.__setattr__(self, "_rhat", rhat)

    @property
    def R(self) -> float:
        return self._dist  # type: ignore[attr-defined]

    @property
    def r_hat(self) -> np.ndarray:
        return self._rhat  # type: ignore[attr-defined]


def _prepare_xi(xi, allow_zero: bool) -> tuple[np.ndarray, bool]:
    arr = np.atleast_1d(np.asarray(xi, dtype=float))
    if arr.ndim != 1:
        raise ValueError("xi must be a scalar or 1-d array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("xi must be finite")
    if allow_zero:
        if np.any(arr < 0.0):
            raise ValueError("xi must be non-negative")
    else:
        if np.any(arr <= 0.0):
            raise ValueError("xi must be positive")
    return arr, np.isscalar(xi) or getattr(xi, "ndim", 1) == 0


def _maybe_squeeze(out: np.ndarray, scalar: bool) -> np.ndarray:
    return out[0] if scalar else out


def g0(sep: Separation, xi) -> np.ndarray:
    """Scattering Green tensor between the two points at frequency xi > 0."""
    xis, scalar = _prepare_xi(xi, allow_zero=False)
    rvec = sep.r_a - sep.r_b
    scaled, _ = kernels.free_blocks(rvec, xis)
    out = scaled / (xis**2)[:, None, None]
    return _maybe_squeeze(out, scalar)


def g0_scaled(sep: Separation, xi) -> np.ndarray:
    """xi^2 times the Green tensor; finite for all xi >= 0.

    At xi = 0 this reduces to the static dipole field
    (I - 3 rhat rhat^T) / (4 pi R^3).
    """
    xis, scalar = _prepare_xi(xi, allow_zero=True)
    scaled, _ = kernels.free_blocks(sep.r_a - sep.r_b, xis)
    return _maybe_squeeze(scaled, scalar)


def _curl_prefactor(dist: float, xis: np.ndarray) -> np.ndarray:
    x = xis * dist
    return np.exp(-x) * (1.0 + x) / (_FOUR_PI * dist**3)


def g0_curl_left(r: np.ndarray, rp: np.ndarray, xi) -> np.ndarray:
    """Curl of the Green tensor in its first argument, at (r, r').

    Equals ``pref * cross(r' - r)`` with
    pref = exp(-k s)(1 + k s) / (4 pi s^3), s = |r - r'|.
    """
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    xis, scalar = _prepare_xi(xi, allow_zero=True)
    diff = rp - r
    s = float(np.linalg.norm(diff))
    if s <= 0.0:
        raise ValueError("points must be distinct")
    pref = _curl_prefactor(s, xis)
    out = pref[:, None, None] * _cross_matrix(diff)[None, :, :]
    return _maybe_squeeze(out, scalar)


def g0_curl_both(sep: Separation, xi) -> np.ndarray:
    """Double curl (one in each argument) of the Green tensor.

    On the imaginary axis this equals xi^2 G, i.e. ``g0_scaled``.
    """
    return g0_scaled(sep, xi)


class FreeSpaceProvider:
    """Vacuum field-correlation blocks.

    ``block(lam, lamp, r, rp, xi)`` returns the 3x3 block coupling response
    slot ``lam`` at ``r`` to slot ``lamp`` at ``rp``; ``xi`` may be a scalar
    (returns (3, 3)) or a 1-d array of length n (returns (n, 3, 3)).  All
    blocks are finite at xi = 0; the cross blocks vanish there.
    """

    def block(self, lam: str, lamp: str, r, rp, xi) -> np.ndarray:
        r = np.asarray(r, dtype=float).reshape(-1)
        rp = np.asarray(rp, dtype=float).reshape(-1)
        if r.shape != (3,) or rp.shape != (3,):
            raise ValueError("positions must be 3-vectors")
        xis, scalar = _prepare_xi(xi, allow_zero=True)
        rvec = r - rp
        if not float(np.linalg.norm(rvec)) > 0.0:
            raise ValueError("points must be distinct")
        scaled, cross = kernels.free_blocks(rvec, xis)
        if lam == "e" and lamp == "e":
            out = scaled
        elif lam == "m" and lamp == "m":
            out = scaled
        elif lam == "e" and lamp == "m":
            # xi * pref * cross(rp - r), i.e. xi times the first-argument curl
            out = -cross
        elif lam == "m" and lamp == "e":
            # xi * pref * cross(r - rp), i.e. xi times the second-argument curl
            out = cross
        else:
            raise ValueError(f"block labels must be 'e' or 'm', got {(lam, lamp)!r}")
        return _maybe_squeeze(out, scalar)


def free_space_provider() -> FreeSpaceProvider:
    """The bundled vacuum provider instance."""
    return FreeSpaceProvider()


def fd_curl_left(field: Callable[[np.ndarray, np.ndarray, float], np.ndarray],
                 r, rp, xi: float, step_scale: float = 1e-5) -> np.ndarray:
    """Finite-difference curl of a tensor field in its first argument.

    ``field(r, rp, xi)`` must return a 3x3 array.  Central differences with
    one Richardson refinement; the step is ``step_scale`` times the point
    separation.  Used in tests to validate the analytic curls.
    """
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    s = float(np.linalg.norm(r - rp))
    if s <= 0.0:
        raise ValueError("points must be distinct")

    def derivative_matrix(h: float) -> np.ndarray:
        # partials[p, q, j] = d/dr_p field_{qj}
        partials = np.empty((3, 3, 3))
        for p in range(3):
            step = np.zeros(3)
            step[p] = h
            plus = field(r + step, rp, xi)
            minus = field(r - step, rp, xi)
            partials[p] = (np.asarray(plus) - np.asarray(minus)) / (2.0 * h)
        return partials

    h = step_scale * s
    coarse = derivative_matrix(h)
    fine = derivative_matrix(0.5 * h)
    partials = (4.0 * fine - coarse) / 3.0
    # (curl F)_{ij} = eps_{ipq} d_p F_{qj}
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return np.einsum('ipq,pqj->ij', eps, partials)
