"""Two-molecule dispersion potentials from an imaginary-frequency integral.

The interaction energy between two ground-state molecules is assembled from
fourth-order tuples

    U[l1 l2 l3 l4] = -(1/2 pi) Int_0^inf dxi
        tr[ A_a^{l1 l2} . B_{l2 l3}(r_a, r_b) . A_b^{l3 l4} . B_{l4 l1}(r_b, r_a) ]

where each ``l`` is an electric/magnetic slot label ('e' or 'm'),
``A^{ll'}`` is the corresponding molecular response block (alpha, beta,
chi_em or chi_me) and ``B_{ll'}`` is an environment field-correlation block
supplied by a Green-tensor provider.  Named components group tuples:

==========  ============================================  ====================
component   tuples                                        character
==========  ============================================  ====================
EE          eeee                                          electric-electric
EM / ME     eemm / mmee                                   electric-magnetic
MM          mmmm                                          magnetic-magnetic
EC / CE     eeem + eeme / emee + meee                     electric-chiral
MC / CM     mmem + mmme / emmm + memm                     magnetic-chiral
PC / DC     the MC tuples with molecule A's magnetic      para/dia-chiral
            response restricted to its paramagnetic /
            diamagnetic part
CC          emem + emme + meem + meme                     chiral-chiral
TOTAL       all sixteen                                   full interaction
==========  ============================================  ====================

``u_row`` provides the two-sided decomposition used for tabulation: each of
its ten rows sums every tuple whose response characters match (e.g. row
'EP' includes both the A-electric/B-paramagnetic and the
A-paramagnetic/B-electric orderings), and the ten rows add up to TOTAL
exactly.

Besides the general provider path there are closed free-space forms
(`u_free_fast`, `u_cc_isotropic`) in which the frequency integral has been
reduced analytically to a single exponentially damped radial integral.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from chivdw import kernels
from chivdw.green import FreeSpaceProvider, Separation, free_space_provider
from chivdw.quad import QuadResult, QuadSpec, integrate_halfline
from chivdw.response import Molecule, response_arrays, rotate_molecule_tensors

__all__ = [
    "ComponentLabel",
    "LABEL_TUPLES",
    "ROW_SPECS",
    "ROW_NAMES",
    "PotentialCurve",
    "u_unified",
    "u_named",
    "u_row",
    "u_ec_direct",
    "u_mc_direct",
    "u_pc_direct",
    "u_dc_direct",
    "u_cc_direct",
    "u_free_fast",
    "u_cc_isotropic",
    "compute_curve",
    "resolve_component",
]

_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0

_PI = math.pi


class ComponentLabel(str, Enum):
    """Named groupings of response tuples."""

    EE = "EE"
    EM = "EM"
    ME = "ME"
    MM = "MM"
    EC = "EC"
    CE = "CE"
    MC = "MC"
    CM = "CM"
    PC = "PC"
    DC = "DC"
    CC = "CC"
    TOTAL = "TOTAL"


_ALL16: Tuple[str, ...] = tuple(
    "".join(t) for t in itertools.product("em", repeat=4))

LABEL_TUPLES = {
    ComponentLabel.EE: ("eeee",),
    ComponentLabel.EM: ("eemm",),
    ComponentLabel.ME: ("mmee",),
    ComponentLabel.MM: ("mmmm",),
    ComponentLabel.EC: ("eeem", "eeme"),
    ComponentLabel.CE: ("emee", "meee"),
    ComponentLabel.MC: ("mmem", "mmme"),
    ComponentLabel.CM: ("emmm", "memm"),
    ComponentLabel.PC: ("mmem", "mmme"),
    ComponentLabel.DC: ("mmem", "mmme"),
    ComponentLabel.CC: ("emem", "emme", "meem", "meme"),
    ComponentLabel.TOTAL: _ALL16,
}

# magnetic-slot restriction applied to molecule A for the named para/dia
# chiral components
_LABEL_BETA_MODE_A = {
    ComponentLabel.PC: "para",
    ComponentLabel.DC: "dia",
}

# Two-sided tabulation rows: (tuple, beta_mode_a, beta_mode_b) terms.  The
# ten rows partition all sixteen tuples with the magnetic response split
# into paramagnetic and diamagnetic parts, so their sum equals TOTAL.
ROW_SPECS = {
    "EE": (("eeee", "full", "full"),),
    "EP": (("eemm", "full", "para"), ("mmee", "para", "full")),
    "ED": (("eemm", "full", "dia"), ("mmee", "dia", "full")),
    "EC": (("eeem", "full", "full"), ("eeme", "full", "full"),
           ("emee", "full", "full"), ("meee", "full", "full")),
    "PP": (("mmmm", "para", "para"),),
    "PD": (("mmmm", "para", "dia"), ("mmmm", "dia", "para")),
    "PC": (("mmem", "para", "full"), ("mmme", "para", "full"),
           ("emmm", "full", "para"), ("memm", "full", "para")),
    "DD": (("mmmm", "dia", "dia"),),
    "DC": (("mmem", "dia", "full"), ("mmme", "dia", "full"),
           ("emmm", "full", "dia"), ("memm", "full", "dia")),
    "CC": (("emem", "full", "full"), ("emme", "full", "full"),
           ("meem", "full", "full"), ("meme", "full", "full")),
}

ROW_NAMES: Tuple[str, ...] = tuple(ROW_SPECS)

_SLOT_INDEX = {("e", "e"): 0, ("m", "m"): 1, ("e", "m"): 2, ("m", "e"): 3}


@dataclass(frozen=True)
class PotentialCurve:
    """Potential values over a grid of separations for one component."""

    component: str
    r_values: np.ndarray
    u_values: np.ndarray
    error_estimates: np.ndarray
    converged: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.r_values, dtype=float)
        u = np.asarray(self.u_values, dtype=float)
        e = np.asarray(self.error_estimates, dtype=float)
        c = np.asarray(self.converged, dtype=bool)
        if not (r.shape == u.shape == e.shape == c.shape and r.ndim == 1):
            raise ValueError("curve arrays must be 1-d and congruent")
        for name, arr in (("r_values", r), ("u_values", u),
                          ("error_estimates", e), ("converged", c)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return self.r_values.shape[0]


def _env_rel_tol() -> float:
    raw = os.environ.get("VDW_QUAD_RTOL", "").strip()
    if raw:
        try:
            val = float(raw)
        except ValueError:
            raise ValueError(f"VDW_QUAD_RTOL is not a number: {raw!r}")
        if not (0.0 < val < 1.0):
            raise ValueError("VDW_QUAD_RTOL must be in (0, 1)")
        return val
    return 1e-10


def _default_spec(R: float) -> QuadSpec:
    return QuadSpec(rel_tol=_env_rel_tol(), abs_tol=1e-300,
                    max_evals=20_000, decay_rate=2.0 * R)


def _default_breakpoints(mol_a: Molecule, mol_b: Molecule,
                         R: float) -> Tuple[float, ...]:
    pts = set(float(w) for w in mol_a.omegas)
    pts.update(float(w) for w in mol_b.omegas)
    tail = 40.0 / (2.0 * R)
    if pts:
        tail = max(tail, 20.0 * max(pts))
    pts.add(tail)
    return tuple(sorted(pts))


def _validate_tuple(tup: str) -> str:
    if isinstance(tup, (tuple, list)):
        tup = "".join(tup)
    if not (isinstance(tup, str) and len(tup) == 4
            and set(tup) <= {"e", "m"}):
        raise ValueError(
            f"tuple must be four 'e'/'m' labels, got {tup!r}")
    return tup


def _provider_blocks(provider, lam: str, lamp: str, r: np.ndarray,
                     rp: np.ndarray, xis: np.ndarray) -> np.ndarray:
    """Evaluate a provider block over an array of frequencies.

    Providers that understand array frequencies are called once; scalar-only
    providers are called per node.
    """
    n = xis.shape[0]
    try:
        out = np.asarray(provider.block(lam, lamp, r, rp, xis), dtype=float)
        if out.shape == (n, 3, 3):
            return out
    except Exception:
        pass
    out = np.empty((n, 3, 3))
    for i in range(n):
        out[i] = np.asarray(provider.block(lam, lamp, r, rp, float(xis[i])),
                            dtype=float)
    return out


def _tuple_integrand(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                     tup: str, provider, beta_mode_a: str, beta_mode_b: str,
                     duality: Optional[float]) -> Callable:
    l1, l2, l3, l4 = tup
    r_a, r_b = sep.r_a, sep.r_b
    ia = _SLOT_INDEX[(l1, l2)]
    ib = _SLOT_INDEX[(l3, l4)]

    def integrand(xis):
        xis = np.atleast_1d(np.asarray(xis, dtype=float))
        if duality is None:
            ta = response_arrays(mol_a, xis, beta_mode_a)
            tb = response_arrays(mol_b, xis, beta_mode_b)
        else:
            ta = rotate_molecule_tensors(mol_a, duality, xis, beta_mode_a)
            tb = rotate_molecule_tensors(mol_b, duality, xis, beta_mode_b)
        A1 = ta[ia]
        A2 = tb[ib]
        B12 = _provider_blocks(provider, l2, l3, r_a, r_b, xis)
        B21 = _provider_blocks(provider, l4, l1, r_b, r_a, xis)
        return -(0.5 / _PI) * kernels.trace4(
            np.ascontiguousarray(A1), np.ascontiguousarray(B12),
            np.ascontiguousarray(A2), np.ascontiguousarray(B21))

    return integrand


def u_unified(mol_a: Molecule, mol_b: Molecule, sep: Separation, tup,
              provider=None, spec: Optional[QuadSpec] = None,
              beta_mode_a: str = "full", beta_mode_b: str = "full",
              duality: Optional[float] = None) -> QuadResult:
    """One response tuple's contribution to the pair potential.

    ``tup`` is a four-label string such as ``'eeem'``.  ``provider``
    defaults to free space; ``spec`` to a relative tolerance of 1e-10
    (override via the VDW_QUAD_RTOL environment variable) with the
    frequency decay scale set by the separation.
    """
    tup = _validate_tuple(tup)
    if provider is None:
        provider = free_space_provider()
    if spec is None:
        spec = _default_spec(sep.R)
    integrand = _tuple_integrand(mol_a, mol_b, sep, tup, provider,
                                 beta_mode_a, beta_mode_b, duality)
    breaks = _default_breakpoints(mol_a, mol_b, sep.R)
    return integrate_halfline(integrand, spec, breakpoints=breaks)


def u_named(mol_a: Molecule, mol_b: Molecule, sep: Separation, label,
            provider=None, spec: Optional[QuadSpec] = None,
            duality: Optional[float] = None) -> QuadResult:
    """A named component of the pair potential (sum of its tuples)."""
    label = ComponentLabel(label)
    beta_mode_a = _LABEL_BETA_MODE_A.get(label, "full")
    if duality is not None and label in _LABEL_BETA_MODE_A:
        raise ValueError(
            "duality rotation is undefined for para/dia-restricted "
            "components")
    total = QuadResult(0.0, 0.0, 0, True)
    for tup in LABEL_TUPLES[label]:
        total = total + u_unified(
            mol_a, mol_b, sep, tup, provider=provider, spec=spec,
            beta_mode_a=beta_mode_a, duality=duality)
    return total


def u_row(mol_a: Molecule, mol_b: Molecule, sep: Separation, row: str,
          provider=None, spec: Optional[QuadSpec] = None) -> QuadResult:
    """One two-sided tabulation row (see ROW_SPECS).

    The ten rows partition the sixteen tuples with the magnetic responses
    split into para/dia parts, so summing them reproduces TOTAL.
    """
    row = str(row).upper()
    if row not in ROW_SPECS:
        raise ValueError(f"unknown row {row!r}; expected one of {ROW_NAMES}")
    total = QuadResult(0.0, 0.0, 0, True)
    for tup, mode_a, mode_b in ROW_SPECS[row]:
        total = total + u_unified(
            mol_a, mol_b, sep, tup, provider=provider, spec=spec,
            beta_mode_a=mode_a, beta_mode_b=mode_b)
    return total


# ---------------------------------------------------------------------------
# Direct single-trace forms of the chiral components.  The frequency powers
# of the cross responses and cross blocks cancel analytically, leaving
# division-free integrands valid for any provider and finite at xi = 0.
# ---------------------------------------------------------------------------

def _direct_quadrature(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                       provider, spec: Optional[QuadSpec],
                       integrand: Callable) -> QuadResult:
    if spec is None:
        spec = _default_spec(sep.R)
    breaks = _default_breakpoints(mol_a, mol_b, sep.R)
    return integrate_halfline(integrand, spec, breakpoints=breaks)


def u_ec_direct(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                provider=None, spec: Optional[QuadSpec] = None) -> QuadResult:
    """Electric-chiral component as a single combined trace."""
    if provider is None:
        provider = free_space_provider()
    r_a, r_b = sep.r_a, sep.r_b

    def integrand(xis):
        xis = np.atleast_1d(np.asarray(xis, dtype=float))
        alpha_a, _, _, _ = response_arrays(mol_a, xis)
        _, _, chi_em_b, _ = response_arrays(mol_b, xis)
        bee = _provider_blocks(provider, "e", "e", r_a, r_b, xis)
        bem = _provider_blocks(provider, "e", "m", r_b, r_a, xis)
        return (1.0 / _PI) * kernels.trace4(
            np.ascontiguousarray(alpha_a), bee,
            np.ascontiguousarray(chi_em_b), bem)

    return _direct_quadrature(mol_a, mol_b, sep, provider, spec, integrand)


def _u_mc_direct_mode(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                      provider, spec: Optional[QuadSpec],
                      beta_mode_a: str) -> QuadResult:
    if provider is None:
        provider = free_space_provider()
    r_a, r_b = sep.r_a, sep.r_b

    def integrand(xis):
        xis = np.atleast_1d(np.asarray(xis, dtype=float))
        _, beta_a, _, _ = response_arrays(mol_a, xis, beta_mode_a)
        _, _, _, chi_me_b = response_arrays(mol_b, xis)
        bmm = _provider_blocks(provider, "m", "m", r_a, r_b, xis)
        bme = _provider_blocks(provider, "m", "e", r_b, r_a, xis)
        return (1.0 / _PI) * kernels.trace4(
            np.ascontiguousarray(beta_a), bmm,
            np.ascontiguousarray(chi_me_b), bme)

    return _direct_quadrature(mol_a, mol_b, sep, provider, spec, integrand)


def u_mc_direct(mol_a, mol_b, sep, provider=None, spec=None) -> QuadResult:
    """Magnetic-chiral component as a single combined trace."""
    return _u_mc_direct_mode(mol_a, mol_b, sep, provider, spec, "full")


def u_pc_direct(mol_a, mol_b, sep, provider=None, spec=None) -> QuadResult:
    """Paramagnetic-chiral component as a single combined trace."""
    return _u_mc_direct_mode(mol_a, mol_b, sep, provider, spec, "para")


def u_dc_direct(mol_a, mol_b, sep, provider=None, spec=None) -> QuadResult:
    """Diamagnetic-chiral component as a single combined trace."""
    return _u_mc_direct_mode(mol_a, mol_b, sep, provider, spec, "dia")


def u_cc_direct(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                provider=None, spec: Optional[QuadSpec] = None) -> QuadResult:
    """Chiral-chiral component as two combined traces."""
    if provider is None:
        provider = free_space_provider()
    r_a, r_b = sep.r_a, sep.r_b

    def integrand(xis):
        xis = np.atleast_1d(np.asarray(xis, dtype=float))
        _, _, chi_em_a, _ = response_arrays(mol_a, xis)
        _, _, chi_em_b, chi_me_b = response_arrays(mol_b, xis)
        bmm = _provider_blocks(provider, "m", "m", r_a, r_b, xis)
        bee = _provider_blocks(provider, "e", "e", r_b, r_a, xis)
        bem_ab = _provider_blocks(provider, "e", "m", r_a, r_b, xis)
        bem_ba = _provider_blocks(provider, "e", "m", r_b, r_a, xis)
        ca = np.ascontiguousarray(chi_em_a)
        term1 = kernels.trace4(ca, bmm, np.ascontiguousarray(chi_me_b), bee)
        term2 = kernels.trace4(ca, bem_ab, np.ascontiguousarray(chi_em_b),
                               bem_ba)
        return -(1.0 / _PI) * (term1 + term2)

    return _direct_quadrature(mol_a, mol_b, sep, provider, spec, integrand)


# ---------------------------------------------------------------------------
# Closed free-space kernels: the frequency integral reduced analytically to
# one exponentially damped radial integral (no provider, vacuum only).
# ---------------------------------------------------------------------------

_FREE_FAST_LABELS = (ComponentLabel.EC, ComponentLabel.MC, ComponentLabel.CC)


def _free_fast_ec_mc(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                     spec: QuadSpec, magnetic: bool) -> QuadResult:
    R = sep.R
    rhat = sep.r_hat
    proj = np.outer(rhat, rhat)
    eye = np.eye(3)
    m1 = eye - proj
    m2 = eye - 2.0 * proj
    m3 = eye - 3.0 * proj
    sig = "ipq,q,nij,npr,jr->n" if magnetic else "ipq,q,nij,nrp,jr->n"
    pref = 1.0 / (16.0 * _PI**3)

    def integrand(ks):
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        alpha_a, beta_a, _, _ = response_arrays(mol_a, ks)
        _, _, chi_b, _ = response_arrays(mol_b, ks)
        tensor_a = beta_a if magnetic else alpha_a
        e1 = np.einsum(sig, _EPS, rhat, tensor_a, chi_b, m1)
        e2 = np.einsum(sig, _EPS, rhat, tensor_a, chi_b, m2)
        e3 = np.einsum(sig, _EPS, rhat, tensor_a, chi_b, m3)
        radial = (ks**4 / R**2 * e1 + 2.0 * ks**3 / R**3 * e2
                  + (2.0 * ks**2 / R**4 + ks / R**5) * e3)
        return pref * np.exp(-2.0 * ks * R) * radial

    breaks = _default_breakpoints(mol_a, mol_b, R)
    return integrate_halfline(integrand, spec, breakpoints=breaks)


def _cc_angular_tensors(rhat: np.ndarray):
    eye = np.eye(3)
    proj = np.outer(rhat, rhat)
    m3 = eye - 3.0 * proj
    t1 = np.einsum("jq,ip->jqip", m3, m3)
    dd = np.einsum("jq,ip->jqip", eye, eye)
    d_rr = (np.einsum("jq,ip->jqip", eye, proj)
            + np.einsum("jq,ip->jqip", proj, eye))
    rrrr = np.einsum("jq,ip->jqip", proj, proj)
    epseps = np.einsum("jrp,qsi,r,s->jqip", _EPS, _EPS, rhat, rhat)
    t2 = 3.0 * dd - 7.0 * d_rr + 15.0 * rrrr + epseps
    t3 = 2.0 * dd - 4.0 * d_rr + 6.0 * rrrr + 2.0 * epseps
    t4 = dd - d_rr + rrrr + epseps
    return t1, t2, t3, t4


def _free_fast_cc(mol_a: Molecule, mol_b: Molecule, sep: Separation,
                  spec: QuadSpec) -> QuadResult:
    R = sep.R
    t1, t2, t3, t4 = _cc_angular_tensors(sep.r_hat)
    pref = 1.0 / (16.0 * _PI**3)

    def integrand(ks):
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        _, _, chi_a, _ = response_arrays(mol_a, ks)
        _, _, chi_b, _ = response_arrays(mol_b, ks)
        v1 = np.einsum("nij,npq,jqip->n", chi_a, chi_b, t1)
        v2 = np.einsum("nij,npq,jqip->n", chi_a, chi_b, t2)
        v3 = np.einsum("nij,npq,jqip->n", chi_a, chi_b, t3)
        v4 = np.einsum("nij,npq,jqip->n", chi_a, chi_b, t4)
        radial = ((1.0 / R**6 + 2.0 * ks / R**5) * v1 + ks**2 / R**4 * v2
                  + ks**3 / R**3 * v3 + ks**4 / R**2 * v4)
        return pref * np.exp(-2.0 * ks * R) * radial

    breaks = _default_breakpoints(mol_a, mol_b, R)
    return integrate_halfline(integrand, spec, breakpoints=breaks)


def u_free_fast(mol_a: Molecule, mol_b: Molecule, sep: Separation, label,
                spec: Optional[QuadSpec] = None) -> QuadResult:
    """Closed vacuum form of a chiral component (EC, MC or CC).

    The frequency integral over the two cross blocks has been carried out
    against the explicit vacuum Green tensor, leaving a single radial
    integral; faster and better conditioned than the provider path, but
    valid in free space only.
    """
    label = ComponentLabel(label)
    if label not in _FREE_FAST_LABELS:
        raise ValueError(
            f"closed free-space form exists for EC, MC, CC only, got "
            f"{label.value}")
    if spec is None:
        spec = _default_spec(sep.R)
    if label is ComponentLabel.CC:
        return _free_fast_cc(mol_a, mol_b, sep, spec)
    return _free_fast_ec_mc(mol_a, mol_b, sep, spec,
                            magnetic=(label is ComponentLabel.MC))


def _isotropic_rotatory(mol: Molecule, ks: np.ndarray) -> np.ndarray:
    """Isotropically averaged cross-response scalar chi(i k).

    For each transition the average of d m~^T over orientations is
    (d . m~)/3 times the identity; the scalar response is then
    chi(ik) = (2k/3) sum_t (d_t . m~_t) / (omega_t^2 + k^2).
    """
    out = np.zeros_like(ks)
    for t in mol.transitions:
        out += (2.0 * ks / 3.0) * float(np.dot(t.d, t.m_tilde)) / (
            t.omega**2 + ks**2)
    return out


def u_cc_isotropic(mol_a: Molecule, mol_b: Molecule, R: float,
                   spec: Optional[QuadSpec] = None) -> QuadResult:
    """Chiral-chiral potential for orientation-averaged molecules.

    Uses the reduced scalar kernel
    U = (1 / 8 pi^3 R^6) Int dk e^{-2 k R} chi_a chi_b (3 + 6 k R + 4 k^2 R^2)
    with the isotropic rotatory scalars chi(ik); depends only on the
    distance R.
    """
    R = float(R)
    if not (math.isfinite(R) and R > 0.0):
        raise ValueError("R must be positive and finite")
    if spec is None:
        spec = _default_spec(R)
    pref = 1.0 / (8.0 * _PI**3 * R**6)

    def integrand(ks):
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        chi_a = _isotropic_rotatory(mol_a, ks)
        chi_b = _isotropic_rotatory(mol_b, ks)
        kr = ks * R
        return pref * np.exp(-2.0 * kr) * chi_a * chi_b * (
            3.0 + 6.0 * kr + 4.0 * kr**2)

    breaks = _default_breakpoints(mol_a, mol_b, R)
    return integrate_halfline(integrand, spec, breakpoints=breaks)


# ---------------------------------------------------------------------------
# Curves over separation grids.
# ---------------------------------------------------------------------------

def resolve_component(name) -> Tuple[str, str]:
    """Classify a component request.

    Returns ``('label', value)`` for named components, ``('row', value)``
    for two-sided tabulation rows (EP, ED, PP, PD, DD), or
    ``('tuple', value)`` for a raw four-label tuple such as 'eeme'.  Names
    shared by both tables (EE, EC, PC, DC, CC) resolve to the named
    component.
    """
    if isinstance(name, ComponentLabel):
        return "label", name.value
    text = str(name)
    if len(text) == 4 and set(text) <= {"e", "m"}:
        return "tuple", text
    upper = text.upper()
    try:
        return "label", ComponentLabel(upper).value
    except ValueError:
        pass
    if upper in ROW_SPECS:
        return "row", upper
    raise ValueError(
        f"unknown component {name!r}: expected a named component "
        f"({', '.join(l.value for l in ComponentLabel)}), a tabulation row "
        f"({', '.join(ROW_NAMES)}), or a four-label tuple like 'eeme'")


def compute_curve(mol_a: Molecule, mol_b: Molecule, orientation,
                  r_values, component, provider=None,
                  spec: Optional[QuadSpec] = None) -> PotentialCurve:
    """Potential over a grid of separations along a fixed direction.

    Molecule B sits at the origin and molecule A at R times the normalised
    ``orientation`` vector for each R in ``r_values``.  ``component``
    accepts a named component, a tabulation row, or a raw tuple.
    """
    direction = np.asarray(orientation, dtype=float).reshape(-1)
    if direction.shape != (3,) or not np.all(np.isfinite(direction)):
        raise ValueError("orientation must be a finite 3-vector")
    norm = float(np.linalg.norm(direction))
    if norm <= 0.0:
        raise ValueError("orientation must be non-zero")
    direction = direction / norm

    r_values = np.asarray(r_values, dtype=float).reshape(-1)
    if r_values.size == 0:
        raise ValueError("r_values must be non-empty")
    if not np.all(np.isfinite(r_values)) or np.any(r_values <= 0.0):
        raise ValueError("r_values must be positive and finite")

    kind, key = resolve_component(component)
    origin = np.zeros(3)
    us = np.empty_like(r_values)
    errs = np.empty_like(r_values)
    conv = np.empty(r_values.shape, dtype=bool)
    for i, R in enumerate(r_values):
        sep = Separation(R * direction, origin)
        if kind == "label":
            res = u_named(mol_a, mol_b, sep, key, provider=provider,
                          spec=spec)
        elif kind == "row":
            res = u_row(mol_a, mol_b, sep, key, provider=provider, spec=spec)
        else:
            res = u_unified(mol_a, mol_b, sep, key, provider=provider,
                            spec=spec)
        us[i] = res.value
        errs[i] = res.error_estimate
        conv[i] = res.converged
    return PotentialCurve(component=key, r_values=r_values, u_values=us,
                          error_estimates=errs, converged=conv)
