"""Tests for the pair-potential assembly."""

import math

import numpy as np
import pytest

import oracles
from chivdw.green import FreeSpaceProvider, Separation
from chivdw.potentials import (
    ComponentLabel,
    LABEL_TUPLES,
    ROW_NAMES,
    PotentialCurve,
    compute_curve,
    resolve_component,
    u_cc_direct,
    u_cc_isotropic,
    u_dc_direct,
    u_ec_direct,
    u_free_fast,
    u_mc_direct,
    u_named,
    u_pc_direct,
    u_row,
    u_unified,
)
from chivdw.quad import QuadSpec
from chivdw.response import Molecule, Transition

EYE = np.eye(3)


def generic_molecule(seed, n=2, dia_scale=0.03):
    rng = np.random.default_rng(seed)
    trs = tuple(
        Transition(float(rng.uniform(0.5, 2.5)), rng.normal(size=3),
                   rng.normal(size=3))
        for _ in range(n)
    )
    m = rng.normal(size=(3, 3))
    return Molecule(f"mol{seed}", trs, beta_dia=-(m @ m.T) * dia_scale)


def isotropic_molecule(name, omega, d_scale, m_scale):
    return Molecule(name, tuple(
        Transition(omega, d_scale * EYE[i], m_scale * EYE[i])
        for i in range(3)))


@pytest.fixture(scope="module")
def pair():
    return generic_molecule(1), generic_molecule(2)


@pytest.fixture(scope="module")
def sep():
    return Separation(1.7 * np.array([2.0, 2.0, 1.0]) / 3.0, np.zeros(3))


class TestLabelTables:
    def test_tuple_counts(self):
        assert len(LABEL_TUPLES[ComponentLabel.TOTAL]) == 16
        assert len(LABEL_TUPLES[ComponentLabel.CC]) == 4
        flat = [t for lab in ("EE", "EM", "ME", "MM", "EC", "CE", "MC", "CM",
                              "CC")
                for t in LABEL_TUPLES[ComponentLabel(lab)]]
        assert sorted(flat) == sorted(LABEL_TUPLES[ComponentLabel.TOTAL])

    def test_resolver(self):
        assert resolve_component("EE") == ("label", "EE")
        assert resolve_component(ComponentLabel.CC) == ("label", "CC")
        assert resolve_component("total") == ("label", "TOTAL")
        assert resolve_component("EP") == ("row", "EP")
        assert resolve_component("pd") == ("row", "PD")
        assert resolve_component("eeme") == ("tuple", "eeme")
        with pytest.raises(ValueError, match="unknown component"):
            resolve_component("XY")

    def test_invalid_tuple_rejected(self, pair, sep):
        with pytest.raises(ValueError):
            u_unified(*pair, sep, "eexm")
        with pytest.raises(ValueError):
            u_unified(*pair, sep, "eee")


class TestDirectFormsAgree:
    def test_ec(self, pair, sep):
        u = u_named(*pair, sep, "EC")
        d = u_ec_direct(*pair, sep)
        assert u.value == pytest.approx(d.value, rel=1e-10)

    def test_pc_dc_mc(self, pair, sep):
        for label, direct in (("PC", u_pc_direct), ("DC", u_dc_direct),
                              ("MC", u_mc_direct)):
            u = u_named(*pair, sep, label)
            d = direct(*pair, sep)
            assert u.value == pytest.approx(d.value, rel=1e-10), label

    def test_cc(self, pair, sep):
        u = u_named(*pair, sep, "CC")
        d = u_cc_direct(*pair, sep)
        assert u.value == pytest.approx(d.value, rel=1e-10)

    def test_mc_splits_into_pc_plus_dc(self, pair, sep):
        mc = u_named(*pair, sep, "MC").value
        pc = u_named(*pair, sep, "PC").value
        dc = u_named(*pair, sep, "DC").value
        assert mc == pytest.approx(pc + dc, rel=1e-12)

    def test_free_fast_matches_direct(self, pair, sep):
        for label, direct in (("EC", u_ec_direct), ("MC", u_mc_direct),
                              ("CC", u_cc_direct)):
            f = u_free_fast(*pair, sep, label)
            d = direct(*pair, sep)
            assert f.value == pytest.approx(d.value, rel=1e-10), label

    def test_free_fast_random_configurations(self):
        rng = np.random.default_rng(99)
        for trial in range(6):
            a = generic_molecule(100 + trial)
            b = generic_molecule(200 + trial)
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            R = float(rng.uniform(0.8, 4.0))
            s = Separation(R * direction, np.zeros(3))
            for label, direct in (("EC", u_ec_direct), ("MC", u_mc_direct),
                                  ("CC", u_cc_direct)):
                f = u_free_fast(a, b, s, label)
                d = direct(a, b, s)
                scale = max(abs(f.value), abs(d.value), 1e-30)
                assert abs(f.value - d.value) <= 1e-10 * scale

    def test_free_fast_rejects_other_labels(self, pair, sep):
        with pytest.raises(ValueError, match="EC, MC, CC"):
            u_free_fast(*pair, sep, "EE")


class TestRowDecomposition:
    def test_rows_sum_to_total(self, pair, sep):
        total = u_named(*pair, sep, "TOTAL")
        rows = sum(u_row(*pair, sep, r).value for r in ROW_NAMES)
        assert rows == pytest.approx(total.value, rel=1e-11)

    def test_ep_plus_ed_equals_em_plus_me(self, pair, sep):
        lhs = u_row(*pair, sep, "EP").value + u_row(*pair, sep, "ED").value
        rhs = (u_named(*pair, sep, "EM").value
               + u_named(*pair, sep, "ME").value)
        assert lhs == pytest.approx(rhs, rel=1e-11)

    def test_unknown_row_rejected(self, pair, sep):
        with pytest.raises(ValueError, match="unknown row"):
            u_row(*pair, sep, "XX")


class TestSymmetries:
    def test_molecule_swap_exchanges_tuple_slots(self, pair, sep):
        a, b = pair
        swapped = Separation(sep.r_b, sep.r_a)
        # relabeling the molecules maps component EM -> ME and EC -> CE
        assert u_named(a, b, sep, "EM").value == pytest.approx(
            u_named(b, a, swapped, "ME").value, rel=1e-10)
        assert u_named(a, b, sep, "EC").value == pytest.approx(
            u_named(b, a, swapped, "CE").value, rel=1e-10)
        assert u_named(a, b, sep, "TOTAL").value == pytest.approx(
            u_named(b, a, swapped, "TOTAL").value, rel=1e-10)

    def test_enantiomer_flips_odd_components(self, pair, sep):
        a, b = pair
        b_mirror = b.enantiomer()
        for label in ("EC", "PC", "DC", "MC", "CC"):
            flipped = u_named(a, b_mirror, sep, label).value
            assert flipped == pytest.approx(
                -u_named(a, b, sep, label).value, rel=1e-10), label
        for label in ("EE", "EM", "MM"):
            same = u_named(a, b_mirror, sep, label).value
            assert same == pytest.approx(
                u_named(a, b, sep, label).value, rel=1e-10), label

    def test_double_mirror_restores_cc(self, pair, sep):
        a, b = pair
        cc = u_named(a, b, sep, "CC").value
        cc_mm = u_named(a.enantiomer(), b.enantiomer(), sep, "CC").value
        assert cc_mm == pytest.approx(cc, rel=1e-10)

    def test_duality_invariance_of_total(self, pair, sep):
        base = u_named(*pair, sep, "TOTAL").value
        for theta in (math.pi / 7, math.pi / 4):
            rot = u_named(*pair, sep, "TOTAL", duality=theta).value
            assert rot == pytest.approx(base, rel=1e-11), theta

    def test_quarter_turn_maps_ee_to_mm(self, pair, sep):
        # the quarter-turn block swap is exact (snapped cos/sin), so the
        # integrands and hence the quadrature results match bitwise
        assert u_named(*pair, sep, "EE", duality=math.pi / 2).value == \
            u_named(*pair, sep, "MM").value
        assert u_named(*pair, sep, "EC", duality=math.pi / 2).value == \
            u_named(*pair, sep, "MC").value

    def test_duality_with_restricted_component_rejected(self, pair, sep):
        with pytest.raises(ValueError, match="duality"):
            u_named(*pair, sep, "PC", duality=0.3)


class TestZeroAndIsotropic:
    def test_empty_molecule_gives_exact_zero(self, sep):
        empty = Molecule("none", ())
        other = generic_molecule(5)
        res = u_named(empty, other, sep, "TOTAL")
        assert res.value == 0.0
        assert res.converged

    def test_isotropic_chiral_components_vanish(self):
        a = isotropic_molecule("ia", 1.0, 0.8, 0.3)
        b = isotropic_molecule("ib", 1.4, 0.5, -0.6)
        s = Separation(np.array([0.0, 0.0, 2.0]), np.zeros(3))
        ee = u_named(a, b, s, "EE").value
        assert abs(u_named(a, b, s, "EC").value) <= 1e-12 * abs(ee)
        assert abs(u_named(a, b, s, "MC").value) <= 1e-12 * abs(ee)

    def test_isotropic_cc_matches_reduced_kernel(self):
        a = isotropic_molecule("ia", 1.0, 0.8, 0.3)
        b = isotropic_molecule("ib", 1.4, 0.5, -0.6)
        s = Separation(np.array([0.0, 0.0, 2.0]), np.zeros(3))
        full = u_named(a, b, s, "CC").value
        reduced = u_cc_isotropic(a, b, 2.0).value
        assert full == pytest.approx(reduced, rel=1e-10)

    def test_reduced_kernel_vs_scipy_oracle(self):
        a = Molecule("a1", (Transition(1.0, 0.9 * EYE[0], 0.4 * EYE[0]),))
        b = Molecule("b1", (Transition(1.3, 0.7 * EYE[1], -0.5 * EYE[1]),))
        mine = u_cc_isotropic(a, b, 3.0).value
        reference = oracles.cc_isotropic_reduced(
            1.0, 0.9 * 0.4 / 3.0, 1.3, 0.7 * (-0.5) / 3.0, 3.0)
        assert mine == pytest.approx(reference, rel=1e-9)

    def test_isotropic_cc_orientation_independent(self):
        a = isotropic_molecule("ia", 1.0, 0.8, 0.3)
        b = isotropic_molecule("ib", 1.4, 0.5, -0.6)
        vals = []
        for direction in ([0, 0, 1.0], [1.0, 0, 0], [1.0, 1.0, 1.0]):
            n = np.asarray(direction) / np.linalg.norm(direction)
            vals.append(u_named(a, b, Separation(2.0 * n, np.zeros(3)),
                                "CC").value)
        assert vals[1] == pytest.approx(vals[0], rel=1e-11)
        assert vals[2] == pytest.approx(vals[0], rel=1e-11)


class TestToyPairOracle:
    def test_ec_against_trapezoid_oracle(self):
        # single-transition toy pair with known closed kernel, checked
        # against a dense-grid trapezoid evaluation (independent oracle)
        a = Molecule("toyA", (Transition(1.0, EYE[0], np.zeros(3)),))
        b = Molecule("toyB", (Transition(1.0, EYE[1], EYE[2]),))
        rvec = 10.0 * np.array([2.0, 2.0, 1.0]) / 3.0
        s = Separation(rvec, np.zeros(3))
        mine = u_free_fast(a, b, s, "EC").value
        reference = oracles.ec_free_trapezoid(
            omega_a=1.0, d_a=EYE[0], omega_b=1.0, d_b=EYE[1], m_b=EYE[2],
            rvec=rvec)
        assert mine == pytest.approx(reference, rel=1e-8)


class TestCurves:
    def test_curve_shapes_and_decay(self, pair):
        rs = np.array([1.0, 1.5, 2.2, 3.0])
        curve = compute_curve(*pair, [0.0, 0.0, 1.0], rs, "EE")
        assert isinstance(curve, PotentialCurve)
        assert len(curve) == 4
        assert curve.component == "EE"
        assert np.all(curve.converged)
        assert np.all(curve.u_values < 0.0)
        assert np.all(np.diff(np.abs(curve.u_values)) < 0.0)

    def test_curve_row_component(self, pair):
        rs = np.array([1.2, 2.0])
        curve = compute_curve(*pair, [1.0, 0.0, 0.0], rs, "EP")
        ref = [u_row(*pair, Separation([float(r), 0, 0], np.zeros(3)),
                     "EP").value for r in rs]
        np.testing.assert_allclose(curve.u_values, ref, rtol=1e-12)

    def test_curve_tuple_component(self, pair):
        rs = np.array([1.5])
        curve = compute_curve(*pair, [0.0, 1.0, 0.0], rs, "eeme")
        ref = u_unified(*pair, Separation([0, 1.5, 0], np.zeros(3)), "eeme")
        assert curve.u_values[0] == pytest.approx(ref.value, rel=1e-12)

    def test_curve_input_validation(self, pair):
        with pytest.raises(ValueError):
            compute_curve(*pair, [0.0, 0.0, 0.0], [1.0], "EE")
        with pytest.raises(ValueError):
            compute_curve(*pair, [0.0, 0.0, 1.0], [], "EE")
        with pytest.raises(ValueError):
            compute_curve(*pair, [0.0, 0.0, 1.0], [-1.0], "EE")

    def test_env_override_rel_tol(self, pair, monkeypatch):
        monkeypatch.setenv("VDW_QUAD_RTOL", "1e-4")
        sep_local = Separation([0.0, 0.0, 1.3], np.zeros(3))
        loose = u_named(*pair, sep_local, "EE")
        monkeypatch.setenv("VDW_QUAD_RTOL", "not-a-number")
        with pytest.raises(ValueError, match="VDW_QUAD_RTOL"):
            u_named(*pair, sep_local, "EE")
        monkeypatch.delenv("VDW_QUAD_RTOL")
        tight = u_named(*pair, sep_local, "EE")
        assert loose.evals < tight.evals
        assert loose.value == pytest.approx(tight.value, rel=1e-3)


class TestProviderContract:
    def test_scalar_only_provider_supported(self, pair, sep):
        base = FreeSpaceProvider()

        class ScalarOnly:
            def block(self, lam, lamp, r, rp, xi):
                if not np.isscalar(xi) and np.ndim(xi) != 0:
                    raise TypeError("scalar frequencies only")
                return base.block(lam, lamp, r, rp, float(xi))

        fast = u_named(*pair, sep, "EC")
        slow = u_named(*pair, sep, "EC", provider=ScalarOnly())
        assert slow.value == pytest.approx(fast.value, rel=1e-12)

    def test_rescaled_provider_rescales_quadratically(self, pair, sep):
        base = FreeSpaceProvider()

        class Doubled:
            def block(self, lam, lamp, r, rp, xi):
                return 2.0 * base.block(lam, lamp, r, rp, xi)

        one = u_named(*pair, sep, "TOTAL")
        four = u_named(*pair, sep, "TOTAL", provider=Doubled())
        assert four.value == pytest.approx(4.0 * one.value, rel=1e-11)
