import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrcert import functionals as fn
from bohrcert import multidim as md
from bohrcert import schur
from bohrcert import series as ps
from bohrcert.errors import (
    DegenerateDirection,
    ParameterOutOfRange,
    ShapeMismatch,
    UnknownTheorem,
)

E1 = md.Direction(np.array([1.0, 0.0, 0.0]), 2.0)


class TestLtNorm:
    def test_euclidean(self):
        assert md.lt_norm([3.0, 4.0], 2.0) == pytest.approx(5.0)

    def test_sup(self):
        assert md.lt_norm([1.0, 1.0], math.inf) == pytest.approx(1.0)

    def test_l1(self):
        assert md.lt_norm([0.5, 0.5], 1.0) == pytest.approx(1.0)

    def test_t_below_one(self):
        with pytest.raises(ParameterOutOfRange):
            md.lt_norm([1.0], 0.5)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.complex_numbers(max_magnitude=1.0, allow_nan=False,
                                       allow_infinity=False),
                    min_size=1, max_size=6),
           st.floats(min_value=1.0, max_value=30.0),
           st.floats(min_value=0.0, max_value=30.0))
    def test_nonincreasing_in_t(self, v, t1, dt):
        assert md.lt_norm(v, t1 + dt) <= md.lt_norm(v, t1) + 1e-9

    def test_t64_close_to_sup(self):
        # near-ties of the max keep the 64-norm measurably above the sup
        # norm, so draw with a modulus gap
        rng = np.random.default_rng(0)
        for _ in range(50):
            mods = np.concatenate([[1.0], rng.uniform(0.05, 0.9, 4)])
            v = mods * np.exp(2j * np.pi * rng.uniform(size=5))
            assert abs(md.lt_norm(v, 64.0) - md.lt_norm(v, math.inf)) < 1e-2


class TestDirection:
    def test_normalization_invariant(self):
        with pytest.raises(ParameterOutOfRange):
            md.Direction(np.array([1.0, 1.0]), 2.0)
        d = md.Direction.normalized([1.0, 1.0], 2.0)
        assert md.lt_norm(d.z0, 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_random_deterministic(self):
        a = md.random_direction(3, 4, 2.0)
        b = md.random_direction(3, 4, 2.0)
        assert np.array_equal(a.z0, b.z0)

    def test_sup_norm_inf_direction(self):
        d = md.random_direction(5, 4, math.inf)
        assert d.sup_norm == pytest.approx(1.0, abs=1e-12)


class TestSliceFromDirection:
    def test_monomial_slice(self):
        s = md.slice_from_direction("SharpThm41", E1, 8, m=1, p=1)
        h1 = s.components[0]
        assert h1.coeffs[2] == pytest.approx(1.0)
        assert np.abs(np.delete(h1.coeffs, 2)).max() == 0.0
        for h in s.components[1:]:
            assert np.abs(h.coeffs).max() == 0.0

    def test_mobius_slice_coefficients(self):
        s = md.slice_from_direction("SharpThm34", E1, 64, a=0.5, m=1, p=1)
        h1 = s.components[0]
        assert np.allclose(h1.coeffs.real[1:4], [0.5, -0.75, -0.375], atol=1e-13)

    def test_rotated_direction_moduli(self):
        # first coordinate on a ray: coefficient moduli match the e1 slice
        z0 = md.Direction.normalized([1j, 0.0], 2.0)
        s = md.slice_from_direction("SharpThm34", z0, 64, a=0.5, m=1, p=2)
        nu = md.frechet_norms(s, 1.0)
        assert nu[0] == pytest.approx(0.5)
        assert nu[1] == pytest.approx(0.75)
        assert nu[2] == pytest.approx(0.375)

    def test_general_zg_constant(self):
        c = 0.3 + 0.4j
        z0 = md.Direction.normalized([1.0, 1j], 2.0)
        s = md.slice_from_direction("GeneralZG", z0, 6, m=1, p=1,
                                    g=ps.constant(c, 4, abs(c)))
        for j, h in enumerate(s.components):
            assert h.coeffs[1] == pytest.approx(c * z0.z0[j])

    def test_degenerate_direction(self):
        z0 = md.Direction(np.array([0.0, 1.0]), 2.0)
        with pytest.raises(DegenerateDirection):
            md.slice_from_direction("SharpThm34", z0, 16, a=0.5, m=1, p=1)

    def test_zg_shape_validation(self):
        z0 = md.Direction.normalized([1.0, 1.0], 2.0)
        bad_g = ps.from_coeffs([0.5, 0.5, 0.0, 0.0], 1.0)  # not (1,2)-compatible
        with pytest.raises(ShapeMismatch):
            md.slice_from_direction("GeneralZG", z0, 4, m=2, p=2, g=bad_g)


class TestFrechetNorms:
    def test_monomial_norms(self):
        s = md.slice_from_direction("SharpThm41", E1, 8, m=1, p=1)
        nu = md.frechet_norms(s, 0.5)
        assert nu[1] == pytest.approx(0.25)
        assert np.abs(np.delete(nu, 1)).max() == 0.0

    def test_zero_mapping(self):
        z = ps.zero(6)
        s = md.SliceMapping((z, z), 1, 2, 2.0)
        assert np.abs(md.frechet_norms(s, 0.7)).max() == 0.0

    def test_single_component_equals_moduli(self):
        phi = schur.sample_schur(3, 4, 32)
        g = ps.monomial_lift(phi, 0, 2)  # lambda^(m-1) phi(lambda^p), m=1, p=2
        one_dir = md.Direction(np.array([1.0]), 2.0)
        s = md.slice_from_direction("GeneralZG", one_dir, g.order + 1, m=1, p=2, g=g)
        nu = md.frechet_norms(s, 1.0)
        assert np.allclose(nu, np.abs(phi.coeffs), atol=1e-15)


class TestVectorCheck:
    def test_thm34_at_root(self):
        s = md.slice_from_direction("SharpThm34", E1, 512, a=0.5, m=1, p=1)
        chk = md.vector_check("Thm34", s, 1.0 / math.sqrt(2.0))
        assert chk.lhs == pytest.approx(1.0, abs=1e-12)

    def test_thm41_violated_above_radius(self):
        s = md.slice_from_direction("SharpThm41", E1, 8, m=1, p=1)
        chk = md.vector_check("Thm41", s, 0.8)
        assert chk.lhs == pytest.approx(0.64 / 0.36, abs=1e-12)
        assert not chk.satisfied

    def test_cor42_value(self):
        # slice of z * (a - z1)/(1 - a z1) along e1 at a = 0.5, r = 0.2;
        # hand-derived closed form: a r + (1-a^2) r^2/(1-a r)
        #   + (1/(r(1+a)) + 1/(1-r)) (1-a^2)^2 r^4 / (1-a^2 r^2) = 11/80
        s = md.slice_from_direction("SharpCor42", E1, 400, a=0.5)
        chk = md.vector_check("Cor42", s, 0.2)
        assert chk.lhs == pytest.approx(0.1375, abs=1e-12)
        assert chk.satisfied

    def test_zg_ids_reject_m0(self):
        phi = schur.sample_schur(5, 4, 64)
        one_dir = md.Direction(np.array([1.0]), 2.0)
        s = md.SliceMapping((ps.monomial_lift(phi, 0, 1),), 0, 1, 2.0)
        for tid in ("Thm34", "Thm41", "Cor43", "Lem21"):
            with pytest.raises(ShapeMismatch):
                md.vector_check(tid, s, 0.4)

    def test_unknown_id(self):
        s = md.slice_from_direction("SharpThm41", E1, 8, m=1, p=1)
        with pytest.raises(UnknownTheorem):
            md.vector_check("ThmB", s, 0.3)

    def test_n1_matches_scalar(self):
        # single-component slices reproduce the scalar evaluation exactly
        one_dir = md.Direction(np.array([1.0]), 2.0)
        for seed, (m, p) in enumerate([(1, 1), (1, 3), (2, 3)]):
            phi = schur.sample_schur(seed + 60, 5, 512)
            g = ps.monomial_lift(phi, m - 1, p)
            s = md.slice_from_direction("GeneralZG", one_dir, g.order + 1,
                                        m=m, p=p, g=g)
            prof = fn.LacunaryProfile(m, p, np.abs(phi.coeffs))
            for tid in ("Thm34", "Thm41", "Cor43"):
                for r in (0.3, 0.6):
                    a = md.vector_check(tid, s, r)
                    b = fn.evaluate_theorem(tid, prof, r)
                    assert abs(a.lhs - b.lhs) < 1e-14
                    assert a.rhs == b.rhs

    def test_lemma21_bound_holds(self):
        # 60 seeded z*g slices across three norms, grid to 0.95
        grid = np.arange(0.05, 0.951, 0.05)
        count = 0
        for t in (1.0, 2.0, math.inf):
            for seed in range(20):
                m, p = [(1, 1), (1, 3), (2, 3)][seed % 3]
                phi = schur.sample_schur(seed + 100, 5, 512)
                z0 = md.random_direction(seed, 4, t)
                g = ps.monomial_lift(phi, m - 1, p)
                s = md.slice_from_direction("GeneralZG", z0, g.order + 1,
                                            m=m, p=p, g=g)
                nu = md.frechet_norms(s, 1.0)
                lhs, rhs = md.lemma21_margins(nu, m, p, grid)
                assert (rhs - lhs).min() >= -1e-9
                count += 1
        assert count == 60


class TestSharpnessScan:
    def test_thm32_anchor_grid(self):
        grid = md.default_scan_grid(400)
        assert md.sharpness_scan("Thm32", 1, 0, 0.6, grid) == pytest.approx(
            1.0, abs=1e-12
        )
        assert md.sharpness_scan("Thm32", 1, 0, 0.65, grid) == pytest.approx(
            1.2946, abs=1e-3
        )
        assert md.sharpness_scan("Thm32", 1, 0, 0.55, grid) == pytest.approx(
            0.7847, abs=1e-3
        )

    def test_thm32_bracketing(self):
        from bohrcert import radius as rd

        grid = md.default_scan_grid(400)
        for (p, m) in [(1, 0), (2, 1), (3, 3)]:
            rstar = rd.solve_radius(rd.RadiusSpec("Thm32", p, m))
            assert md.sharpness_scan("Thm32", p, m, rstar - 0.02, grid) <= 1.0
            assert md.sharpness_scan("Thm32", p, m, rstar + 0.02, grid) > 1.0

    def test_family_scans_flat_value(self):
        # the lifted automorphism family gives r^(p+m)/(1-r^2p) regardless
        # of the parameter, so scans cross 1 exactly at the sharp radius
        grid = np.linspace(0.0, 0.95, 40)
        for (p, m, r) in [(1, 0, 0.45), (1, 1, 0.62), (3, 2, 0.8)]:
            got = md.sharpness_scan("Thm34", p, m, r, grid)
            want = r ** (p + m) / (1.0 - r ** (2 * p))
            assert got == pytest.approx(want, abs=1e-11)

    def test_thm31_requires_s(self):
        with pytest.raises(ParameterOutOfRange):
            md.sharpness_scan("Thm31", 1, 0, 0.3, [0.5])

    def test_unknown(self):
        with pytest.raises(UnknownTheorem):
            md.sharpness_scan("LemD", 1, 0, 0.3, [0.5])
