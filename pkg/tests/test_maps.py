"""Catalog, shear, compositions, group action, best Moebius, serialization."""

import cmath
import math

import numpy as np
import pytest

from harmschwarz import (
    AffineMap,
    ExprFunction,
    HarmonicMobius,
    MobiusMap,
    affine_compose,
    best_harmonic_mobius,
    catalog,
    catalog_map,
    conjugate,
    disk_automorphism,
    evaluate,
    group_apply,
    integrate_segment,
    map_from_json,
    map_to_json,
    partner_map,
    precompose,
    shear,
)
from harmschwarz.errors import (
    ParameterOutOfRange,
    ShearSingularity,
    UnknownCatalogName,
)
from harmschwarz.maps import PRESERVING, REVERSING, HarmonicMap
from conftest import disk_points


class TestCatalog:
    def test_harmonic_koebe_normalization(self):
        K = catalog("K")
        assert abs(K.hp.value(0.0) - 1.0) < 1e-15
        assert abs(K.gp.value(0.0)) < 1e-15
        for z in (0.3, -0.2 + 0.4j, 0.1 - 0.5j):
            assert abs(K.omega.value(z) - z) < 1e-15

    def test_half_plane_at_half(self):
        L = catalog("L")
        assert abs(L.h.value(0.5) - 1.5) < 1e-14
        assert abs(L.g.value(0.5) + 0.5) < 1e-14
        assert abs(evaluate(L, 0.5) - 1.0) < 1e-14

    def test_strip_map_structure(self):
        S2 = catalog("S2")
        z = 0.25 - 0.3j
        assert abs(S2.omega.value(z) - z * z) < 1e-15
        q = catalog("q2")
        s = catalog("s")
        assert abs(S2.h.value(z) - 0.5 * (q.value(z) + s.value(z))) < 1e-14

    def test_unknown_name(self):
        with pytest.raises(UnknownCatalogName):
            catalog("X9")

    @pytest.mark.parametrize("name", ["K", "L", "S1", "S2", "K2"])
    def test_omega_consistent_with_parts(self, name, rng):
        # stored dilatation equals g'/h' from the closed forms
        f = catalog(name)
        for z in disk_points(rng, 6, rmax=0.6):
            z = complex(z)
            w = f.omega.value(z)
            ratio = f.g.derivative().value(z) / f.h.derivative().value(z)
            assert abs(w - ratio) < 1e-11

    @pytest.mark.parametrize("name", ["K", "L", "S1", "S2", "K2"])
    def test_hp_consistent_with_h(self, name, rng):
        f = catalog(name)
        for z in disk_points(rng, 6, rmax=0.6):
            z = complex(z)
            assert abs(f.hp.value(z) - f.h.derivative().value(z)) < 1e-11


class TestShear:
    def test_horizontal_shear_of_koebe(self):
        sh = shear(catalog("k"), ExprFunction("z"), 0.0)
        # h' of the harmonic Koebe map: differentiate the closed form
        assert np.allclose(sh.hp.jet(0.0, 3).coeffs, [1, 5, 14, 30])
        assert abs(sh.h.value(0.0)) < 1e-15
        assert abs(sh.g.value(0.0)) < 1e-15

    def test_vertical_shear_of_half_plane(self):
        sh = shear(catalog("l"), ExprFunction("-z"), math.pi / 2)
        # h'(z) = 1/(1-z)^3
        assert np.allclose(sh.hp.jet(0.0, 3).coeffs, [1, 3, 6, 10], atol=1e-12)
        L = catalog("L")
        for z in (0.2, -0.3 + 0.25j):
            assert abs(sh.hp.value(z) - L.hp.value(z)) < 1e-12

    def test_shear_of_strip_reproduces_s1(self):
        sh = shear(catalog("s"), ExprFunction("z"), 0.0)
        S1 = catalog("S1")
        assert np.allclose(sh.hp.jet(0.0, 3).coeffs,
                           S1.hp.jet(0.0, 3).coeffs, atol=1e-13)
        z = 0.3 - 0.2j
        assert abs(evaluate(sh, z) - evaluate(S1, z)) < 1e-8

    def test_horizontal_shear_definition_identity(self, rng):
        # theta = 0: (h - g)-jet equals the phi-jet at every test point
        phi = catalog("k")
        sh = shear(phi, ExprFunction("z"), 0.0)
        for z in disk_points(rng, 5, rmax=0.5):
            z = complex(z)
            hj = sh.h.jet(z, 3)
            gj = sh.g.jet(z, 3)
            pj = phi.jet(z, 3)
            diff = (hj - gj).coeffs - pj.coeffs
            scale = max(1.0, np.max(np.abs(pj.coeffs)))
            assert np.max(np.abs(diff)) <= 1e-10 * scale

    def test_shear_singularity(self):
        sh = shear(catalog("k"), ExprFunction("1-z"), 0.0)
        with pytest.raises(ShearSingularity):
            sh.hp.jet(0.0, 2)

    def test_trivial_shear(self):
        sh = shear(ExprFunction("z"), ExprFunction("z"), 0.0)
        # h' = 1/(1-z)
        assert np.allclose(sh.hp.jet(0.0, 3).coeffs, [1, 1, 1, 1])


class TestAffine:
    def test_degenerate_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            AffineMap(1.0, 1.0, 0.0)

    def test_identity(self, rng):
        f = catalog("K")
        F = affine_compose(AffineMap(1.0, 0.0, 0.0), f)
        for z in disk_points(rng, 4, rmax=0.5):
            z = complex(z)
            assert abs(F.value(z) - f.value(z)) < 1e-14
            assert abs(F.omega.value(z) - f.omega.value(z)) < 1e-14

    def test_dilatation_formula(self, rng):
        # A = (1, alpha, 0): omega_F = (omega + conj(alpha))/(1 + alpha*omega)
        alpha = 0.3 - 0.4j
        f = catalog("S2")
        F = affine_compose(AffineMap(1.0, alpha, 0.0), f)
        for z in disk_points(rng, 5, rmax=0.6):
            z = complex(z)
            w = f.omega.value(z)
            want = (w + np.conjugate(alpha)) / (1.0 + alpha * w)
            assert abs(F.omega.value(z) - want) < 1e-13

    def test_koebe_example(self):
        F = affine_compose(AffineMap(1.0, 0.5, 1.0 + 1.0j), catalog("K"))
        assert abs(F.omega.value(0.0) - 0.5) < 1e-15
        # value picks up the translation: A(K(0)) = 1+i
        assert abs(F.value(0.0) - (1.0 + 1.0j)) < 1e-15

    def test_sense_flip(self):
        f = catalog("K")
        assert affine_compose(AffineMap(2.0, 0.5, 0.0), f).sense == PRESERVING
        assert affine_compose(AffineMap(0.5, 2.0, 0.0), f).sense == REVERSING


class TestPrecompose:
    def test_identity(self):
        f = catalog("K")
        F = precompose(f, ExprFunction("z"))
        z = 0.3 + 0.2j
        assert abs(F.value(z) - f.value(z)) < 1e-14

    def test_automorphism_at_zero_parameter(self):
        f = catalog("S1")
        F = precompose(f, disk_automorphism(0.0))
        z = 0.25 - 0.1j
        assert abs(F.value(z) - f.value(z)) < 1e-13
        assert abs(F.omega.value(z) - f.omega.value(z)) < 1e-13

    def test_half_scaling_of_koebe(self):
        F = precompose(catalog("K"), ExprFunction("z/2"))
        assert abs(F.omega.value(0.0)) < 1e-15  # omega(phi(0)) = omega(0) = 0
        assert abs(F.hp.value(0.0) - 0.5) < 1e-15  # h'(0) * phi'(0)


class TestConjugate:
    def test_involution_is_exact(self):
        f = catalog("K")
        assert conjugate(conjugate(f)) is f

    def test_sense_flip_on_analytic(self):
        f = catalog_map("k")
        assert conjugate(f).sense == REVERSING

    def test_values_conjugate(self, rng):
        f = catalog("L")
        g = conjugate(f)
        for z in disk_points(rng, 4, rmax=0.5):
            z = complex(z)
            assert abs(g.value(z) - np.conjugate(f.value(z))) < 1e-13


class TestGroup:
    def test_rp_identity(self):
        f = catalog("S2")
        F = group_apply(f, "Rp", 1.0)
        z = 0.2 + 0.3j
        assert abs(F.value(z) - f.value(z)) < 1e-14

    def test_i_zero_identity(self):
        f = catalog("S2")
        F = group_apply(f, "I", 0.0)
        z = 0.2 + 0.3j
        assert abs(F.value(z) - f.value(z)) < 1e-14

    def test_i_moves_dilatation(self):
        F = group_apply(catalog("K"), "I", 0.3)
        assert abs(F.omega.value(0.0) - 0.3) < 1e-15

    def test_i_matches_affine_definition(self, rng):
        # I_a(f) = f + conj(a f)
        a = 0.2 - 0.35j
        f = catalog("S2")
        F = group_apply(f, "I", a)
        for z in disk_points(rng, 4, rmax=0.5):
            z = complex(z)
            want = f.value(z) + np.conjugate(a * f.value(z))
            assert abs(F.value(z) - want) < 1e-13

    def test_rq_scales_omega(self, rng):
        mu = cmath.exp(1.1j)
        f = catalog("K")
        F = group_apply(f, "Rq", mu)
        for z in disk_points(rng, 5, rmax=0.6):
            wj = F.omega.jet(complex(z), 2)
            base = f.omega.jet(complex(z), 2)
            assert np.max(np.abs(wj.coeffs - mu * base.coeffs)) < 1e-12

    def test_parameter_validation(self):
        f = catalog("K")
        with pytest.raises(ParameterOutOfRange):
            group_apply(f, "Rp", 0.0)
        with pytest.raises(ParameterOutOfRange):
            group_apply(f, "Rq", 1.2)
        with pytest.raises(ParameterOutOfRange):
            group_apply(f, "I", 1.0)
        with pytest.raises(ParameterOutOfRange):
            group_apply(f, "Q", 0.5)


class TestPartner:
    def test_identity_parameters(self):
        f = catalog("S2")
        F = partner_map(f, 0.0, 1.0, 1.0)
        z = 0.3 + 0.1j
        assert abs(F.omega.value(z) - f.omega.value(z)) < 1e-14
        assert abs(F.hp.value(z) - f.hp.value(z)) < 1e-14

    def test_evaluable_at_dilatation_zero(self):
        # omega(0) = 0 for S2, phi_a moves it off zero; jets stay finite
        F = partner_map(catalog("S2"), 0.5, 1.0, 2.0)
        assert np.all(np.isfinite(F.hp.jet(0.0, 2).coeffs))

    def test_parameter_validation(self):
        f = catalog("S2")
        with pytest.raises(ParameterOutOfRange):
            partner_map(f, 1.1, 1.0, 1.0)
        with pytest.raises(ParameterOutOfRange):
            partner_map(f, 0.0, 0.5, 1.0)
        with pytest.raises(ParameterOutOfRange):
            partner_map(f, 0.0, 1.0, 0.0)


class TestEvaluate:
    def test_koebe_normalized(self):
        assert abs(evaluate(catalog("K"), 0.0)) < 1e-15

    def test_shear_matches_catalog(self):
        sh = shear(catalog("k"), ExprFunction("z"), 0.0)
        K = catalog("K")
        assert abs(evaluate(sh, 0.3) - evaluate(K, 0.3)) < 1e-8

    def test_path_independence(self):
        # analyticity: integral over [0,z] equals the two-segment route
        sh = shear(catalog("k"), ExprFunction("z"), 0.0)
        z = 0.35 + 0.4j
        mid = 0.5j * abs(z)
        direct = integrate_segment(sh.hp.value, 0.0, z)
        elbow = integrate_segment(sh.hp.value, 0.0, mid) + \
            integrate_segment(sh.hp.value, mid, z)
        assert abs(direct - elbow) < 1e-7


class TestBestHarmonicMobius:
    def test_mobius_fixed_point(self):
        T = MobiusMap(1.5 + 0.2j, 0.3, -0.4 + 0.1j, 1.0)
        f = HarmonicMap.from_analytic(T.as_function())
        M = best_harmonic_mobius(f, 0.1 + 0.2j)
        assert abs(M.alpha) < 1e-14
        for t in (0.05, -0.04 + 0.03j):
            assert abs(M.T(t) - T(0.1 + 0.2j + t)) < 1e-12

    def test_harmonic_mobius_recovered(self):
        T = MobiusMap(1.0, 0.5, 0.2j, 1.0)
        alpha = 0.3 - 0.2j
        f = HarmonicMobius(T, alpha).as_harmonic_map()
        z0 = 0.15 - 0.1j
        M = best_harmonic_mobius(f, z0)
        assert abs(M.alpha - alpha) < 1e-13
        for t in (0.03, 0.02j):
            assert abs(M(t) - f.value(z0 + t)) < 1e-12

    def test_koebe_at_origin(self):
        # alpha = 0 and T(t) = t/(1 - (5/2) t) since h''(0) = 5
        M = best_harmonic_mobius(catalog("K"), 0.0)
        assert abs(M.alpha) < 1e-15
        for t in (0.1, -0.05 + 0.07j):
            assert abs(M.T(t) - t / (1.0 - 2.5 * t)) < 1e-14

    def test_matching_conditions(self, rng):
        # value, d/dz, d/dzbar, d^2/dz^2 agree with f at the expansion point
        for name in ("K", "S2", "L"):
            f = catalog(name)
            for z0 in disk_points(rng, 3, rmax=0.5):
                z0 = complex(z0)
                M = best_harmonic_mobius(f, z0)
                tj = M.T.as_function().jet(0.0, 2)
                hj = f.h.jet(z0, 2)
                gj = f.g.jet(z0, 2)
                fval = f.value(z0)
                mval = complex(tj.coeffs[0]) + M.alpha * np.conjugate(tj.coeffs[0])
                assert abs(mval - fval) <= 1e-9
                assert abs(complex(tj.coeffs[1]) - complex(hj.coeffs[1])) <= 1e-9
                dz_bar_M = M.alpha * np.conjugate(complex(tj.coeffs[1]))
                assert abs(dz_bar_M - np.conjugate(complex(gj.coeffs[1]))) <= 1e-9
                assert abs(2.0 * complex(tj.coeffs[2])
                           - 2.0 * complex(hj.coeffs[2])) <= 1e-9


class TestSerialization:
    def test_parts_roundtrip(self):
        f = catalog("K")
        d = map_to_json(f)
        assert d["form"] == "parts" and d["sense"] == PRESERVING
        g = map_from_json(d)
        z = 0.2 - 0.3j
        assert abs(g.value(z) - f.value(z)) < 1e-13

    def test_dilatation_roundtrip(self):
        d = {"label": "t", "form": "dilatation", "h": "1/(1-z)^4",
             "omega": "z^2", "sense": PRESERVING}
        f = map_from_json(d)
        K2 = catalog("K2")
        z = 0.3 + 0.1j
        assert abs(f.hp.value(z) - K2.hp.value(z)) < 1e-13
        assert abs(evaluate(f, z) - evaluate(K2, z)) < 1e-8
        assert map_to_json(f) == d

    def test_unserializable_map(self):
        sh = shear(catalog("k"), ExprFunction("z"), 0.0)
        with pytest.raises(ValueError):
            map_to_json(sh)
