import numpy as np
import pytest
from _reference import jacobi_trace_square
from hypothesis import given
from hypothesis import strategies as st

from curvlab.conditions import (
    chen_report,
    condition_report,
    quartic_coefficients,
    semisym_defects,
    semisym_eigencheck,
    symmetrize4,
    two_stein_basis_report,
    we_hypersurface_defects,
    we_hypersurface_eigencheck,
)
from curvlab.curvature import constant_curvature, derive, direct_sum, sectional_matrix, semisym_derivation_norm
from curvlab.errors import NotCommuting, WrongDimension
from curvlab.families import GAP_PROBE, random_rotation
from curvlab.oracles import random_curvature
from curvlab.submanifold import AmbientSpace, ShapeOperatorSet, chen_shape_operators, gauss_curvature

S2 = np.sqrt(2)
ISO_KAPPA = [S2, S2] + [-1 / S2] * 5


def _hyper(kappa, c):
    return gauss_curvature(AmbientSpace(c), ShapeOperatorSet(np.diag(kappa)))


class TestConditionReport:
    @pytest.mark.parametrize("n,c", [(3, 1.0), (4, -2.0), (5, 0.5)])
    def test_space_form(self, n, c):
        rep = condition_report(constant_curvature(n, c))
        assert rep.einstein_residual == pytest.approx(0, abs=1e-13)
        assert rep.weakly_einstein_residual == pytest.approx(0, abs=1e-13)
        assert rep.semisym_residual == pytest.approx(0, abs=1e-13)
        assert rep.two_stein.quartic_residual == pytest.approx(0, abs=1e-13)
        assert rep.two_stein.f1 == pytest.approx((n - 1) * c)
        assert rep.two_stein.f2 == pytest.approx((n - 1) * c * c)
        assert all(rep.flags.values())

    def test_product_example(self):
        rep = condition_report(direct_sum(constant_curvature(2, S2), constant_curvature(3, -1.0)))
        assert rep.flags["weakly_einstein"] and not rep.flags["einstein"]

    def test_gap_probe(self):
        R = gauss_curvature(AmbientSpace(0.0), ShapeOperatorSet(GAP_PROBE))
        rep = condition_report(R)
        assert rep.flags["einstein"] and rep.flags["weakly_einstein"]
        assert rep.two_stein.quartic_residual > 0.1
        assert not rep.flags["two_stein"]

    def test_quartic_is_jacobi_square(self):
        # Tr(R_X^2) equals the symmetrised coefficient tensor contracted with X four times
        R = random_curvature(4, np.random.default_rng(3))
        rng = np.random.default_rng(4)
        SC = symmetrize4(quartic_coefficients(R))
        for _ in range(5):
            X = rng.normal(size=4)
            got = np.einsum("ijkl,i,j,k,l->", SC, X, X, X, X)
            assert got == pytest.approx(jacobi_trace_square(R.comp, X), rel=1e-10)

    def test_gap_probe_quartic_varies(self):
        R = gauss_curvature(AmbientSpace(0.0), ShapeOperatorSet(GAP_PROBE))
        for phi in (0.0, np.pi / 4, np.pi / 3):
            X = np.array([np.cos(phi), 0, np.sin(phi), 0])
            assert jacobi_trace_square(R.comp, X) == pytest.approx(np.cos(phi) ** 4 + np.sin(phi) ** 4)

    @given(st.integers(0, 2**32 - 1), st.floats(1e-12, 1e-3))
    def test_flags_consistent(self, seed, tol):
        R = random_curvature(4, np.random.default_rng(seed))
        rep = condition_report(R, tol)
        lin, quad = max(1.0, np.sqrt(R.norm2)), max(1.0, R.norm2)
        assert rep.flags["einstein"] == (rep.einstein_residual <= tol * lin)
        assert rep.flags["weakly_einstein"] == (rep.weakly_einstein_residual <= tol * quad)
        assert rep.flags["semisymmetric"] == (rep.semisym_residual <= tol * quad)


class TestHypersurfaceChecks:
    def test_minimal_pair(self):
        ok, _ = we_hypersurface_eigencheck([S2, -S2, 0, 0, 0], 1.0)
        assert ok

    @given(st.floats(-3, 3), st.integers(2, 6), st.sampled_from([-1.0, 0.0, 1.0]))
    def test_umbilic(self, k, n, c):
        assert we_hypersurface_eigencheck([k] * n, c)[0]

    def test_isoparametric_kappa(self):
        ok, worst = we_hypersurface_eigencheck(ISO_KAPPA, 1.0)
        assert ok and worst < 1e-13

    def test_pairwise_expression(self):
        k, c = np.array([1.0, 2.0, -0.5]), 0.7
        T1, T2 = k.sum(), (k**2).sum()
        expected = (k[0] - k[1]) * (2 * c * T1 + (k[0] + k[1]) * (-2 * c + T2 - k[0] ** 2 - k[1] ** 2))
        assert we_hypersurface_defects(k, c)[0, 1] == pytest.approx(expected)

    def test_semisym_examples(self):
        assert semisym_eigencheck([0.8] * 4, 1.0)[0]
        assert semisym_eigencheck(ISO_KAPPA, 1.0)[0]
        ok, worst = semisym_eigencheck([1.0, 2.0, 3.0], 1.0)
        assert not ok
        assert semisym_defects([1.0, 2.0, 3.0], 1.0)[0, 1, 2] == pytest.approx(-9.0)
        # the largest triple is (1, 3, 2): (1*3 + 1)(1 - 3) * 2
        assert worst == pytest.approx(16.0)

    def test_semisym_matches_derivation(self):
        # the derivation sup-norm and the largest triple product coincide on diagonal hypersurfaces
        for kappa, c in [([1.0, 2.0, 3.0], 1.0), ([0.5, -1.2, 2.0, 0.3], -1.0), ([1.0, 1.0, -2.0], 0.0)]:
            assert semisym_derivation_norm(_hyper(kappa, c)) == pytest.approx(semisym_eigencheck(kappa, c)[1])

    def test_dimension_errors(self):
        with pytest.raises(WrongDimension):
            we_hypersurface_eigencheck([1.0], 0.0)
        with pytest.raises(WrongDimension):
            semisym_eigencheck([1.0, 2.0], 0.0)

    @given(st.lists(st.floats(-2, 2), min_size=3, max_size=6), st.sampled_from([-1.0, 0.0, 1.0]))
    def test_eigenchecks_agree_with_tensor(self, kappa, c):
        R = _hyper(kappa, c)
        rep = condition_report(R, 1e-8)
        _, we_worst = we_hypersurface_eigencheck(kappa, c, 1e-8)
        # the pairwise expression is half the difference of two diagonal entries of the contracted square
        spread = np.ptp(np.diag(derive(R).checkR))
        assert we_worst == pytest.approx(spread / 2, abs=1e-9 * R.scale())
        _, ss_worst = semisym_eigencheck(kappa, c, 1e-8)
        assert ss_worst == pytest.approx(rep.semisym_residual, abs=1e-9 * R.scale())


class TestTwoSteinBasis:
    def test_gap_probe_values(self):
        ts = two_stein_basis_report(AmbientSpace(0.0), ShapeOperatorSet(GAP_PROBE))
        np.testing.assert_allclose(ts.basis_h1, [1, 1, 1, 1])
        np.testing.assert_allclose(ts.basis_h2, [1, 1, 1, 1])
        assert ts.basis_h2_spread == 0.0
        assert ts.checkR_basis_residual < 1e-13
        assert ts.h2_formula_residual < 1e-13
        assert ts.quartic_residual > 0.1

    @pytest.mark.parametrize("c", [-1.0, 0.0, 2.0])
    def test_totally_geodesic(self, c):
        ts = two_stein_basis_report(AmbientSpace(c), ShapeOperatorSet(np.zeros((2, 4, 4))))
        assert ts.basis_h1 == [0.0] * 4 and ts.basis_h2 == [0.0] * 4

    def test_chen_block_commutation(self):
        # with a = b the top block of A_1 is scalar, so every second operator commutes with it
        for d2 in (0.0, 0.5):
            ts = two_stein_basis_report(AmbientSpace(0.0), chen_shape_operators(4, 2, 0.5, 0.5, [1.0], [d2]))
            assert ts.checkR_basis_residual < 1e-12
        # the commutator is (a - b) d_2 times a rotation generator
        with pytest.raises(NotCommuting):
            two_stein_basis_report(AmbientSpace(0.0), chen_shape_operators(4, 2, 0.5, 0.3, [1.0], [0.5]))
        two_stein_basis_report(AmbientSpace(0.0), chen_shape_operators(4, 2, 0.5, 0.3, [1.0], [0.0]))

    @given(st.integers(0, 2**32 - 1))
    def test_basis_formula_for_checkR(self, seed):
        rng = np.random.default_rng(seed)
        n, p = int(rng.integers(2, 6)), int(rng.integers(1, 4))
        Q = random_rotation(rng, n)
        A = np.array([Q @ np.diag(rng.uniform(-2, 2, n)) @ Q.T for _ in range(p)])
        c = float(rng.choice([-1.0, 0.0, 1.0]))
        ts = two_stein_basis_report(AmbientSpace(c), ShapeOperatorSet(A, tol=1e-9))
        assert ts.checkR_basis_residual <= 1e-9 * max(1.0, np.max(np.abs(A)) ** 4)

    def test_two_stein_implies_constant_curvature_when_flat(self):
        # full 2-stein with commuting shape operators: all sectional curvatures agree
        amb = AmbientSpace(1.0)
        S = ShapeOperatorSet(np.diag([0.7, 0.7, 0.7]))
        R = gauss_curvature(amb, S)
        assert condition_report(R).flags["two_stein"]
        K = sectional_matrix(R)[~np.eye(3, dtype=bool)]
        assert np.ptp(K) < 1e-12


class TestChenReport:
    def test_totally_geodesic(self):
        rep = chen_report(AmbientSpace(0.0), ShapeOperatorSet(np.zeros((1, 3, 3))), restarts=8)
        assert rep.lhs == pytest.approx(0, abs=1e-12) and rep.rhs == 0 and rep.equality

    def test_unit_sphere(self):
        rep = chen_report(AmbientSpace(0.0), ShapeOperatorSet(np.eye(3)), restarts=8)
        assert rep.lhs == pytest.approx(2.0, abs=1e-9)
        assert rep.rhs == pytest.approx(2.25)
        assert not rep.equality

    def test_surface_trivial(self):
        rep = chen_report(AmbientSpace(1.0), ShapeOperatorSet(np.diag([1.0, 3.0])))
        assert rep.equality and rep.gap == 0.0 and rep.inf_plane is None

    def test_chen_form_equality(self):
        S = chen_shape_operators(4, 2, 0.5, 0.5, [np.sqrt(5) / 2], [0.0])
        rep = chen_report(AmbientSpace(0.0), S)
        assert rep.equality
        assert rep.inf_plane.value == pytest.approx(-1.0, abs=1e-9)
        P = np.outer(rep.inf_plane.u, rep.inf_plane.u) + np.outer(rep.inf_plane.v, rep.inf_plane.v)
        np.testing.assert_allclose(P, np.diag([1.0, 1, 0, 0]), atol=1e-5)
