import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvlab.conditions import condition_report, we_hypersurface_eigencheck
from curvlab.curvature import curvature_operator, derive
from curvlab.errors import BadArity, BadRange, FormMismatch, NoSolution, NotWeaklyEinstein
from curvlab.families import (
    FAMILY_IDS,
    R6_RANKS,
    build_family,
    chen_branch,
    chen_instance,
    headline_only_instance,
    isoparametric_intrinsic,
    isoparametric_product_hypersurface,
    product_space_form,
    quartic_check,
    r6_family,
    random_r6_params,
    random_we_chen,
    two_valued_we,
    weakly_einstein_theta,
)
from curvlab.submanifold import AmbientSpace, ShapeOperatorSet, gauss_curvature


def _reproduces_expected(inst, tol=1e-8):
    flags = condition_report(inst.intrinsic, tol).flags
    return {k: flags[k] for k in inst.expected} == inst.expected


class TestProducts:
    @pytest.mark.parametrize(
        "args,we,ein",
        [((2, math.sqrt(2), 3, -1.0), True, False), ((2, 2.0, 3, 1.0), False, True), ((2, 1.0, 2, -1.0), True, False)],
    )
    def test_examples(self, args, we, ein):
        inst = product_space_form(*args)
        assert inst.expected["weakly_einstein"] is we
        assert inst.expected["einstein"] is ein
        assert _reproduces_expected(inst)

    def test_bad_dimension(self):
        with pytest.raises(BadRange):
            product_space_form(0, 1.0, 2, 1.0)


class TestIsoparametric:
    def test_weakly_einstein_angle(self):
        theta = math.atan(2**-0.5)
        assert weakly_einstein_theta(2, 5, 1) == pytest.approx(theta)
        inst = isoparametric_product_hypersurface(2, 5, theta, 1)
        rep = condition_report(inst.intrinsic, 1e-9)
        assert rep.flags["weakly_einstein"] and rep.flags["semisymmetric"] and not rep.flags["einstein"]
        assert _reproduces_expected(inst)
        assert we_hypersurface_eigencheck(np.diag(inst.shape.A[0]), 1.0)[0]

    def test_equal_multiplicities_are_einstein(self):
        inst = isoparametric_product_hypersurface(3, 3, math.pi / 4, 1)
        assert condition_report(inst.intrinsic).flags["einstein"]

    def test_perturbed_angle_fails(self):
        inst = isoparametric_product_hypersurface(2, 5, math.atan(2**-0.5) + 0.05, 1)
        rep = condition_report(inst.intrinsic)
        assert not rep.flags["weakly_einstein"]
        assert rep.weakly_einstein_residual > 1e-3

    def test_hyperbolic(self):
        theta = weakly_einstein_theta(2, 5, -1)
        assert math.tanh(theta) ** 4 == pytest.approx(0.25)
        inst = isoparametric_product_hypersurface(2, 5, theta, -1)
        assert condition_report(inst.intrinsic, 1e-9).flags["weakly_einstein"]

    @given(st.integers(1, 4), st.integers(1, 4), st.floats(0.05, 1.5), st.sampled_from([1, -1]))
    def test_principal_curvatures_match_product(self, p, q, theta, sign):
        inst = isoparametric_product_hypersurface(p, q, theta, sign)
        assert inst.intrinsic.allclose(isoparametric_intrinsic(p, q, theta, sign), atol=1e-10 * inst.intrinsic.scale())

    def test_ranges(self):
        with pytest.raises(BadRange):
            isoparametric_product_hypersurface(2, 5, 2.0, 1)
        with pytest.raises(BadRange):
            isoparametric_product_hypersurface(2, 5, -0.1, -1)
        with pytest.raises(BadRange):
            weakly_einstein_theta(5, 2, -1)


class TestChenBranch:
    def test_flat_normal_euclidean(self):
        v = chen_branch(4, 2, 0.0, 0.5, 0.5, [math.sqrt(5) / 2], [0.0])
        assert (v.setting, v.branch, v.consistent) == ("euclidean", "(ii)", True)
        assert v.residuals["ricci_rank"] == 0.0
        inst = chen_instance(4, 2, 0.0, 0.5, 0.5, [math.sqrt(5) / 2], [0.0])
        np.testing.assert_allclose(derive(inst.intrinsic).rho, np.diag([0.0, 0, 2, 2]), atol=1e-10)
        K12 = inst.intrinsic.comp[0, 1, 1, 0]
        assert K12 == pytest.approx(-2 * 0.25 * math.sqrt(3 * 4 - 8))

    def test_hyperbolic_hypersurface(self):
        a = math.sqrt(2 / 3)
        v = chen_branch(3, 1, -1.0, a, a)
        assert (v.setting, v.branch, v.consistent) == ("space_form", "(ii.b)", True)
        assert v.residuals["a2"] < 1e-12
        np.testing.assert_allclose(derive(chen_instance(3, 1, -1.0, a, a).intrinsic).checkR, 4 / 9 * np.eye(3), atol=1e-12)

    def test_minimal_sphere_hypersurface(self):
        v = chen_branch(5, 1, 1.0, math.sqrt(2), -math.sqrt(2))
        assert (v.setting, v.branch, v.consistent) == ("space_form", "(i.b)", True)
        rho = derive(chen_instance(5, 1, 1.0, math.sqrt(2), -math.sqrt(2)).intrinsic).rho
        np.testing.assert_allclose(rho, np.diag([2.0, 2, 4, 4, 4]), atol=1e-12)

    def test_not_weakly_einstein(self):
        with pytest.raises(NotWeaklyEinstein) as err:
            chen_branch(4, 1, 0.0, 1.0, 0.3)
        assert err.value.residual > 0.1

    @pytest.mark.parametrize("c", [-1.0, 0.0, 1.0])
    def test_random_instances_always_labelled(self, c):
        rng = np.random.default_rng(int(c) + 7)
        for _ in range(30):
            P = random_we_chen(rng, c)
            v = chen_branch(P["n"], P["p"], P["c"], P["a"], P["b"], P["c_list"], P["d_list"])
            assert v.branch != "none" and v.consistent, (P, v)


class TestR6:
    def test_family_23(self):
        inst = r6_family(23, {"alpha": 1.0, "beta": 2.0, "p": 1.0, "sign": -1})
        A2 = inst.shape.A[1]
        assert A2[2, 2] * A2[3, 3] == pytest.approx(-2.0, abs=1e-12)
        np.testing.assert_allclose(derive(inst.intrinsic).checkR, 8 * np.eye(4), atol=1e-10)
        rep = condition_report(inst.intrinsic)
        assert rep.flags["weakly_einstein"] and not rep.flags["einstein"]
        assert quartic_check(inst) <= 1e-9

    def test_family_24_solves_q(self):
        inst = r6_family(24, {"alpha": 1.0, "beta": 1.0, "gamma": 2.0, "s0": 1})
        assert abs(inst.params["q"]) == pytest.approx(1.0, abs=1e-12)
        assert condition_report(inst.intrinsic).flags["weakly_einstein"]

    def test_family_25_forms(self):
        one = r6_family(25, {"alpha": 1.0, "form": 1})
        np.testing.assert_array_equal(np.diag(one.shape.A[0]), [1, -1, 1, -1])
        np.testing.assert_allclose(derive(one.intrinsic).rho, -np.eye(4), atol=1e-12)
        np.testing.assert_allclose(derive(one.intrinsic).checkR, 6 * np.eye(4), atol=1e-12)
        assert condition_report(one.intrinsic).flags["einstein"]
        two = r6_family(25, {"alpha": 1.0, "form": 2})
        np.testing.assert_array_equal(np.diag(two.shape.A[0]), [1, 1, 1, -1])
        np.testing.assert_allclose(derive(two.intrinsic).rho, np.diag([1.0, 1, 1, -3]), atol=1e-12)
        rep = condition_report(two.intrinsic)
        assert rep.flags["weakly_einstein"] and not rep.flags["einstein"]
        assert quartic_check(one) <= 1e-9 and quartic_check(two) <= 1e-9

    @pytest.mark.parametrize("kind", sorted(R6_RANKS))
    def test_random_members(self, kind):
        rng = np.random.default_rng(kind)
        for seed in range(10):
            inst = r6_family(kind, random_r6_params(kind, rng), seed=seed)
            rep = condition_report(inst.intrinsic, 1e-8)
            assert rep.flags["weakly_einstein"]
            assert quartic_check(inst) <= 1e-8
            assert curvature_operator(inst.intrinsic).rank == R6_RANKS[kind]
            assert _reproduces_expected(inst)

    def test_infeasible_system(self):
        # qr, pr, pq must have a positive product for real p, q, r
        P = {"alpha": 1.0, "beta": 1.0, "gamma": 1.0, "delta": 1.0, "sign_a": -1, "sign_b": 1, "sign_c": 1, "root": 1}
        with pytest.raises(NoSolution):
            r6_family(27, P)

    def test_headline_constraint_is_not_sufficient(self):
        residual, we = headline_only_instance(24, {"alpha": 1.0, "beta": 1.0, "gamma": 2.0, "p": 1.0, "q": -2.0})
        assert residual == 0.0 and not we

    def test_bad_params(self):
        with pytest.raises(BadArity):
            r6_family(23, {"alpha": 1.0})
        with pytest.raises(BadRange):
            r6_family(23, {"alpha": 1.0, "beta": 2.0, "p": 1.0, "sign": 3})
        with pytest.raises(BadRange):
            r6_family(22, {})

    def test_quartic_check_needs_form(self):
        inst = r6_family(23, {"alpha": 1.0, "beta": 2.0, "p": 1.0, "sign": -1})
        geodesic = type(inst)("r6_23", {}, AmbientSpace(0.0), ShapeOperatorSet(np.zeros((2, 4, 4))),
                              gauss_curvature(AmbientSpace(0.0), ShapeOperatorSet(np.zeros((2, 4, 4)))), {})
        with pytest.raises(FormMismatch):
            quartic_check(geodesic)


class TestDispatch:
    @pytest.mark.parametrize(
        "fid,params",
        [
            ("product", {"n1": 2, "c1": 2.0, "n2": 3, "c2": 1.0}),
            ("isoparametric_sphere", {"p": 2, "q": 5, "theta": math.atan(2**-0.5)}),
            ("isoparametric_hyperbolic", {"p": 2, "q": 5, "theta": math.atanh(0.5**0.5)}),
            ("chen", {"n": 4, "p": 2, "ambient_c": 0.0, "a": 0.5, "b": 0.5, "c2": 1.0, "d2": 0.5}),
            ("warped", {"f": 1.0, "fp": 2.0, "c": 1.0, "m": 3}),
            ("r6_23", {"alpha": 1.0, "beta": 2.0, "p": 1.0, "sign": -1}),
            ("r6_24", {"alpha": 1.0, "beta": 1.0, "gamma": 2.0, "s0": 1}),
            ("r6_25", {"alpha": 1.0, "form": 2}),
            ("r6_26", {"alpha": 1.5, "beta": 1.0, "p": 1.0, "s3": 1, "s4": 1, "sign_c": 1}),
            ("r6_27", {"alpha": 1.0, "beta": 2.0, "gamma": 1.5, "delta": 1.0, "sign_a": 1, "sign_b": 1, "sign_c": 1, "root": 1}),
        ],
    )
    def test_every_family_reproduces_expected(self, fid, params):
        assert fid in FAMILY_IDS
        inst = build_family(fid, params, seed=3)
        assert inst.family_id == fid
        assert _reproduces_expected(inst)

    def test_missing_parameter(self):
        with pytest.raises(BadArity):
            build_family("product", {"n1": 2})


class TestTwoValued:
    @pytest.mark.parametrize("c", [-1.0, 0.5, 1.0])
    def test_roots_are_weakly_einstein(self, c):
        for k2 in two_valued_we(c, 2, 3, 1.3):
            kappa = [1.3] * 2 + [k2] * 3
            assert we_hypersurface_eigencheck(kappa, c, 1e-9)[0]
