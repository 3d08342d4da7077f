import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import systems, system_ids
from pdmech.dynamics import SystemSpec, invariant_H_value
from pdmech.errors import DomainError, RegimeError
from pdmech.factorization import (
    check_energy_regime,
    default_grid,
    f_value,
    g_prime,
    g_value,
    invariant_Q_values,
    ladder_frequency,
    ladder_values,
    poisson_bracket,
    pt_potential_value,
    q_polar,
    verify_algebra,
)
from pdmech.mass_models import MassModel, j_integral, j_inverse
from pdmech.special import elliptic_e_int

ALL = systems()


def interior_xs(spec, n=15, fraction=0.9):
    """Positions evenly spaced in the PT angle (|theta| <= 2 on the
    hyperbolic branch, where cosh would otherwise swamp the differences)."""
    return [x for x, _ in default_grid(spec, n, 1, fraction=fraction)]


def x_at(spec, frac):
    lo, hi = interior_xs(spec, 2)
    return j_inverse(spec.mass, (1 - frac) * j_integral(spec.mass, lo, spec.c)
                     + frac * j_integral(spec.mass, hi, spec.c), spec.c)


class TestGF:
    def test_anchor(self):
        for _, spec, _ in ALL:
            assert g_value(spec, spec.c) == 0.0
            assert f_value(spec, spec.c) == 1.0

    def test_regular_hyperbolic(self):
        spec = SystemSpec.poschl_teller(MassModel.regular(), -1, 0.5, -2.0)
        s = math.sqrt(0.5)
        # at x = sinh(asinh(1)/s) the argument of sinh is asinh(1)
        x = math.sinh(math.asinh(1.0) / s)
        assert g_value(spec, x) == pytest.approx(1.0, abs=1e-14)
        assert f_value(spec, x) == pytest.approx(math.sqrt(2.0), abs=1e-14)

    def test_trig_edge(self):
        spec = SystemSpec.poschl_teller(MassModel.regular(), 1, 0.5, 2.0)
        edge = spec.domain.upper
        assert g_value(spec, edge * (1 - 1e-12)) == pytest.approx(1.0, abs=1e-9)
        with pytest.raises(DomainError):
            g_value(spec, edge)

    @pytest.mark.parametrize("label,spec,_", ALL, ids=system_ids())
    def test_pythagorean_identity(self, label, spec, _):
        for x in interior_xs(spec):
            f, g = f_value(spec, x), g_value(spec, x)
            assert abs(f * f + spec.gamma * g * g - 1.0) < 1e-14 * max(1.0, f * f)

    @pytest.mark.parametrize("label,spec,_", ALL, ids=system_ids())
    def test_wronskian_closure(self, label, spec, _):
        for x in interior_xs(spec):
            h = 1e-6 * max(1.0, abs(x))
            df = (f_value(spec, x + h) - f_value(spec, x - h)) / (2 * h)
            dg = (g_value(spec, x + h) - g_value(spec, x - h)) / (2 * h)
            w = (f_value(spec, x) * dg - df * g_value(spec, x)) / math.sqrt(
                2 * spec.mass.effective_mass(x))
            assert w == pytest.approx(abs(spec.alpha), rel=1e-8)

    def test_g_prime_analytic(self):
        for _, spec, _ in ALL:
            for x in interior_xs(spec, 5):
                h = 1e-6
                fd = (g_value(spec, x + h) - g_value(spec, x - h)) / (2 * h)
                assert g_prime(spec, x) == pytest.approx(fd, rel=1e-7)


class TestPotential:
    def test_anchor(self):
        for _, spec, _ in ALL:
            assert pt_potential_value(spec, spec.c) == spec.epsilon

    def test_hyperbolic_vanishes_at_infinity(self):
        spec = SystemSpec.poschl_teller(MassModel.regular(), -1, 0.5, -2.0)
        assert abs(pt_potential_value(spec, 1e6)) < 1e-3

    def test_doubly_singular_trig(self):
        spec = SystemSpec.poschl_teller(MassModel.doubly_singular(), 1, 0.5, 2.0)
        th = math.sqrt(2 * 0.25) * elliptic_e_int(math.asin(0.5), -1.0)
        v = pt_potential_value(spec, 0.5)
        assert v == pytest.approx(2.0 / math.cos(th) ** 2, rel=1e-13)
        assert v >= 2.0

    def test_equals_veff(self):
        for _, spec, _ in ALL:
            for x in interior_xs(spec, 5):
                assert pt_potential_value(spec, x) == spec.veff(x)


class TestLadder:
    def test_anchor_rest(self):
        for _, spec, _ in ALL:
            lad = ladder_values(spec, spec.c, 0.0)
            assert lad.a_plus == 0 and lad.a_minus == 0

    def test_regular_example(self):
        spec = SystemSpec.poschl_teller(MassModel.regular(), 1, 0.5, 2.0)
        lad = ladder_values(spec, 0.0, 1.0)
        assert lad.a_plus == pytest.approx(-1j / math.sqrt(2), abs=1e-15)
        assert lad.a_minus == pytest.approx(1j / math.sqrt(2), abs=1e-15)
        assert abs(lad.a_plus) ** 2 == pytest.approx(0.5)
        assert invariant_H_value(spec, 0.0, 1.0) == pytest.approx(2.5)

    @pytest.mark.parametrize("label,spec,_", ALL, ids=system_ids())
    def test_factorization_both_orders(self, label, spec, _):
        for x, pi in default_grid(spec, 8, 8):
            H = invariant_H_value(spec, x, pi)
            lad = ladder_values(spec, x, pi)
            assert lad.conjugate
            assert abs(lad.a_plus * lad.a_minus + spec.epsilon - H) <= 1e-12 * abs(H)
            assert abs(lad.a_minus * lad.a_plus + spec.epsilon - H) <= 1e-12 * abs(H)

    def test_regime_rejection_is_exact(self):
        # gamma=-1: gamma H >= 0 needs H <= 0; scan momenta through the sign change
        spec = SystemSpec.poschl_teller(MassModel.singular(), -1, 0.5, -2.0)
        x = 0.3
        for pi in np.linspace(-4, 4, 81):
            H = invariant_H_value(spec, x, pi)
            if spec.gamma * H < 0:
                with pytest.raises(RegimeError):
                    ladder_values(spec, x, pi)
            else:
                ladder_values(spec, x, pi)

    def test_requires_pt(self):
        spec = SystemSpec(MassModel.regular(), potential=__import__("pdmech").zero_potential())
        with pytest.raises(ValueError):
            ladder_values(spec, 0.0, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(range(len(ALL))), st.floats(0.02, 0.98), st.floats(-0.95, 0.95))
def test_factorization_property(idx, frac, r):
    _, spec, _ = ALL[idx]
    x = x_at(spec, frac)
    band = math.sqrt(2 * spec.mass.effective_mass(x) * abs(spec.veff(x)))
    pi = r * band
    H = invariant_H_value(spec, x, pi)
    lad = ladder_values(spec, x, pi)
    assert abs(lad.a_plus * lad.a_minus + spec.epsilon - H) <= 1e-12 * abs(H)


class TestQ:
    spec = SystemSpec.poschl_teller(MassModel.singular(), 1, 0.5, 2.0)

    def test_t_zero(self):
        lad = ladder_values(self.spec, 0.4, 0.7)
        qp, qm = invariant_Q_values(self.spec, 0.4, 0.7, 0.0, 3.0)
        assert qp == lad.a_plus and qm == lad.a_minus

    def test_product(self):
        for t in (0.0, 0.7, 13.0):
            qp, qm = invariant_Q_values(self.spec, 0.4, 0.7, t, 3.0)
            H = invariant_H_value(self.spec, 0.4, 0.7)
            assert abs(qp * qm) == pytest.approx(H - 2.0, rel=1e-13)

    def test_frequency(self):
        assert ladder_frequency(self.spec, 4.0) == pytest.approx(2.0)
        hyp = SystemSpec.poschl_teller(MassModel.singular(), -1, 1.0, -2.0)
        assert ladder_frequency(hyp, -1.0) == pytest.approx(2.0)


class TestQPolar:
    def test_bottom(self):
        assert q_polar(2.0, 2.0, 0.3, 1) == (0, 0)

    def test_benchmark_energy(self):
        qp, qm = q_polar(2.5, 2.0, 0.0, 1)
        assert qp == pytest.approx(math.sqrt(0.5)) and qm == pytest.approx(math.sqrt(0.5))

    def test_hyperbolic_quarter_phase(self):
        qp, qm = q_polar(-1.0, -2.0, math.pi / 2, -1)
        assert qp == pytest.approx(1j, abs=1e-15) and qm == pytest.approx(-1j, abs=1e-15)

    @pytest.mark.parametrize("E,eps,gamma,match", [
        (1.5, 2.0, 1, "E >= epsilon"),
        (-2.5, -2.0, -1, "E >= epsilon"),
        (0.5, -2.0, -1, "E < 0"),
        (1.0, -2.0, 1, "epsilon > 0"),
    ])
    def test_regime_errors(self, E, eps, gamma, match):
        with pytest.raises(RegimeError, match=match):
            q_polar(E, eps, 0.0, gamma)

    def test_regime_accepts_boundaries(self):
        check_energy_regime(-2.0, -2.0, -1)
        check_energy_regime(2.0, 2.0, 1)


class TestPoissonBracket:
    def test_canonical_pair(self):
        assert poisson_bracket(lambda x, p: x, lambda x, p: p, 0.3, 1.2) == pytest.approx(1.0, abs=1e-9)

    def test_antisymmetric(self):
        spec = ALL[0][1]
        H = lambda x, p: invariant_H_value(spec, x, p)  # noqa: E731
        assert abs(poisson_bracket(H, H, 0.2, 0.9)) < 1e-12

    def test_position_only(self):
        spec = ALL[4][1]
        assert poisson_bracket(lambda x, p: f_value(spec, x), lambda x, p: g_value(spec, x),
                               0.3, 0.5) == 0.0

    def test_complex_values(self):
        val = poisson_bracket(lambda x, p: x + 1j * p, lambda x, p: p, 0.0, 0.0)
        assert val == pytest.approx(1.0)


class TestVerifyAlgebra:
    def test_constant_mass(self):
        spec = SystemSpec.poschl_teller(MassModel.constant(), 1, 0.5, 2.0)
        r = verify_algebra(spec)
        assert r.max_residual < 1e-6 and r.n_points == 1024

    def test_regular_trig(self):
        spec = SystemSpec.poschl_teller(MassModel.regular(), 1, 0.5, 2.0)
        assert verify_algebra(spec, default_grid(spec, 12, 12)).max_residual < 1e-6

    def test_exponential_hyperbolic(self):
        spec = SystemSpec.poschl_teller(MassModel.exponential(0.5, -4.0), -1, 1.0, -2.0)
        assert verify_algebra(spec, default_grid(spec, 12, 12)).max_residual < 1e-6

    def test_degenerate_points_skipped(self):
        spec = SystemSpec.poschl_teller(MassModel.regular(), -1, 0.5, -2.0)
        # H ~ 0 far out where the potential vanishes and the particle is at rest
        r = verify_algebra(spec, [(0.0, 0.5), (1e9, 0.0)])
        assert r.n_skipped == 1 and r.n_points == 1

    def test_report_json(self):
        spec = ALL[0][1]
        r = verify_algebra(spec, default_grid(spec, 4, 4))
        d = json.loads(r.to_json())
        assert set(d) >= {"max_factorization_residual", "max_bracket1_residual",
                          "max_bracket2_residual", "grid", "step"}
        assert min(d["max_factorization_residual"], d["max_bracket1_residual"],
                   d["max_bracket2_residual"]) >= 0

    def test_quadratic_step_convergence(self):
        spec = ALL[2][1]
        grid = default_grid(spec, 6, 6)
        a = verify_algebra(spec, grid, step=1e-2, richardson=False)
        b = verify_algebra(spec, grid, step=5e-3, richardson=False)
        assert a.max_bracket1_residual / b.max_bracket1_residual == pytest.approx(4.0, rel=0.15)
        assert a.max_bracket2_residual / b.max_bracket2_residual == pytest.approx(4.0, rel=0.15)
        # below the differencing floor roundoff takes over; the floor itself
        # sits under 1e-8
        floor = min(verify_algebra(spec, grid, step=h).max_residual for h in (1e-3, 3e-4, 1e-4, 3e-5))
        assert floor < 1e-8
