import math
import warnings

import numpy as np
import pytest
from scipy import integrate, special

from pdmech.errors import QuadratureError
from pdmech.special import elliptic_e_int, elliptic_e_int_fast, elliptic_e_int_gauss


def weighted_oracle(x_max, beta):
    """Integrate sqrt((1 - beta t^2)/(1 - t^2)) in the original variable,
    letting QUADPACK's algebraic weight absorb the endpoint singularity."""
    if x_max < 1.0:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val, _ = integrate.quad(lambda t: math.sqrt((1 - beta * t * t) / (1 - t * t)), 0.0,
                                    x_max, epsabs=1e-14, epsrel=1e-14, limit=200)
        return val
    val, _ = integrate.quad(lambda t: math.sqrt((1 - beta * t * t) / (1 + t)), 0.0, 1.0,
                            weight="alg", wvar=(0.0, -0.5), epsabs=1e-14, epsrel=1e-14)
    return val


class TestEllipticEInt:
    def test_zero_angle(self):
        assert elliptic_e_int(0.0, -1.0) == 0.0

    def test_beta_zero_quarter_period(self):
        assert elliptic_e_int(math.pi / 2, 0.0) == pytest.approx(math.pi / 2, abs=1e-13)

    def test_complete_beta_minus_one(self):
        a = elliptic_e_int(math.pi / 2, -1.0)
        b = elliptic_e_int_gauss(math.pi / 2, -1.0)
        assert abs(a - b) < 1e-10
        assert a == pytest.approx(1.9100988945138564, abs=1e-12)
        assert a == pytest.approx(weighted_oracle(1.0, -1.0), abs=1e-12)

    @pytest.mark.parametrize("phi", [0.1, 0.5, 1.0, 1.3, math.pi / 2])
    @pytest.mark.parametrize("beta", [-3.0, -1.0, -0.2, 0.0, 0.5])
    def test_three_rules_agree(self, phi, beta):
        a = elliptic_e_int(phi, beta)
        assert abs(a - elliptic_e_int_gauss(phi, beta)) < 1e-10
        assert abs(a - elliptic_e_int_fast(phi, beta)) < 1e-12
        assert abs(a - weighted_oracle(math.sin(phi), beta)) < 1e-11

    def test_matches_legendre_form(self):
        # E(phi | m) with m = beta
        for phi in np.linspace(0.05, 1.5, 7):
            assert elliptic_e_int(phi, -1.0) == pytest.approx(special.ellipeinc(phi, -1.0), abs=1e-13)

    def test_odd_in_phi(self):
        assert elliptic_e_int(-0.7, -1.0) == pytest.approx(-elliptic_e_int(0.7, -1.0), abs=1e-15)

    def test_positive_beta_out_of_range(self):
        with pytest.raises(ValueError):
            elliptic_e_int(math.pi / 2, 1.5)

    def test_positive_beta_in_range(self):
        # ellipeinc is undefined beyond beta = 1, so compare with the raw integrand
        a = elliptic_e_int(0.5, 2.0)
        assert a == pytest.approx(weighted_oracle(math.sin(0.5), 2.0), abs=1e-12)
        assert elliptic_e_int_fast(0.5, 2.0) == a

    def test_nonconvergence_reports_tolerance(self, monkeypatch):
        import pdmech.special as sp

        monkeypatch.setattr(sp.integrate, "quad", lambda *a, **k: (1.0, 0.5, {}, "roundoff"))
        with pytest.raises(QuadratureError) as info:
            elliptic_e_int(1.0, -1.0)
        assert info.value.achieved == 0.5
