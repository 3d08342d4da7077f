"""Benchmark parameter sets shared by the tests.

trigonometric: alpha=1/2, beta=-1, m0=lambda=1, eps=2   (gamma=+1)
hyperbolic:    same with eps=-2                         (gamma=-1)
exponential:   alpha=1, m0=1/2, kappa in {-2, -4}, eps=+/-2
"""

from pdmech import MassModel, SystemSpec

TRIG_ENERGIES = (2.5, 4.0, 5.5)
HYP_ENERGIES = (-1.5, -1.0, -0.5)
EXP_POS_ENERGIES = (2.5, 4.0, 5.5)
EXP_NEG_ENERGIES = (-1.75, -1.5, -1.0)


def family_models():
    return {
        "DoublySingular": MassModel.doubly_singular(m0=1.0, lam=1.0, beta=-1.0),
        "Singular": MassModel.singular(m0=1.0, lam=1.0),
        "Regular": MassModel.regular(m0=1.0, lam=1.0),
    }


def systems():
    """``(label, spec, energies)`` for every family, sign and parameter set."""
    out = []
    for name, mass in family_models().items():
        out.append((f"{name}+", SystemSpec.poschl_teller(mass, 1, 0.5, 2.0), TRIG_ENERGIES))
        out.append((f"{name}-", SystemSpec.poschl_teller(mass, -1, 0.5, -2.0), HYP_ENERGIES))
    for kappa in (-2.0, -4.0):
        mass = MassModel.exponential(m0=0.5, kappa=kappa)
        out.append((f"Exponential(k={kappa:g})+", SystemSpec.poschl_teller(mass, 1, 1.0, 2.0),
                    EXP_POS_ENERGIES))
        out.append((f"Exponential(k={kappa:g})-", SystemSpec.poschl_teller(mass, -1, 1.0, -2.0),
                    EXP_NEG_ENERGIES))
    return out


def system_ids():
    return [label for label, _, _ in systems()]


def trajectory_cases():
    """``(label, spec, E)`` for every benchmark orbit."""
    return [(f"{label} E={E:g}", spec, E) for label, spec, Es in systems() for E in Es]
