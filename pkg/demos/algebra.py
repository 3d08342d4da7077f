"""Residuals of the ladder factorization and the deformed bracket
relations, plus the tilde map to a constant-mass system.

    python3 demos/algebra.py
"""

from pdmech import MassModel, SystemSpec
from pdmech.factorization import default_grid, poisson_bracket, verify_algebra
from pdmech.transforms import tilde_transform


def main():
    masses = {
        "doubly singular": MassModel.doubly_singular(beta=-1.0),
        "singular": MassModel.singular(),
        "regular": MassModel.regular(),
        "exponential": MassModel.exponential(m0=0.5, kappa=-2.0),
        "constant": MassModel.constant(),
    }
    print(f"{'mass':<17}{'gamma':>6}{'factor':>11}{'{A-,A+}':>11}{'{H,A}':>11}{'{Qt,Pt}-1':>11}")
    for name, mass in masses.items():
        alpha = 1.0 if name == "exponential" else 0.5
        for gamma in (1, -1):
            spec = SystemSpec.poschl_teller(mass, gamma, alpha, 2.0 * gamma)
            grid = default_grid(spec, 12, 12)
            rep = verify_algebra(spec, grid)
            tilde = max(abs(poisson_bracket(lambda x, p: tilde_transform(spec, x, p)[0],
                                            lambda x, p: tilde_transform(spec, x, p)[1],
                                            x, p, richardson=True) - 1.0) for x, p in grid[::7])
            print(f"{name:<17}{gamma:>+6d}{rep.max_factorization_residual:>11.1e}"
                  f"{rep.max_bracket1_residual:>11.1e}{rep.max_bracket2_residual:>11.1e}{tilde:>11.1e}")


if __name__ == "__main__":
    main()
