"""Closed-form Poschl-Teller orbits for each mass family.

Prints turning points, period and the conserved quantities for the
benchmark parameter sets.

    python3 demos/orbits.py
"""

import numpy as np

from pdmech import MassModel, SystemSpec
from pdmech.trajectories import TrajectorySpec, is_confined, sample_trajectory

MASSES = {
    "doubly singular": MassModel.doubly_singular(beta=-1.0),
    "singular": MassModel.singular(),
    "regular": MassModel.regular(),
}


def main():
    print(f"{'mass':<18}{'gamma':>6}{'E':>7}{'x_min':>11}{'x_max':>11}{'T':>9}{'H drift':>11}")
    for name, mass in MASSES.items():
        for gamma, eps, energies in ((1, 2.0, (2.5, 4.0, 5.5)), (-1, -2.0, (-1.5, -1.0, -0.5))):
            spec = SystemSpec.poschl_teller(mass, gamma, 0.5, eps)
            for E in energies:
                ts = TrajectorySpec(spec, E)
                if not is_confined(ts):
                    continue
                tr = sample_trajectory(ts, 0.0, ts.period, 401)
                drift = np.ptp(tr.H_inv) / abs(E)
                print(f"{name:<18}{gamma:>+6d}{E:>7.2f}{tr.x.min():>11.5f}{tr.x.max():>11.5f}"
                      f"{ts.period:>9.4f}{drift:>11.1e}")


if __name__ == "__main__":
    main()
