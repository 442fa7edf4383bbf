## How much of the mirror-to-mirror attraction survives when the gap is
## filled with a dielectric liquid, and how far off the uniform-medium
## (Minkowski) prediction is. The closed forms are instant; --check adds
## slow full-quadrature rows to confirm them.
import argparse

import numpy as np

from planarcasimir.engine import minkowski_plate_force, plate_force
from planarcasimir.layers import CavityConfig, PerfectMirrorPlate, Wall
from planarcasimir.limits import (
    StaticMedium,
    casimir_generalized,
    force_ratio,
    minkowski_generalized,
)
from planarcasimir.materials import constant


def mirror_cavity(eps, d1, d3):
    return CavityConfig(
        left_wall=Wall.perfect_mirror(),
        medium=constant(eps=eps),
        d1=d1,
        plate=PerfectMirrorPlate(),
        d3=d3,
        right_wall=Wall.perfect_mirror(),
    )


def main():
    ap = argparse.ArgumentParser(
        description="filled-gap force vs the uniform-medium prediction")
    ap.add_argument("--d1", type=float, default=1e-6, help="near gap, m")
    ap.add_argument("--d3", type=float, default=5e-6, help="far gap, m")
    ap.add_argument("--eps-max", type=float, default=25.0)
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--check", action="store_true",
                    help="recompute three rows by full quadrature")
    args = ap.parse_args()

    print(f"# mirror | eps gap {args.d1:.2e} m | mirror plate |"
          f" eps gap {args.d3:.2e} m | mirror")
    print(f"{'eps':>6}  {'F (N/m^2)':>14}  {'F_minkowski':>14}  "
          f"{'ratio M/F':>10}  {'screened to':>11}")
    vacuum = casimir_generalized(StaticMedium(eps=1.0), args.d1, args.d3)
    for eps in np.geomspace(1.0, args.eps_max, args.points):
        f = casimir_generalized(StaticMedium(eps=float(eps)), args.d1, args.d3)
        fm = minkowski_generalized(float(eps), args.d1, args.d3)
        print(f"{eps:6.2f}  {f:14.6e}  {fm:14.6e}  {fm / f:10.6f}  "
              f"{abs(f) / abs(vacuum):10.1%}")
    print(f"# ratio tends to 3/2 from below; force_ratio(eps) ="
          f" 3 eps / (2 eps + 1)")

    if args.check:
        print("# quadrature check (rel_tol 1e-8)")
        for eps in (2.0, 4.0, 10.0):
            cavity = mirror_cavity(eps, args.d1, args.d3)
            f = plate_force(cavity)
            fm = minkowski_plate_force(cavity)
            ratio = fm.force_per_area / f.force_per_area
            print(f"{eps:6.2f}  {f.force_per_area:14.6e}  "
                  f"{fm.force_per_area:14.6e}  {ratio:10.6f}  "
                  f"closed {force_ratio(eps):10.6f}")


if __name__ == "__main__":
    main()
