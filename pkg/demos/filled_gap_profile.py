## Local Casimir stress across a liquid-filled interspace between two
## different dielectric half-spaces. With a filled gap the field-only
## stress picks up a position dependence that the uniform-medium tensor
## cannot show: the latter is one number for the whole gap.
import argparse

import numpy as np

from planarcasimir.engine import interspace, minkowski_stress_zz, stress_profile
from planarcasimir.layers import Wall
from planarcasimir.materials import constant

ap = argparse.ArgumentParser(description="stress map of a filled interspace")
ap.add_argument("--eps-gap", type=float, default=2.0, help="gap filling")
ap.add_argument("--eps-left", type=float, default=9.0, help="left half-space")
ap.add_argument("--eps-right", type=float, default=4.0, help="right half-space")
ap.add_argument("--width", type=float, default=6e-7, help="gap width, m")
ap.add_argument("--samples", type=int, default=11)
args = ap.parse_args()

view = interspace(
    Wall.semi_infinite(constant(eps=args.eps_left)),
    constant(eps=args.eps_gap),
    args.width,
    Wall.semi_infinite(constant(eps=args.eps_right)),
)
profile = stress_profile(view, args.samples)
uniform = minkowski_stress_zz(view)

print(f"# eps {args.eps_left} | eps {args.eps_gap}, {args.width:.2e} m |"
      f" eps {args.eps_right}")
print(f"{'z (m)':>12}  {'T_zz (N/m^2)':>14}  {'error':>10}")
for z, t, err in zip(profile.z, profile.t_zz, profile.error_estimate):
    print(f"{z:12.4e}  {t:14.6e}  {err:10.2e}")

swing = profile.t_zz.max() - profile.t_zz.min()
print(f"# swing across the gap {swing:.3e} N/m^2"
      f" (grows without bound toward the walls)")
print(f"# uniform-medium tensor value {uniform.value:.6e} N/m^2, z-independent")
