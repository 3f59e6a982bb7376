"""The branched cover and the blow-up chart.

Rational weights are cleared by the cover z_i -> z_i^(l a_i), where l is
the least common denominator.  The equation becomes homogeneous of degree
l, at the cost of the Jacobian factor C prod z_i^(l a_i - 1).  Blowing up
the origin in the chart z_0 = u_0, z_i = u_0 u_i then splits the pulled
back form into a pure power of u_0 times du_0 /\\ (...) plus a remainder
without du_0.  The u_0 exponent is forced by weight bookkeeping alone:

    exponent = l * (alpha - 1 + kappa) - 1

for a numerator of weight alpha.  The script shows the whole chain for
one example and checks the exponent against the formula.
"""

from fractions import Fraction

from resilift import (
    Polynomial,
    WeightSystem,
    blowup_pullback,
    cover_pullback_form,
    cover_image,
    parse_polynomial,
    pullback_singularity_probe,
    valuation_poly,
)
from resilift.residue import blowup_exponent_formula

XYZ = ("x", "y", "z")


def main():
    s = parse_polynomial("(x + z^2)^2 + y^2 - z^4", XYZ)
    w = WeightSystem(("1/2", "1/2", "1/4"))
    g = Polynomial.one(XYZ)

    print(f"s = {s}")
    print(f"weights {w}: kappa = {w.kappa}, l = {w.cover_order}, "
          f"C = {w.jacobian_constant}")
    print()

    image = cover_image(s, w)
    print(f"cover image of s: {image}")
    probe = pullback_singularity_probe(s, w)
    print(f"isolatedness probe: {probe.status}", end="")
    if probe.missing:
        print(f" (no pure monomial in the partials for: {', '.join(probe.missing)})")
    else:
        print()
    print()

    omega_hat = cover_pullback_form(g, s, w)
    top = tuple(range(3))
    print(f"cover pullback of (g/s) dx /\\ dy /\\ dz has coefficient")
    print(f"  {omega_hat.components[top]}")
    print()

    exponent, split = blowup_pullback(omega_hat, w)
    alpha = valuation_poly(g, w)
    predicted = blowup_exponent_formula(alpha, w)
    print(f"blow-up chart z0 = u0, z1 = u0 u1, z2 = u0 u2:")
    print(f"  u0 exponent of the du0 part: {exponent}")
    print(f"  l*(alpha - 1 + kappa) - 1 = "
          f"{w.cover_order}*({alpha} - 1 + {w.kappa}) - 1 = {predicted}")
    print(f"  agreement: {exponent == predicted}")
    print(f"  remainder without du0 is zero: {split.remainder.is_zero}")


if __name__ == "__main__":
    main()
