"""An obstructed class: the Fermat cubic cone.

For s = z0^3 + z1^3 + z2^3 with weights (1/3, 1/3, 1/3) the total weight
is kappa = 1, so the empty combination already reaches 1 - kappa = 0 and
the lift criterion fails.  The residue class of (1/s) dz does not lift;
the obstruction is itself a residue: a 1-form on the curve
{1 + u1^3 + u2^3 = 0} in the blow-up chart, produced by dividing the
blown-up form by the strict transform a second time.

The report bundles every intermediate object and re-verifies the defining
identities on demand.
"""

from fractions import Fraction

from resilift import (
    Polynomial,
    WeightSystem,
    analyze,
    differential,
    equal_mod_hypersurface,
    scalar_mod_hypersurface,
)

Z = ("z0", "z1", "z2")


def main():
    z0, z1, z2 = Polynomial.generators(Z)
    s = z0**3 + z1**3 + z2**3
    g = Polynomial.one(Z)
    w = WeightSystem(("1/3", "1/3", "1/3"))

    report = analyze(s, g, w)
    print(f"s = {s}, g = {g}, weights {w}")
    print(f"kappa = {report.kappa}")
    witness = report.criterion.witness
    print(f"criterion fails with witness k = {witness.k} "
          f"(kappa + sum(k*a) = {witness.value})")
    print(f"verdict: {report.verdict.kind}")
    print()

    print(f"Leray residue (chart {report.leray.chart_index}): {report.leray.form}")
    print(f"blow-up u0 exponent: {report.blowup_exponent} "
          "(a first order pole of the residue class at the exceptional set)")
    second = report.second_residue
    print(f"second residue (chart curve {second.relation} = 0):")
    print(f"  {second.form}")
    print()

    # compare against the rotation-invariant representative
    uv = second.form.variables
    u1 = Polynomial.variable(uv, "u1")
    u2 = Polynomial.variable(uv, "u2")
    rep = (differential(uv, "u2") * u1 - differential(uv, "u1") * u2) * Fraction(1, 3)
    scalar = scalar_mod_hypersurface(second.form, rep, second.relation)
    print(f"modulo the curve equation, the second residue equals "
          f"{scalar} * (1/3)(u1 du2 - u2 du1)")
    assert equal_mod_hypersurface(second.form, rep * scalar, second.relation)

    print(f"all defining identities re-verify: {report.verify()}")
    print()

    # a numerator with no weight-0 part leaves the question open
    inconclusive = analyze(s, z0, w)
    print(f"with g = {z0} instead: verdict {inconclusive.verdict.kind}")
    for line in inconclusive.warnings:
        print(f"  warning: {line}")


if __name__ == "__main__":
    main()
