"""Weight systems and the lift criterion.

A quasihomogeneous singularity assigns a positive rational weight to each
coordinate.  The total weight kappa decides almost everything: when no
nonnegative integer combination of the weights equals 1 - kappa, the
residue class of a first order pole lifts to the intersection homology of
the hypersurface.  This script walks a few weight systems through the
criterion and prints the nonpositive spectrum that witnesses each answer.
"""

from resilift import WeightSystem, lift_criterion, spectrum_nonpositive

EXAMPLES = [
    ("1/3", "1/3", "1/4"),
    ("1/3", "1/3", "1/3"),
    ("1/2", "1/2", "1/4"),
    ("1/2", "1/4"),
    ("1/5", "1/4", "1/3", "1/2"),
]


def describe(weights):
    w = WeightSystem(weights)
    print(f"weights {w}")
    print(f"  kappa = {w.kappa}, cover order l = {w.cover_order}, "
          f"cover exponents {w.cover_exponents}, C = {w.jacobian_constant}")
    decision = lift_criterion(w)
    if decision.holds:
        print("  criterion holds: the residue class lifts")
    else:
        k = decision.witness.k
        print(f"  criterion fails: witness k = {k} reaches "
              f"kappa + sum(k*a) = {decision.witness.value}")
    entries = spectrum_nonpositive(w)
    if entries:
        shown = ", ".join(f"{e.value} at k={e.k}" for e in entries)
        print(f"  nonpositive spectrum: {shown}")
    else:
        print("  nonpositive spectrum: empty (kappa > 1)")
    zero = [e for e in entries if e.value == 0]
    print(f"  spectrum contains 0: {bool(zero)} "
          f"(equivalent to the criterion failing)")
    print()


def main():
    for weights in EXAMPLES:
        describe(weights)


if __name__ == "__main__":
    main()
