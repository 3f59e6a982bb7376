"""The Leray residue of a first order pole.

For a form (g/s) dz0 /\\ ... /\\ dzn with s vanishing to first order, the
residue along {s = 0} is computed chart by chart: in the chart where
ds/dz_i is inverted, the residue is (+-) g / (ds/dz_i) times the volume
form with dz_i removed.  The defining property is exact:

    ds /\\ r = g dz0 /\\ ... /\\ dzn

holds as an identity of forms with rational function coefficients, and
the difference of any two chart representatives is annihilated by ds.
"""

from resilift import Polynomial, d_of_polynomial, leray_residue, volume_form, wedge

Z = ("z0", "z1", "z2")


def main():
    z0, z1, z2 = Polynomial.generators(Z)
    s = z0**3 + z1**3 + z2**3
    g = Polynomial.one(Z)
    ds = d_of_polynomial(s)
    target = volume_form(Z, g)

    print(f"s = {s}")
    print(f"g = {g}")
    print()

    residues = []
    for chart in range(3):
        r = leray_residue(g, s, chart)
        identity = wedge(ds, r.form)
        print(f"chart {chart}: r = {r.form}")
        print(f"  ds /\\ r = g dz exactly: {identity == target}")
        residues.append(r.form)

    print()
    for i in range(3):
        for j in range(i + 1, 3):
            diff = wedge(ds, residues[i] - residues[j])
            print(f"ds /\\ (r{i} - r{j}) = 0: {diff.is_zero}")

    print()
    print("the chart sign alternates so that every chart satisfies the same")
    print("identity; without it, odd charts would produce -g dz instead.")


if __name__ == "__main__":
    main()
