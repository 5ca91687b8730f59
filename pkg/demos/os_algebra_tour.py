"""A short tour of the exterior-algebra and Orlik-Solomon layers.

    python3 demos/os_algebra_tour.py
"""

from hyparr import (
    FieldSpec,
    IdealKind,
    RATIONALS,
    build,
    delta,
    hilbert,
    ideal_generators,
    ideal_membership,
    make_graph,
    monomial,
    r_table,
    wedge,
)
from hyparr.arrangement import from_graph

print("The derivation delta sends e_C to the alternating sum of facets:")
print("  delta(e_012) =", delta(monomial((0, 1, 2))))
print("  delta^2      =", delta(delta(monomial((0, 1, 2)))))

print()
print("Wedge products carry shuffle signs:")
print("  e_1 ^ e_0 =", wedge(monomial((1,)), monomial((0,))))

print()
k3 = from_graph(make_graph(3, [(0, 1), (0, 2), (1, 2)]))
pres = ideal_generators(k3, IdealKind.FULL, 2)
print("K3 has one circuit; its OS ideal in degree 2 is spanned by one row:")
print("  ", pres.generator_matrix)

print()
print("Hilbert series of the four quotients for K3 over Q:")
for q in ("A", "Abar", "Aplus", "IND"):
    print(f"  {q:5s}:", list(hilbert(k3, q, RATIONALS).coefficients))

print()
twogen = build(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                   (1, 1, 1, 1), (1, -1, -1, 1)])
diff = delta(monomial((0, 1, 2, 3, 4))) - delta(monomial((0, 1, 2, 3, 5)))
print("For the 2-generic sextet, the difference of the two chordless")
print("5-circuit differentials is decomposable (an exact lattice membership):")
print("  in Lambda+I:", ideal_membership(twogen, diff, IdealKind.DECOMPOSABLE))

print()
print("r-table of the sextet (rows = degrees, columns = characteristics):")
table = r_table(twogen, [RATIONALS, FieldSpec(2), FieldSpec(3), FieldSpec(5)])
print("  characteristics:", [f.characteristic for f in table.fields])
for m, vals in enumerate(table.values):
    if any(vals):
        print(f"  r_{m} =", list(vals),
              "(field independent)" if table.field_independent[m] else "")
