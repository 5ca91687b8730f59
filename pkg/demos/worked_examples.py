"""Walk through the worked examples that anchor the package.

Each block builds an arrangement, classifies it, and (when the homotopy
pipeline applies) prints the second nilpotent quotient data.  Run from the
repository root:

    python3 demos/worked_examples.py
"""

from hyparr import (
    build,
    classify,
    from_graph,
    gr1_invariants,
    make_graph,
    torsion_and_rank_report,
)


def banner(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


def describe(name, arr):
    cls = classify(arr)
    p = "infinite" if cls.p is None else cls.p
    print(f"{name}: n={arr.n}, rank={cls.r}, hypersolvable={cls.hypersolvable}, "
          f"supersolvable={cls.supersolvable}, p={p}")
    if cls.series is not None:
        print(f"  composition series exponents: {cls.series.exponents}")
    if cls.hypersolvable and not cls.supersolvable:
        gr1 = gr1_invariants(arr)
        rep, book = torsion_and_rank_report(arr)
        print(f"  gr0 rank {book['gr0_rank']}, gr1 rank {gr1.free_rank}, "
              f"gr1 torsion {list(gr1.torsion_factors) or 'none'}")
        print(f"  torsion equivalences all agree: "
              f"{rep.gr1_torsion_free == rep.a_plus_free_p2 == rep.ind_free_p2}")
    return cls


banner("A triangle (K3): supersolvable, so the homotopy layer is skipped")
k3 = from_graph(make_graph(3, [(0, 1), (0, 2), (1, 2)]))
describe("K3", k3)
print("  betti:", k3.betti_mobius())

banner("The theta graph: hexagon plus the long chord, triangle-free")
theta = from_graph(make_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                  (0, 5), (1, 4)]))
cls = describe("theta", theta)
print("  circuits by size:", sorted(len(c) for c in theta.circuits()))
print("  chordless 4-circuits:", theta.chordless_circuits(4))
print("  (rank 5 > p+1 = 3: the interesting regime beyond maximal p)")

banner("A 2-generic arrangement in C^4 with a one-dimensional r_4")
twogen6 = build(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                    (1, 1, 1, 1), (1, -1, -1, 1)])
describe("xyzt(x+y+z+t)(x-y-z+t)", twogen6)
print("  chordless 5-circuits:", twogen6.chordless_circuits(5))

banner("The D4 Coxeter arrangement: aspherical but NOT hypersolvable")
normals = []
for i in range(4):
    for j in range(i + 1, 4):
        for s in (-1, 1):
            v = [0] * 4
            v[i] = 1
            v[j] = s
            normals.append(tuple(v))
d4 = build(4, normals)
describe("D4", d4)
print("  (no composition series exists; the search above is exhaustive)")
