"""Graphs: canonical forms, enumeration, chromatic polynomials, chordality."""

import itertools
import random

import pytest

from hyparr.errors import InputError
from hyparr.graphs import (
    Graph,
    canonical_form,
    chromatic_polynomial,
    connected_graph_reps,
    is_chordal,
    is_connected,
    make_graph,
)


def k_n(n):
    return make_graph(n, itertools.combinations(range(n), 2))


def cycle(n):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


THETA = make_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])


def chromatic_oracle(g):
    """Count proper colorings for k = 0..n by brute force and interpolate.

    The chromatic polynomial has degree n, so the n+1 counted values pin it
    down; Newton forward differences recover exact integer coefficients.
    """
    from fractions import Fraction

    n = g.vertex_count
    values = []
    for k in range(n + 1):
        count = 0
        for coloring in itertools.product(range(k), repeat=n):
            if all(coloring[u] != coloring[v] for u, v in g.edges):
                count += 1
        values.append(count)
    diffs = values[:]
    newton = []
    for _ in range(n + 1):
        newton.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    # p(x) = sum_j newton[j] * C(x, j); expand into monomial coefficients
    coeffs = [Fraction(0)] * (n + 1)
    basis = [Fraction(1)]  # coefficients of C(x, j), built by recurrence
    for j, nw in enumerate(newton):
        if j:
            newb = [Fraction(0)] * (len(basis) + 1)
            for i, c in enumerate(basis):
                newb[i + 1] += c
                newb[i] -= c * (j - 1)
            basis = [c / j for c in newb]
        for i, c in enumerate(basis):
            coeffs[i] += nw * c
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out


def test_graph_validation():
    with pytest.raises(InputError):
        make_graph(3, [(0, 0)])
    with pytest.raises(InputError):
        make_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(2, ((0, 5),))


def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 7)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        g = make_graph(n, edges)
        key = canonical_form(g)
        perm = list(range(n))
        rng.shuffle(perm)
        relabeled = make_graph(n, [(perm[u], perm[v]) for u, v in edges])
        assert canonical_form(relabeled) == key


def test_canonical_form_matches_full_scan():
    # oracle: min over all permutations, bit order (0,1),(0,2),(1,2),(0,4)...
    def oracle(g):
        n = g.vertex_count
        adj = set(g.edges)
        best = None
        for perm in itertools.permutations(range(n)):
            bits = []
            for j in range(n):
                for i in range(j):
                    e = (perm[i], perm[j]) if perm[i] < perm[j] else (perm[j], perm[i])
                    bits.append(1 if e in adj else 0)
            if best is None or bits < best:
                best = bits
        total = n * (n - 1) // 2
        out = 0
        for idx, b in enumerate(best):
            if b:
                out |= 1 << (total - 1 - idx)
        return out

    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 6)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = make_graph(n, edges)
        assert canonical_form(g) == oracle(g)


def test_connected_graph_reps_counts():
    # classes of connected simple graphs on 1..7 vertices
    reps = connected_graph_reps(7)
    by_n = {}
    for g in reps:
        by_n[g.vertex_count] = by_n.get(g.vertex_count, 0) + 1
    assert by_n == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
    assert all(is_connected(g) for g in reps)
    keys = [(g.vertex_count, canonical_form(g)) for g in reps]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_connected_graph_reps_against_labeled_scan():
    # brute-force dedup of all labeled connected graphs on <= 5 vertices
    for n in range(1, 6):
        seen = set()
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph(n, tuple(sorted(p for i, p in enumerate(pairs) if mask >> i & 1)))
            if is_connected(g):
                seen.add(canonical_form(g))
        expect = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21}[n]
        assert len(seen) == expect


def test_chromatic_k3():
    # k^3 - 3k^2 + 2k
    assert chromatic_polynomial(k_n(3)) == [0, 2, -3, 1]


def test_chromatic_c4():
    # (k-1)^4 + (k-1) = k^4 - 4k^3 + 6k^2 - 3k  (frozen from the oracle)
    assert chromatic_oracle(cycle(4)) == [0, -3, 6, -4, 1]
    assert chromatic_polynomial(cycle(4)) == [0, -3, 6, -4, 1]


def test_chromatic_theta():
    # frozen from the deletion-contraction oracle by hand:
    # chi = k^6 - 7k^5 + 21k^4 - 33k^3 + 27k^2 - 9k
    assert chromatic_polynomial(THETA) == [0, -9, 27, -33, 21, -7, 1]
    assert chromatic_oracle(THETA) == [0, -9, 27, -33, 21, -7, 1]


def test_chromatic_matches_oracle_random():
    rng = random.Random(2024)
    for _ in range(15):
        n = rng.randint(1, 5)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = make_graph(n, edges)
        assert chromatic_polynomial(g) == chromatic_oracle(g)


def test_chromatic_vanishes_at_one_with_edges():
    for g in [k_n(3), k_n(5), cycle(6), THETA, path(4)]:
        coeffs = chromatic_polynomial(g)
        assert sum(coeffs) == 0  # chi(1) = 0 whenever there is an edge


def test_chordal():
    assert is_chordal(k_n(3))
    assert is_chordal(k_n(6))
    assert is_chordal(path(5))
    assert not is_chordal(cycle(4))
    assert not is_chordal(cycle(6))
    assert not is_chordal(THETA)
    # octahedron = K_2,2,2: 4-cycles without chords
    octa = make_graph(6, [e for e in itertools.combinations(range(6), 2)
                          if e not in {(0, 3), (1, 4), (2, 5)}])
    assert not is_chordal(octa)


def test_chordal_matches_cycle_scan_oracle():
    # chordal iff no induced cycle of length >= 4
    def has_chordless_long_cycle(g):
        n = g.vertex_count
        adj = set(g.edges)

        def connected_cycle(vs):
            # check vs can be cyclically ordered using only edges inside vs
            for perm in itertools.permutations(vs[1:]):
                order = (vs[0],) + perm
                ok = True
                for i in range(len(order)):
                    u, v = order[i], order[(i + 1) % len(order)]
                    if ((u, v) if u < v else (v, u)) not in adj:
                        ok = False
                        break
                if ok:
                    # induced: no chords allowed
                    chords = [
                        (a, b)
                        for a, b in itertools.combinations(sorted(order), 2)
                        if (a, b) in adj
                    ]
                    if len(chords) == len(order):
                        return True
            return False

        for size in range(4, n + 1):
            for vs in itertools.combinations(range(n), size):
                if connected_cycle(vs):
                    return True
        return False

    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 6)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = make_graph(n, edges)
        assert is_chordal(g) == (not has_chordless_long_cycle(g))
