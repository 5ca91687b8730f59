"""Finite simple graphs: canonical forms, chromatic polynomials, chordality.

A graph here is an immutable vertex count plus a sorted tuple of edges
(u, v) with u < v.  Canonical forms are minimal adjacency bit-strings over
all vertex permutations, computed by prefix-pruned backtracking; they are
the deduplication key for isomorphism classes and the memoization key for
deletion-contraction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < v < self.vertex_count):
                raise InputError(f"edge {e} out of range or unordered")
            if e in seen:
                raise InputError(f"multi-edge {e}")
            seen.add(e)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def make_graph(vertex_count: int, edges) -> Graph:
    """Normalize edge pairs and sort them lexicographically."""
    norm = []
    for u, v in edges:
        if u == v:
            raise InputError(f"loop at vertex {u}")
        norm.append((u, v) if u < v else (v, u))
    norm.sort()
    for a, b in zip(norm, norm[1:]):
        if a == b:
            raise InputError(f"multi-edge {a}")
    return Graph(vertex_count, tuple(norm))


def _pair_index(i: int, j: int) -> int:
    # pairs ordered (0,1),(0,2),(1,2),(0,3),...: placing vertex j fixes
    # exactly the next j bits, which is what the prefix pruning needs
    return j * (j - 1) // 2 + i


def canonical_form(g: Graph) -> int:
    """Minimal adjacency bit-string over all vertex permutations.

    Returned packed as an integer with the pair (0,1) in the most
    significant position, so numeric order equals lexicographic order on
    the bit-strings.
    """
    n = g.vertex_count
    adj = [[False] * n for _ in range(n)]
    for u, v in g.edges:
        adj[u][v] = adj[v][u] = True
    total = n * (n - 1) // 2
    best: list[int] | None = None
    perm = [0] * n
    used = [False] * n

    def rec(j: int, bits: list[int], tight: bool) -> None:
        # tight: bits equalled best's prefix when last compared; pruning is
        # only ever applied under it, and the leaf does a full comparison,
        # so a best replaced mid-search cannot cause a wrong result.
        nonlocal best
        if j == n:
            if best is None or bits < best:
                best = bits[:]
            return
        seg_start = j * (j - 1) // 2
        for v in range(n):
            if used[v]:
                continue
            seg = [1 if adj[perm[i]][v] else 0 for i in range(j)]
            child_tight = tight
            if best is not None and tight:
                ref = best[seg_start : seg_start + j]
                if seg > ref:
                    continue
                if seg < ref:
                    child_tight = False
            used[v] = True
            perm[j] = v
            rec(j + 1, bits + seg, child_tight)
            used[v] = False

    rec(0, [], True)
    assert best is not None
    out = 0
    for idx, b in enumerate(best):
        if b:
            out |= 1 << (total - 1 - idx)
    return out


def is_connected(g: Graph) -> bool:
    n = g.vertex_count
    if n == 0:
        return True
    nbrs = [[] for _ in range(n)]
    for u, v in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def is_chordal(g: Graph) -> bool:
    """Simplicial-vertex elimination; succeeds exactly on chordal graphs."""
    nbrs = {v: set() for v in range(g.vertex_count)}
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    remaining = set(range(g.vertex_count))
    while remaining:
        simplicial = None
        for v in remaining:
            nv = nbrs[v]
            if all(b in nbrs[a] for a in nv for b in nv if a < b):
                simplicial = v
                break
        if simplicial is None:
            return False
        for w in nbrs[simplicial]:
            nbrs[w].discard(simplicial)
        del nbrs[simplicial]
        remaining.discard(simplicial)
    return True


_chromatic_cache: dict[tuple[int, int], tuple[int, ...]] = {}


def chromatic_polynomial(g: Graph) -> list[int]:
    """Coefficients of the chromatic polynomial, index = power of k.

    Deletion-contraction, memoized on (vertex count, canonical form) for
    graphs small enough to canonicalize quickly.
    """
    n = g.vertex_count
    if not g.edges:
        return [0] * n + [1]
    key = None
    if n <= 8:
        key = (n, canonical_form(g))
        hit = _chromatic_cache.get(key)
        if hit is not None:
            return list(hit)
    u, v = g.edges[0]
    deleted = Graph(n, g.edges[1:])
    # contract v into u: relabel w > v down by one
    cedges = set()
    for a, b in g.edges[1:]:
        a2 = u if a == v else (a - 1 if a > v else a)
        b2 = u if b == v else (b - 1 if b > v else b)
        if a2 != b2:
            cedges.add((a2, b2) if a2 < b2 else (b2, a2))
    contracted = Graph(n - 1, tuple(sorted(cedges)))
    pd = chromatic_polynomial(deleted)
    pc = chromatic_polynomial(contracted)
    out = [a - b for a, b in zip(pd, pc + [0] * (len(pd) - len(pc)))]
    if key is not None:
        _chromatic_cache[key] = tuple(out)
    return out


def connected_graph_reps(max_vertices: int, min_vertices: int = 1) -> list[Graph]:
    """One representative per isomorphism class of connected simple graphs.

    Built incrementally: every connected graph on n vertices arises from a
    connected graph on n-1 vertices by attaching one new vertex to a
    nonempty neighbor set (delete any non-cut vertex to see this).
    Deterministic order: by vertex count, then canonical form.
    """
    if max_vertices < 1:
        return []
    levels: list[list[tuple[int, Graph]]] = [[(0, Graph(1, ()))]]
    for n in range(2, max_vertices + 1):
        seen: dict[int, Graph] = {}
        for _, g in levels[-1]:
            for mask in range(1, 1 << (n - 1)):
                edges = list(g.edges)
                for w in range(n - 1):
                    if mask >> w & 1:
                        edges.append((w, n - 1))
                cand = Graph(n, tuple(sorted(edges)))
                key = canonical_form(cand)
                if key not in seen:
                    seen[key] = cand
        levels.append(sorted(seen.items()))
    out: list[Graph] = []
    for n in range(min_vertices, max_vertices + 1):
        out.extend(g for _, g in levels[n - 1])
    return out
