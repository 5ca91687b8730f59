"""Central hyperplane arrangements and their matroid data.

An arrangement is an ordered list of nonzero integer normal vectors, no two
proportional, in a fixed ambient dimension; it is the single source of
truth for ranks, circuits, flats and everything built on top.  Graphic
arrangements remember their source graph, which routes subset-rank queries
through a union-find shortcut (cross-checked against the generic
elimination in the test suite).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .graphs import Graph
from .intlinalg import int_rank


class Arrangement:
    """Immutable after construction; all queries are pure and cached."""

    def __init__(
        self,
        ambient_dim: int,
        normals: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        source_graph: Optional[Graph] = None,
    ):
        if ambient_dim < 1:
            raise InputError(f"ambient dimension must be positive, got {ambient_dim}")
        norm = []
        for idx, v in enumerate(normals):
            vec = tuple(int(x) for x in v)
            if len(vec) != ambient_dim:
                raise InputError(
                    f"hyperplane {idx}: normal has {len(vec)} coordinates, expected {ambient_dim}"
                )
            if not any(vec):
                raise InputError(f"hyperplane {idx}: zero normal vector")
            norm.append(vec)
        for i, j in itertools.combinations(range(len(norm)), 2):
            if _proportional(norm[i], norm[j]):
                raise InputError(
                    f"hyperplanes {i} and {j} are proportional: {norm[i]} ~ {norm[j]}"
                )
        self.ambient_dim = ambient_dim
        self.normals = tuple(norm)
        if labels is None:
            labels = [f"H{i}" for i in range(len(norm))]
        if len(labels) != len(norm):
            raise InputError("label count does not match hyperplane count")
        self.labels = tuple(str(s) for s in labels)
        self.source_graph = source_graph
        self._rank_cache: dict[frozenset[int], int] = {}
        self._circuits: list[tuple[int, ...]] | None = None
        self._circuits_upto = -1
        self._lattice = None
        self.cache: dict = {}  # scratch space for higher layers (os data etc.)

    @property
    def n(self) -> int:
        return len(self.normals)

    def __repr__(self) -> str:
        src = " graphic" if self.source_graph else ""
        return f"Arrangement(dim={self.ambient_dim}, n={self.n}{src})"

    # ----------------------------------------------------------- ranks

    def subset_rank(self, indices: Iterable[int]) -> int:
        """Rank over Q of the chosen normals (exact fraction-free elimination)."""
        s = frozenset(indices)
        for i in s:
            if not 0 <= i < self.n:
                raise InputError(f"hyperplane index {i} out of range")
        return int_rank([self.normals[i] for i in s])

    def rank(self) -> int:
        return self._rank(frozenset(range(self.n)))

    def _rank(self, s: frozenset[int]) -> int:
        hit = self._rank_cache.get(s)
        if hit is not None:
            return hit
        if self.source_graph is not None:
            r = self._graphic_rank(s)
        else:
            r = int_rank([self.normals[i] for i in s])
        self._rank_cache[s] = r
        return r

    def _graphic_rank(self, s: frozenset[int]) -> int:
        # rank of an edge set = touched vertices - components (union-find)
        parent: dict[int, int] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        edges = self.source_graph.edges
        comps = 0
        verts = 0
        for i in s:
            u, v = edges[i]
            for w in (u, v):
                if w not in parent:
                    parent[w] = w
                    verts += 1
                    comps += 1
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return verts - comps

    def is_dependent(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return self._rank(s) < len(s)

    # --------------------------------------------------------- circuits

    def circuits(self, max_size: int | None = None) -> list[tuple[int, ...]]:
        """All circuits of size <= max_size, lexicographically sorted.

        A circuit has size at most rank+1, so the enumeration never looks
        past that.  Minimality comes for free from the ascending sweep: a
        dependent set containing no smaller circuit is itself a circuit.
        """
        if max_size is None:
            max_size = self.n
        if max_size > self.n:
            raise InputError(f"max_size {max_size} exceeds {self.n} hyperplanes")
        cap = min(max_size, self.rank() + 1)
        if self._circuits is None or self._circuits_upto < cap:
            found: list[tuple[int, ...]] = []
            masks: list[int] = []
            for size in range(3, cap + 1):
                for combo in itertools.combinations(range(self.n), size):
                    m = 0
                    for i in combo:
                        m |= 1 << i
                    if any(cm & m == cm for cm in masks):
                        continue
                    if self.is_dependent(combo):
                        found.append(combo)
                        masks.append(m)
            self._circuits = found
            self._circuits_upto = cap
        return [c for c in self._circuits if len(c) <= max_size]

    def has_chord(self, circuit: Sequence[int]) -> bool:
        """True when some c outside splits the set into two dependent halves."""
        cset = list(circuit)
        others = [c for c in range(self.n) if c not in circuit]
        k = len(cset)
        for c in others:
            # partitions with cset[0] pinned to the first part
            for bits in range(1 << (k - 1)):
                part1 = [cset[0]] + [cset[i + 1] for i in range(k - 1) if bits >> i & 1]
                if len(part1) == k:
                    continue
                part2 = [x for x in cset if x not in part1]
                if self.is_dependent(part1 + [c]) and self.is_dependent(part2 + [c]):
                    return True
        return False

    def chordless_circuits(self, size: int) -> list[tuple[int, ...]]:
        if size < 3:
            raise InputError(f"circuits have size >= 3, got {size}")
        return [c for c in self.circuits(min(size, self.n)) if len(c) == size and not self.has_chord(c)]

    # ------------------------------------------------- genericity data

    def smallest_dependent_size(self) -> int | None:
        """c(A): size of the smallest dependent subset; None when independent."""
        if self.rank() == self.n:
            return None
        for size in range(3, self.n + 1):
            for combo in itertools.combinations(range(self.n), size):
                if self.is_dependent(combo):
                    return size
        return None

    def c_and_genericity(self) -> tuple[int | None, bool | None]:
        """(c, two_generic); (None, None) for an independent arrangement."""
        c = self.smallest_dependent_size()
        if c is None:
            return None, None
        return c, c > 3

    # ------------------------------------------------------------ flats

    def intersection_lattice(self) -> "IntersectionLattice":
        if self._lattice is None:
            self._lattice = IntersectionLattice(self)
        return self._lattice

    def betti_mobius(self) -> list[int]:
        """Whitney numbers b_0..b_r: sums of |mu| over flats of each rank."""
        lat = self.intersection_lattice()
        out = [0] * (self.rank() + 1)
        for flat in lat.flats:
            out[lat.rank_of[flat]] += abs(lat.mobius[flat])
        return out


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    k = next(i for i, x in enumerate(a) if x)
    if not b[k]:
        return False
    return all(a[k] * y == b[k] * x for x, y in zip(a, b))


def from_graph(g: Graph) -> Arrangement:
    """Graphic arrangement: edge {i, j}, i < j, gives the normal e_i - e_j."""
    normals = []
    labels = []
    for u, v in g.edges:
        vec = [0] * g.vertex_count
        vec[u] = 1
        vec[v] = -1
        normals.append(vec)
        labels.append(f"{u + 1}-{v + 1}")
    return Arrangement(g.vertex_count, normals, labels, source_graph=g)


def build(
    ambient_dim: int,
    normals: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
) -> Arrangement:
    return Arrangement(ambient_dim, normals, labels)


class IntersectionLattice:
    """All flats of the arrangement with ranks, Mobius values, join and meet.

    Flats are frozensets of hyperplane indices; the order relation is
    containment.  Built level by level from closures, so every closure of a
    subset appears exactly once.
    """

    def __init__(self, arr: Arrangement):
        self.arr = arr
        n = arr.n
        full = frozenset(range(n))
        levels: list[set[frozenset[int]]] = [{self.closure(frozenset())}]
        while True:
            nxt: set[frozenset[int]] = set()
            for flat in levels[-1]:
                rest = full - flat
                for h in rest:
                    nxt.add(self.closure(flat | {h}))
            if not nxt:
                break
            levels.append(nxt)
        self.flats: list[frozenset[int]] = []
        self.rank_of: dict[frozenset[int], int] = {}
        for r, level in enumerate(levels):
            for flat in sorted(level, key=sorted):
                self.flats.append(flat)
                self.rank_of[flat] = r
        self._flat_set = set(self.flats)
        self.mobius = self._mobius()
        self._join_cache: dict[tuple[frozenset, frozenset], frozenset] = {}

    def closure(self, s: frozenset[int]) -> frozenset[int]:
        arr = self.arr
        r = arr._rank(s)
        out = set(s)
        for h in range(arr.n):
            if h not in out and arr._rank(s | {h}) == r:
                out.add(h)
        return frozenset(out)

    def _mobius(self) -> dict[frozenset[int], int]:
        mob: dict[frozenset[int], int] = {}
        for flat in self.flats:  # rank-ascending order
            below = sum(mob[g] for g in mob if g < flat)
            mob[flat] = 1 if self.rank_of[flat] == 0 else -below
        return mob

    def join(self, x: frozenset[int], y: frozenset[int]) -> frozenset[int]:
        key = (x, y) if sorted(x) <= sorted(y) else (y, x)
        hit = self._join_cache.get(key)
        if hit is None:
            hit = self.closure(x | y)
            self._join_cache[key] = hit
        return hit

    def meet(self, x: frozenset[int], y: frozenset[int]) -> frozenset[int]:
        m = x & y
        if m not in self._flat_set:
            raise InputError(f"intersection {sorted(m)} is not a flat")
        return m

    def is_modular(self, x: frozenset[int]) -> bool:
        rx = self.rank_of[x]
        for y in self.flats:
            ry = self.rank_of[y]
            if self.rank_of[self.join(x, y)] + self.rank_of[x & y] != rx + ry:
                return False
        return True

    def has_modular_chain(self) -> bool:
        """Maximal chain of modular flats, one per rank: the supersolvable test."""
        top_rank = self.arr.rank()
        modular = {f for f in self.flats if self.is_modular(f)}
        by_rank: dict[int, list[frozenset[int]]] = {}
        for f in modular:
            by_rank.setdefault(self.rank_of[f], []).append(f)

        def extend(cur: frozenset[int], r: int) -> bool:
            if r == top_rank:
                return True
            for cand in by_rank.get(r + 1, ()):
                if cur < cand and extend(cand, r + 1):
                    return True
            return False

        bottom = self.flats[0]
        return bottom in modular and extend(bottom, 0)
