"""Orlik-Solomon ideals and their graded quotients over Z and prime fields.

Three ideals of the exterior algebra on the hyperplanes are handled, as
integer lattices degree by degree:

* FULL: the Orlik-Solomon ideal, generated by delta(e_C) over circuits C;
* QUADRATIC: the ideal generated by the degree-2 part of FULL;
* DECOMPOSABLE: products of positive-degree elements with FULL.

The degree-q piece of each is spanned by monomials e_T (T running over the
appropriate dependent sets, since e_c ^ delta(e_C) = +-e_C for c in C)
together with e_S ^ delta(e_C) for S disjoint from C.  Monomial generators
enter the Hermite form as unit rows, which keeps the big matrices cheap;
in degrees above the rank the lattice saturates immediately.

Every rank, Hilbert coefficient, torsion check and membership test reduces
to the cached per-degree Hermite bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import comb

from .arrangement import Arrangement
from .errors import InputError, InternalInvariantViolation
from .exterior import ExteriorElement, basis, basis_index, delta, monomial
from .intlinalg import (
    AbelianInvariants,
    FieldSpec,
    SparseHermite,
    prime_factors,
    quotient_invariants,
    snf_divisors,
)


class IdealKind(Enum):
    FULL = "full"
    QUADRATIC = "quadratic"
    DECOMPOSABLE = "decomposable"


QUOTIENTS = ("A", "Abar", "Aplus", "IND")

_KIND_OF_QUOTIENT = {
    "A": IdealKind.FULL,
    "Abar": IdealKind.QUADRATIC,
    "Aplus": IdealKind.DECOMPOSABLE,
}


@dataclass
class GradedIdealPresentation:
    kind: IdealKind
    degree: int
    generator_matrix: list[list[int]]  # rows in basis(n, degree) coordinates


@dataclass(frozen=True)
class HilbertData:
    quotient: str
    field: FieldSpec
    coefficients: tuple[int, ...]  # degrees 0..n


@dataclass(frozen=True)
class RmTable:
    fields: tuple[FieldSpec, ...]
    values: tuple[tuple[int, ...], ...]  # values[m][field index] = r_m
    field_independent: tuple[bool, ...]

    def r(self, m: int, field: FieldSpec) -> int:
        return self.values[m][self.fields.index(field)]


@dataclass(frozen=True)
class SpanCheckReport:
    degree: int
    field: FieldSpec
    onto: bool
    span_dim: int
    target_dim: int
    chordless_count: int
    bijective: bool
    graphic: bool


class IdealLattice:
    """Hermite basis of one ideal in one degree, with lazy invariant factors.

    ``hnf is None`` marks a saturated lattice (all of Z^ncols): above the
    matroid rank every monomial is dependent, so the full and decomposable
    ideals fill their degree completely and no basis needs materializing.
    """

    __slots__ = ("kind", "degree", "ncols", "hnf", "_divisors")

    def __init__(
        self, kind: IdealKind, degree: int, ncols: int, hnf: SparseHermite | None
    ):
        self.kind = kind
        self.degree = degree
        self.ncols = ncols
        self.hnf = hnf
        self._divisors: list[int] | None = None

    @property
    def saturated(self) -> bool:
        return self.hnf is None

    @property
    def rank(self) -> int:
        return self.ncols if self.hnf is None else self.hnf.rank

    def divisors(self) -> list[int]:
        if self.hnf is None:
            return [1] * self.ncols
        if self._divisors is None:
            self._divisors = self.hnf.divisors()
        return self._divisors

    def contains(self, row) -> bool:
        return True if self.hnf is None else self.hnf.contains(row)

    def rank_over(self, field: FieldSpec) -> int:
        if self.hnf is None or field.characteristic == 0:
            return self.rank
        if self.hnf.all_unit_pivots():
            # unit pivots make every divisor 1, so no rank drop at any prime
            return self.rank
        p = field.characteristic
        return self.rank - sum(1 for d in self.divisors() if d % p == 0)


def _check_degree(a: Arrangement, q: int) -> None:
    if not 0 <= q <= a.n:
        raise InputError(f"degree {q} out of range 0..{a.n}")


def _unit_rows(a: Arrangement, kind: IdealKind, q: int):
    """Monomial generators e_T of the degree-q ideal, as unit rows."""
    n = a.n
    r = a.rank()
    if kind is IdealKind.QUADRATIC:
        three = [c for c in a.circuits(min(3, n)) if len(c) == 3]
        masks = []
        for c in three:
            m = 0
            for i in c:
                m |= 1 << i
            masks.append(m)
        for col, T in enumerate(basis(n, q)):
            tm = 0
            for i in T:
                tm |= 1 << i
            if any(cm & tm == cm for cm in masks):
                yield {col: 1}
    elif q > r:
        for col in range(comb(n, q)):
            yield {col: 1}
    else:
        for col, T in enumerate(basis(n, q)):
            if len(T) > 0 and a.is_dependent(T):
                yield {col: 1}


def _spread_rows(a: Arrangement, kind: IdealKind, q: int):
    """The generators e_S ^ delta(e_C) with S disjoint from C.

    Computed directly in coordinates: the term at facet C \\ {c_k} lands on
    the merged tuple with the derivation sign (-1)^k times the shuffle sign
    of interleaving S.
    """
    n = a.n
    if kind is IdealKind.QUADRATIC:
        sizes = [3] if q >= 2 else []
    elif kind is IdealKind.DECOMPOSABLE:
        sizes = range(3, min(q, n) + 1)  # |S| = q+1-|C| >= 1
    else:
        sizes = range(3, min(q + 1, n) + 1)
    by_size: dict[int, list[tuple[int, ...]]] = {}
    if sizes:
        for c in a.circuits(min(max(sizes), n)):
            by_size.setdefault(len(c), []).append(c)
    col_of = basis_index(n, q)
    for size in sizes:
        k_s = q + 1 - size
        for circ in by_size.get(size, ()):
            facets = []
            sign = 1
            for k in range(size):
                facets.append((sign, circ[:k] + circ[k + 1 :]))
                sign = -sign
            rest = [i for i in range(n) if i not in circ]
            for s in itertools.combinations(rest, k_s):
                row: dict[int, int] = {}
                for dsign, facet in facets:
                    # merge sign: inversions between s and the facet
                    inv = 0
                    for x in s:
                        for y in facet:
                            if x > y:
                                inv += 1
                    merged = tuple(sorted(s + facet))
                    c = -dsign if inv % 2 else dsign
                    col = col_of[merged]
                    nv = row.get(col, 0) + c
                    if nv:
                        row[col] = nv
                    else:
                        del row[col]
                if row:
                    yield row


def _generator_stream(a: Arrangement, kind: IdealKind, q: int):
    """All generator rows of the degree-q ideal: unit rows, then spread rows."""
    yield from _unit_rows(a, kind, q)
    yield from _spread_rows(a, kind, q)


def ideal_lattice(a: Arrangement, kind: IdealKind, q: int) -> IdealLattice:
    """Cached Hermite basis of the degree-q piece of the chosen ideal."""
    _check_degree(a, q)
    key = ("ideal", kind, q)
    hit = a.cache.get(key)
    if hit is not None:
        return hit
    ncols = comb(a.n, q)
    if kind is not IdealKind.QUADRATIC and 0 < a.rank() < q:
        # every q-subset is dependent, so the unit rows already fill Z^ncols
        lat = IdealLattice(kind, q, ncols, None)
        a.cache[key] = lat
        return lat
    h = SparseHermite()
    for row in _unit_rows(a, kind, q):
        h.insert(row)
    if not (h.rank == ncols and h.all_unit_pivots()):
        # leading-column order keeps the elimination fill low on the big
        # degrees; the echelon result is deterministic either way
        spread = sorted(_spread_rows(a, kind, q), key=lambda r: (min(r), len(r)))
        for row in spread:
            h.insert(row)
            if h.rank == ncols and h.all_unit_pivots():
                break  # lattice is all of Z^ncols; nothing can change
    lat = IdealLattice(kind, q, ncols, h)
    a.cache[key] = lat
    return lat


def ideal_generators(a: Arrangement, kind: IdealKind, q: int) -> GradedIdealPresentation:
    """Dense matrix of the spanning family in basis(n, q) coordinates."""
    _check_degree(a, q)
    ncols = comb(a.n, q)
    rows = []
    for row in _generator_stream(a, kind, q):
        line = [0] * ncols
        for c, v in row.items():
            line[c] = v
        rows.append(line)
    return GradedIdealPresentation(kind, q, rows)


def hilbert(a: Arrangement, quotient: str, field: FieldSpec) -> HilbertData:
    """Hilbert coefficients of the chosen quotient in degrees 0..n.

    The algebra quotients are generated in degree 1, so once a coefficient
    vanishes all higher ones do; the indecomposables vanish above the rank
    because both ideals fill their degree there.  Both facts keep the big
    upper degrees free.
    """
    if quotient not in QUOTIENTS:
        raise InputError(f"unknown quotient {quotient!r}, expected one of {QUOTIENTS}")
    n = a.n
    coeffs: list[int] = []
    if quotient == "IND":
        for q in range(n + 1):
            c = ideal_lattice(a, IdealKind.FULL, q).rank_over(field) - ideal_lattice(
                a, IdealKind.DECOMPOSABLE, q
            ).rank_over(field)
            coeffs.append(c)
    else:
        kind = _KIND_OF_QUOTIENT[quotient]
        vanished = False
        for q in range(n + 1):
            if vanished:
                coeffs.append(0)
                continue
            lat = ideal_lattice(a, kind, q)
            c = comb(n, q) - lat.rank_over(field)
            coeffs.append(c)
            if q >= 1 and c == 0:
                vanished = True
    return HilbertData(quotient, field, tuple(coeffs))


def quotient_invariants_graded(a: Arrangement, quotient: str, q: int) -> AbelianInvariants:
    """Integral invariants of the degree-q piece of the chosen quotient."""
    if quotient not in QUOTIENTS:
        raise InputError(f"unknown quotient {quotient!r}, expected one of {QUOTIENTS}")
    _check_degree(a, q)
    if quotient == "IND":
        if ideal_lattice(a, IdealKind.FULL, q).saturated:
            # above the rank both ideals are all of the degree: zero quotient
            return AbelianInvariants(0, ())
        rows = indecomposable_relation_rows(a, q)
        return quotient_invariants(ideal_lattice(a, IdealKind.FULL, q).rank, rows)
    lat = ideal_lattice(a, _KIND_OF_QUOTIENT[quotient], q)
    divs = lat.divisors()
    return AbelianInvariants(
        free_rank=lat.ncols - len(divs),
        torsion_factors=tuple(d for d in divs if d > 1),
    )


def indecomposable_relation_rows(a: Arrangement, q: int) -> list[dict[int, int]]:
    """Coordinates of the decomposable sublattice in the full ideal's basis.

    The quotient of Z^rank(I^q) by these rows presents (I / Lambda+ I)^q.
    """
    full = ideal_lattice(a, IdealKind.FULL, q)
    dec = ideal_lattice(a, IdealKind.DECOMPOSABLE, q)
    if full.saturated:
        # both lattices are all of Z^ncols; the quotient is presented by
        # the identity on the full basis
        return [{k: 1} for k in range(full.ncols)]
    pivots_sorted = sorted(full.hnf.pivots)
    pos = {p: i for i, p in enumerate(pivots_sorted)}
    rows = []
    for row in dec.hnf.rows_sorted():
        coords = full.hnf.coordinates(row)
        rows.append({pos[p]: v for p, v in coords.items()})
    return rows


def discovered_torsion_primes(a: Arrangement) -> list[int]:
    """Primes dividing invariant factors of the torsion-bearing quotients.

    Torsion can only live in degrees 2..rank: the ideals vanish below
    degree 2 and fill their degree completely above the rank.
    """
    primes: set[int] = set()
    for q in range(2, min(a.rank(), a.n) + 1):
        for quotient in ("Aplus", "IND"):
            inv = quotient_invariants_graded(a, quotient, q)
            for d in inv.torsion_factors:
                primes.update(prime_factors(d))
    return sorted(primes)


DEFAULT_CHARACTERISTICS = (0, 2, 3, 5)


def r_table(a: Arrangement, fields: list[FieldSpec] | None = None) -> RmTable:
    """r_m over each field: Hilbert coefficients of the indecomposables.

    The default field set is the rationals and F_2, F_3, F_5, extended by
    every prime dividing a discovered invariant factor.  r_m = 0 for m < 2
    and for m above the rank is verified, not assumed.
    """
    if fields is None:
        chars = list(DEFAULT_CHARACTERISTICS)
        for p in discovered_torsion_primes(a):
            if p not in chars:
                chars.append(p)
        fields = [FieldSpec(c) for c in chars]
    if not fields:
        raise InputError("field list must be nonempty")
    per_field = [hilbert(a, "IND", f).coefficients for f in fields]
    values = tuple(tuple(pf[m] for pf in per_field) for m in range(a.n + 1))
    r = a.rank()
    for m, vals in enumerate(values):
        if (m < 2 or m > r) and any(vals):
            raise InternalInvariantViolation(
                f"r_{m} must vanish (rank {r}) but got {vals}"
            )
    flags = tuple(len(set(vals)) == 1 for vals in values)
    return RmTable(tuple(fields), values, flags)


def chordless_span_check(a: Arrangement, q: int, field: FieldSpec) -> SpanCheckReport:
    """Do the chordless-circuit differentials span the indecomposables?

    Spanning is a theorem, so ``onto`` is expected true on every input; a
    failure signals an implementation bug.  For graphic arrangements the
    map is even bijective, which the report records.
    """
    if q < 2:
        raise InputError(f"span check needs degree >= 2, got {q}")
    _check_degree(a, q)
    chordless = a.chordless_circuits(q + 1) if q + 1 >= 3 and q + 1 <= a.n else []
    if q > a.rank():
        # the target (I / Lambda+ I)^q is the zero group
        return SpanCheckReport(
            degree=q,
            field=field,
            onto=True,
            span_dim=0,
            target_dim=0,
            chordless_count=len(chordless),
            bijective=not chordless,
            graphic=a.source_graph is not None,
        )
    full = ideal_lattice(a, IdealKind.FULL, q)
    dec = ideal_lattice(a, IdealKind.DECOMPOSABLE, q)
    combined = dec.hnf.copy()
    for circ in chordless:
        row = delta(monomial(circ)).sparse_coordinates(a.n)
        combined.insert(row)

    def rank_over(h: SparseHermite, f: FieldSpec) -> int:
        if f.characteristic == 0 or h.all_unit_pivots():
            return h.rank
        p = f.characteristic
        return h.rank - sum(1 for d in snf_divisors(h.rows_sorted()) if d % p == 0)

    span_dim = rank_over(combined, field) - dec.rank_over(field)
    target_dim = full.rank_over(field) - dec.rank_over(field)
    onto = span_dim == target_dim
    return SpanCheckReport(
        degree=q,
        field=field,
        onto=onto,
        span_dim=span_dim,
        target_dim=target_dim,
        chordless_count=len(chordless),
        bijective=onto and len(chordless) == span_dim,
        graphic=a.source_graph is not None,
    )


def ideal_membership(a: Arrangement, u: ExteriorElement, kind: IdealKind) -> bool:
    """Exact lattice membership (not merely rational span membership)."""
    if not 0 <= u.degree <= a.n:
        raise InputError(f"element degree {u.degree} out of range 0..{a.n}")
    lat = ideal_lattice(a, kind, u.degree)
    return lat.contains(u.sparse_coordinates(a.n))
