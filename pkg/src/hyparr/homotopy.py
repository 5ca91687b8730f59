"""The first higher homotopy group's second nilpotent quotient data.

For a hypersolvable, non-supersolvable arrangement with connectivity order
p, the objects computed here are:

* gr0: the free abelian group of rank rank(I/I_2)^{p+1} (never zero);
* the multiplication map mu: (I/I_2)^{p+1} (x) Lambda^1 -> (Lambda/I_2)^{p+2},
  presented as an integer matrix in Hermite-derived bases of the two
  lattices (both verified torsion-free first);
* gr1: the cokernel of the dual of mu.  Smith divisors are transpose
  invariant, so its invariants are read straight off the mu matrix:
  free rank = rows - #divisors, torsion = divisors > 1.

The torsion report recomputes the same yes/no question three independent
ways (mu divisors, the decomposable quotient in degree p+2, the
indecomposable relations in degree p+2) and insists they agree, and checks
the closed rank formula n*gr0 - rank(mu) against the Hilbert-data
expression; for graphic arrangements the chordless-circuit count gives a
fourth, combinatorial route.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arrangement import Arrangement
from .errors import InternalInvariantViolation, PreconditionError
from .exterior import from_coordinates, generator, wedge
from .hypersolvable import Classification, classify
from .intlinalg import (
    AbelianInvariants,
    RATIONALS,
    SparseHermite,
    invert_unimodular,
    smith_normal_form,
    snf_divisors,
)
from .osalgebra import (
    IdealKind,
    hilbert,
    ideal_lattice,
    quotient_invariants_graded,
)

RING_NOTE = (
    "base ring R2 = Z.1 (+) H1 with I.R2 = H1 and I^2.R2 = 0; "
    "the action map vanishes on H_{p+2} (x) H1 and is the mu matrix on "
    "H_{p+2} (x) 1"
)


@dataclass
class MuPresentation:
    p: int
    gr0_rank: int
    row_basis: list[tuple[int, int]]  # (index into the gr0 basis, hyperplane)
    col_basis: list[str]
    matrix: list[list[int]]  # len(row_basis) x len(col_basis)


@dataclass
class NilpotentQuotient2:
    p: int
    gr0_rank: int
    gr1: AbelianInvariants
    action_matrix: list[list[int]]  # the mu matrix; the action reads it dually
    ring_note: str


@dataclass
class TorsionReport:
    gr1_torsion_free: bool
    a_plus_free_p2: bool
    ind_free_p2: bool
    witnesses: dict[str, tuple[int, ...]]


class FreeQuotient:
    """Basis and coordinates for Z^ambient / (row span of relations).

    Construction fails loudly when the quotient has torsion; callers use
    this only where freeness is a theorem.  With unit relation pivots the
    basis is the non-pivot unit vectors; otherwise a Smith transform
    provides the change of basis.
    """

    def __init__(self, ambient: int, relations) -> None:
        h = SparseHermite()
        for row in relations:
            h.insert(row)
        h.canonicalize()
        divs = h.divisors()
        if any(d != 1 for d in divs):
            raise InternalInvariantViolation(
                f"lattice quotient has torsion {divs}; expected a free quotient"
            )
        self.ambient = ambient
        self.rank = ambient - h.rank
        self._h = h
        if h.all_unit_pivots():
            self._nonpivot = [j for j in range(ambient) if j not in h.pivots]
            self._pos = {j: k for k, j in enumerate(self._nonpivot)}
            self._V = None
        else:
            dense = h.dense_rows(ambient)
            res = smith_normal_form(dense)
            s = len(res.divisors)
            vinv = invert_unimodular(res.right)
            self._V = res.right
            self._lifts = [
                {j: v for j, v in enumerate(vinv[k]) if v} for k in range(s, ambient)
            ]
            self._s = s

    def lift(self, k: int) -> dict[int, int]:
        """Ambient coordinates of the k-th basis element of the quotient."""
        if self._V is None:
            return {self._nonpivot[k]: 1}
        return dict(self._lifts[k])

    def class_coords(self, vec: dict[int, int]) -> dict[int, int]:
        """Coordinates of the class of an ambient vector in the basis."""
        if self._V is None:
            residual = self._h.reduce(vec)
            return {self._pos[j]: v for j, v in residual.items()}
        out: dict[int, int] = {}
        for j, v in vec.items():
            row = self._V[j]
            for k in range(self._s, self.ambient):
                if row[k]:
                    out[k - self._s] = out.get(k - self._s, 0) + v * row[k]
        return {k: v for k, v in out.items() if v}

    def nonpivot_columns(self) -> list[int] | None:
        """Ambient columns whose unit vectors form the basis, if that simple."""
        return list(self._nonpivot) if self._V is None else None


def require_qualifying(a: Arrangement) -> Classification:
    """Hypersolvable and not supersolvable, else a PreconditionError."""
    cls = a.cache.get("classification")
    if cls is None:
        cls = classify(a)
        a.cache["classification"] = cls
    if not cls.hypersolvable:
        raise PreconditionError(
            "arrangement is not hypersolvable; the homotopy pipeline does not apply"
        )
    if cls.supersolvable:
        raise PreconditionError(
            "arrangement is supersolvable (fiber-type), so the complement is "
            "aspherical and pi_p vanishes"
        )
    return cls


def gr0_rank(a: Arrangement) -> int:
    """rank (I/I_2)^{p+1} = coefficient gap between Abar and A in degree p+1."""
    cls = require_qualifying(a)
    d1 = cls.p + 1
    gap = (
        hilbert(a, "Abar", RATIONALS).coefficients[d1]
        - hilbert(a, "A", RATIONALS).coefficients[d1]
    )
    if gap <= 0:
        raise InternalInvariantViolation(
            f"gr0 rank must be positive by the definition of p, got {gap}"
        )
    return gap


def mu_presentation(a: Arrangement) -> MuPresentation:
    """The multiplication map in fixed bases of the two free lattices.

    Rows run over (basis element of (I/I_2)^{p+1}) x (hyperplane), columns
    over the basis of (Lambda/I_2)^{p+2}; the sign convention is the plain
    wedge product (the reported invariants do not depend on it).
    """
    hit = a.cache.get("mu_presentation")
    if hit is not None:
        return hit
    cls = require_qualifying(a)
    p = cls.p
    n = a.n
    d1, d2 = p + 1, p + 2

    full1 = ideal_lattice(a, IdealKind.FULL, d1)
    quad1 = ideal_lattice(a, IdealKind.QUADRATIC, d1)
    pivots_sorted = sorted(full1.hnf.pivots)
    pos = {piv: k for k, piv in enumerate(pivots_sorted)}
    rel1 = []
    for row in quad1.hnf.rows_sorted():
        coords = full1.hnf.coordinates(row)
        rel1.append({pos[piv]: v for piv, v in coords.items()})
    L1 = FreeQuotient(full1.rank, rel1)

    quad2 = ideal_lattice(a, IdealKind.QUADRATIC, d2)
    L2 = FreeQuotient(comb(n, d2), quad2.hnf.rows_sorted())

    g0 = gr0_rank(a)
    if L1.rank != g0:
        raise InternalInvariantViolation(
            f"gr0 rank {g0} from Hilbert data but lattice basis has {L1.rank}"
        )

    full_rows = full1.hnf.rows_sorted()
    matrix: list[list[int]] = []
    row_basis: list[tuple[int, int]] = []
    for gidx in range(L1.rank):
        # lift from quotient coordinates through the ideal basis to Lambda
        lam: dict[int, int] = {}
        for bidx, coef in L1.lift(gidx).items():
            for col, v in full_rows[bidx].items():
                nv = lam.get(col, 0) + coef * v
                if nv:
                    lam[col] = nv
                else:
                    lam.pop(col, None)
        elt = from_coordinates(n, d1, lam)
        for h in range(n):
            w = wedge(elt, generator(h)).sparse_coordinates(n)
            coords = L2.class_coords(w)
            line = [0] * L2.rank
            for k, v in coords.items():
                line[k] = v
            matrix.append(line)
            row_basis.append((gidx, h))

    nonpivot = L2.nonpivot_columns()
    if nonpivot is not None:
        from .exterior import basis as ext_basis

        mons = ext_basis(n, d2)
        col_basis = [str(mons[j]) for j in nonpivot]
    else:
        col_basis = [f"v{k}" for k in range(L2.rank)]
    pres = MuPresentation(p, L1.rank, row_basis, col_basis, matrix)
    a.cache["mu_presentation"] = pres
    return pres


def _mu_divisors(a: Arrangement) -> list[int]:
    hit = a.cache.get("mu_divisors")
    if hit is None:
        hit = snf_divisors(mu_presentation(a).matrix)
        a.cache["mu_divisors"] = hit
    return hit


def gr1_invariants(a: Arrangement) -> AbelianInvariants:
    """Invariants of gr1 = coker(dual of mu), read off the mu matrix."""
    pres = mu_presentation(a)
    divs = _mu_divisors(a)
    return AbelianInvariants(
        free_rank=len(pres.matrix) - len(divs),
        torsion_factors=tuple(d for d in divs if d > 1),
    )


def second_nilpotent_quotient(a: Arrangement) -> NilpotentQuotient2:
    pres = mu_presentation(a)
    return NilpotentQuotient2(
        p=pres.p,
        gr0_rank=pres.gr0_rank,
        gr1=gr1_invariants(a),
        action_matrix=pres.matrix,
        ring_note=RING_NOTE,
    )


def torsion_and_rank_report(a: Arrangement) -> tuple[TorsionReport, dict]:
    """Three independent torsion answers plus the closed rank formula.

    Any disagreement between the three computations, or a failure of the
    rank identity, is an internal invariant violation: for correct code
    they are theorems.
    """
    cls = require_qualifying(a)
    p = cls.p
    d2 = p + 2
    n = a.n

    gr1 = gr1_invariants(a)
    aplus = quotient_invariants_graded(a, "Aplus", d2)
    ind = quotient_invariants_graded(a, "IND", d2)

    report = TorsionReport(
        gr1_torsion_free=gr1.is_free,
        a_plus_free_p2=aplus.is_free,
        ind_free_p2=ind.is_free,
        witnesses={
            "gr1": gr1.torsion_factors,
            "Aplus_p2": aplus.torsion_factors,
            "IND_p2": ind.torsion_factors,
        },
    )
    if not (report.gr1_torsion_free == report.a_plus_free_p2 == report.ind_free_p2):
        raise InternalInvariantViolation(
            "torsion equivalence failed: "
            f"gr1 {gr1.torsion_factors}, Aplus {aplus.torsion_factors}, "
            f"IND {ind.torsion_factors}; mu matrix: {mu_presentation(a).matrix}"
        )

    ha = hilbert(a, "A", RATIONALS).coefficients
    habar = hilbert(a, "Abar", RATIONALS).coefficients
    r_p2 = hilbert(a, "IND", RATIONALS).coefficients[d2]
    gr0 = gr0_rank(a)
    corollary_rank = n * (habar[p + 1] - ha[p + 1]) - (habar[d2] - ha[d2]) + r_p2
    mu_rank = len(_mu_divisors(a))
    if gr1.free_rank != n * gr0 - mu_rank:
        raise InternalInvariantViolation(
            f"rank bookkeeping broke: {gr1.free_rank} != {n}*{gr0} - {mu_rank}"
        )
    if gr1.free_rank != corollary_rank:
        raise InternalInvariantViolation(
            f"closed rank formula mismatch: SNF gives {gr1.free_rank}, "
            f"Hilbert expression gives {corollary_rank}"
        )
    bookkeeping = {
        "p": p,
        "gr0_rank": gr0,
        "gr1_rank": gr1.free_rank,
        "mu_rank": mu_rank,
        "corollary_rank": corollary_rank,
        "r_p2": r_p2,
    }
    if a.source_graph is not None:
        chordless = len(a.chordless_circuits(p + 3)) if p + 3 <= n else 0
        if r_p2 != chordless:
            raise InternalInvariantViolation(
                f"graphic count mismatch: r_{d2} = {r_p2} but "
                f"{chordless} chordless ({p + 3})-circuits"
            )
        bookkeeping["chordless_p3"] = chordless
    return report, bookkeeping
