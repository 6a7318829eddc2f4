"""Graded presentations of modules, their Frobenius pullbacks, and the
generalized Hilbert-Kunz function.

The central quantity: for a graded module M presented by a matrix over
R, the length of the degreewise-finite torsion of the pulled-back
module, as a function of q = p^e. The image of the pulled-back
presentation is taken literally as the submodule generated by its
columns; no injectivity of any comparison map is assumed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Poly, frobenius_power
from .errors import (
    BudgetExceededError,
    GhkError,
    GhkHypothesisError,
    HomogeneityError,
    RingMismatchError,
)
from .groebner import GbBudget, ModVector, Submodule, buchberger
from .idealops import RingSpec, bracket_power, colength_difference, saturate


class Presentation:
    """A graded presentation matrix for a module over R = rspec.

    Columns are vectors in the free module with generator degrees
    row_twists; column i is homogeneous of degree col_twists[i], so the
    (j, i) entry is zero or homogeneous of degree
    col_twists[i] - row_twists[j]. The presented module is the cokernel;
    the class itself never materializes it.
    """

    def __init__(self, rspec, row_twists, col_twists, columns, descriptor=None):
        if not isinstance(rspec, RingSpec):
            raise GhkError(f"expected a RingSpec, got {rspec!r}")
        self.rspec = rspec
        self.row_twists = tuple(int(e) for e in row_twists)
        self.col_twists = tuple(int(d) for d in col_twists)
        if not self.row_twists:
            raise GhkError("presentation needs at least one row")
        cols = []
        for v in columns:
            if isinstance(v, (list, tuple)):
                v = ModVector(tuple(v))
            if not isinstance(v, ModVector):
                raise GhkError(f"presentation column must be a ModVector, got {v!r}")
            if v.rank != len(self.row_twists):
                raise GhkError(
                    f"column has {v.rank} entries, presentation has {len(self.row_twists)} rows"
                )
            if v.ring != rspec.ring:
                raise RingMismatchError("presentation column over a different ring")
            cols.append(v)
        if len(cols) != len(self.col_twists):
            raise GhkError(
                f"{len(cols)} columns but {len(self.col_twists)} column twists"
            )
        for v, d in zip(cols, self.col_twists):
            if v.is_zero():
                continue
            if not v.is_homogeneous(self.row_twists) or v.homogeneous_degree(self.row_twists) != d:
                raise HomogeneityError(
                    f"column {v} is not homogeneous of degree {d} "
                    f"for row twists {self.row_twists}"
                )
        self.columns = tuple(cols)
        self.descriptor = descriptor or (
            f"coker of {len(self.row_twists)}x{len(cols)} graded matrix"
        )

    @property
    def num_rows(self) -> int:
        return len(self.row_twists)

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    def entry(self, j: int, i: int) -> Poly:
        return self.columns[i][j]

    def image_submodule(self) -> Submodule:
        """Submodule of the free module generated by the matrix columns,
        with the ring relations adjoined in every position."""
        return Submodule(
            self.rspec.ring,
            self.num_rows,
            self.columns,
            twists=self.row_twists,
            relations=self.rspec.relations,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Presentation)
            and other.rspec.ring == self.rspec.ring
            and other.rspec.relations == self.rspec.relations
            and other.row_twists == self.row_twists
            and other.col_twists == self.col_twists
            and other.columns == self.columns
        )

    def __repr__(self) -> str:
        return (
            f"<Presentation {self.num_rows}x{self.num_cols}, "
            f"rows {self.row_twists}, cols {self.col_twists}>"
        )


def presentation_of_quotient(I: Submodule, rspec: RingSpec | None = None) -> Presentation:
    """Presentation of R/I: one row of twist 0, columns the generators.

    I must be an ideal (rank 1) with homogeneous generators; rspec, when
    given, must carry the same ring and relations as I.
    """
    if I.rank != 1:
        raise GhkError("quotient presentations need an ideal (rank-1 submodule)")
    if rspec is None:
        rspec = RingSpec(I.ring.p, list(I.ring.variables), I.relations, order=I.ring.order)
    else:
        if rspec.ring != I.ring:
            raise RingMismatchError("ideal lives over a different ring than rspec")
        if tuple(rspec.relations) != tuple(I.relations):
            raise RingMismatchError("ideal carries different relations than rspec")
    cols = list(I.gens)
    twists = [v.homogeneous_degree((0,)) for v in cols]
    names = ", ".join(str(v[0]) for v in cols) or "0"
    return Presentation(rspec, (0,), twists, cols, descriptor=f"R/({names})")


def frobenius_pullback(P: Presentation, e: int) -> Presentation:
    """Entrywise q-th power of the presentation, q = p^e; all twists
    scale by q, so homogeneity is preserved degree-by-degree."""
    if not isinstance(e, int) or e < 0:
        raise GhkHypothesisError(f"Frobenius exponent must be a non-negative integer, got {e!r}")
    if e == 0:
        return P
    q = P.rspec.p ** e
    cols = [
        ModVector(tuple(frobenius_power(f, q) for f in v.components)) for v in P.columns
    ]
    return Presentation(
        P.rspec,
        tuple(q * t for t in P.row_twists),
        tuple(q * t for t in P.col_twists),
        cols,
        descriptor=P.descriptor,
    )


def direct_sum(P: Presentation, Q: Presentation) -> Presentation:
    """Block-diagonal presentation of the direct sum of the two modules."""
    if P.rspec.ring != Q.rspec.ring or P.rspec.relations != Q.rspec.relations:
        raise RingMismatchError("direct summands live over different rings")
    ring = P.rspec.ring
    zero = ring.zero
    cols = []
    for v in P.columns:
        cols.append(ModVector(tuple(v.components) + (zero,) * Q.num_rows))
    for v in Q.columns:
        cols.append(ModVector((zero,) * P.num_rows + tuple(v.components)))
    return Presentation(
        P.rspec,
        P.row_twists + Q.row_twists,
        P.col_twists + Q.col_twists,
        cols,
        descriptor=f"({P.descriptor}) (+) ({Q.descriptor})",
    )


# ---------------------------------------------------------------------------
# the length computations


def ghk_value(
    P: Presentation,
    e: int,
    budget: GbBudget | None = None,
    method: str = "auto",
) -> int:
    """Torsion length of the e-th Frobenius pullback of coker(P).

    Pull the presentation back, take the image U of its columns (plus
    relation columns), and measure the part of the ambient free module
    supported at the irrelevant ideal: the length of sat(U)/U. Finite
    exactly when the module is torsion-free in codimension <= 1 territory,
    which the dimension-2 precondition guarantees for saturations.
    """
    P.rspec.require_dim2()
    U = frobenius_pullback(P, e).image_submodule()
    V = saturate(U, method=method, budget=budget)
    return colength_difference(U, V, budget)


def hk_value(I: Submodule, e: int, budget: GbBudget | None = None) -> int:
    """Classical length l(R/I^[q]) for an irrelevant-primary ideal I.

    Deliberately a separate code path from ghk_value: the bracket power
    is never saturated here, the length comes straight from the Hilbert
    series of the bracket ideal. Acceptance pins the two paths to agree
    on primary inputs.
    """
    if I.rank != 1:
        raise GhkError("hk_value needs an ideal (rank-1 submodule)")
    if not isinstance(e, int) or e < 0:
        raise GhkHypothesisError(f"Frobenius exponent must be a non-negative integer, got {e!r}")
    sat = saturate(I, method="auto", budget=budget)
    if not buchberger(sat, budget).is_full_module():
        raise GhkHypothesisError(
            "hk_value needs an irrelevant-primary ideal; the input does not saturate "
            "to the unit ideal"
        )
    q = I.ring.p ** e
    B = bracket_power(I, q)
    unit = Submodule.ideal(I.ring, [I.ring.one], relations=I.relations)
    return colength_difference(B, unit, budget)


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class GHKRow:
    e: int
    q: int
    length: int


@dataclass(frozen=True)
class SkippedRow:
    e: int
    reason: str


@dataclass(frozen=True)
class GHKTable:
    """Computed values of the length function, one row per exponent."""

    p: int
    module: str
    rows: tuple = ()
    skipped: tuple = field(default=())

    def __post_init__(self):
        last_e = 0
        for row in self.rows:
            if row.e <= last_e:
                raise GhkError("table rows must be strictly increasing in e")
            if row.q != self.p ** row.e:
                raise GhkError(f"row e={row.e} has q={row.q}, expected {self.p ** row.e}")
            if row.length < 0:
                raise GhkError("lengths are non-negative")
            last_e = row.e

    def lengths_by_exponent(self) -> dict:
        return {row.e: row.length for row in self.rows}

    def merged_with(self, other: "GHKTable") -> "GHKTable":
        """Union of rows; overlapping exponents must agree exactly."""
        if (self.p, self.module) != (other.p, other.module):
            raise GhkError("tables describe different modules")
        mine = self.lengths_by_exponent()
        for row in other.rows:
            if row.e in mine and mine[row.e] != row.length:
                raise GhkError(f"conflicting lengths for e={row.e}")
        rows = {row.e: row for row in self.rows}
        rows.update({row.e: row for row in other.rows})
        still_skipped = tuple(
            s for s in self.skipped + other.skipped if s.e not in rows
        )
        merged = tuple(rows[e] for e in sorted(rows))
        return GHKTable(self.p, self.module, merged, still_skipped)

    def to_csv(self) -> str:
        lines = ["e,q,length"]
        lines.extend(f"{r.e},{r.q},{r.length}" for r in self.rows)
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "module": self.module,
            "rows": [{"e": r.e, "q": r.q, "length": r.length} for r in self.rows],
            "skipped": [{"e": s.e, "reason": s.reason} for s in self.skipped],
        }


def _presentation_task(P: Presentation, e: int, budget, method: str) -> tuple:
    rspec = P.rspec
    cols = [[str(f) for f in v.components] for v in P.columns]
    rels = [str(r) for r in rspec.relations]
    bud = (budget.max_degree, budget.max_pairs) if budget else None
    return (
        rspec.p,
        tuple(rspec.ring.variables),
        tuple(rels),
        P.row_twists,
        P.col_twists,
        tuple(tuple(c) for c in cols),
        e,
        bud,
        method,
    )


def _run_row(task: tuple) -> tuple:
    """Worker for one table row; must stay importable at module top level
    so tasks can cross process boundaries."""
    p, variables, rels, row_twists, col_twists, cols, e, bud, method = task
    rspec = RingSpec(p, list(variables), list(rels))
    columns = [ModVector(tuple(rspec.parse(s) for s in col)) for col in cols]
    P = Presentation(rspec, row_twists, col_twists, columns)
    budget = GbBudget(*bud) if bud else None
    try:
        return ("ok", e, p ** e, ghk_value(P, e, budget=budget, method=method))
    except BudgetExceededError as ex:
        return ("skipped", e, str(ex))


def ghk_table(
    P: Presentation,
    e_max: int,
    budget: GbBudget | None = None,
    method: str = "auto",
    jobs: int = 1,
    exponents=None,
) -> GHKTable:
    """Length values for e = 1..e_max (or an explicit exponent list).

    Rows are independent; a per-row budget overrun records the row as
    skipped instead of aborting the table, so partial tables from tight
    budgets can be merged with later, better-funded runs.
    """
    if exponents is None:
        if e_max < 1:
            raise GhkError("e_max must be at least 1")
        exponents = range(1, e_max + 1)
    exponents = sorted(set(int(e) for e in exponents))
    if any(e < 1 for e in exponents):
        raise GhkError("table exponents must be positive")

    results = []
    if jobs > 1 and len(exponents) > 1:
        import concurrent.futures

        tasks = [_presentation_task(P, e, budget, method) for e in exponents]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_row, tasks))
    else:
        for e in exponents:
            try:
                results.append(("ok", e, P.rspec.p ** e, ghk_value(P, e, budget=budget, method=method)))
            except BudgetExceededError as ex:
                results.append(("skipped", e, str(ex)))

    rows = []
    skipped = []
    for res in results:
        if res[0] == "ok":
            rows.append(GHKRow(res[1], res[2], res[3]))
        else:
            skipped.append(SkippedRow(res[1], res[2]))
    rows.sort(key=lambda r: r.e)
    return GHKTable(P.rspec.p, P.descriptor, tuple(rows), tuple(skipped))
