"""Groebner bases for submodules of twisted free modules over F_p[x_1..x_n].

Buchberger's algorithm with the Gebauer-Moller pair filters, normal
(degree-first) pair selection with ties broken by input index, and
canonical reduced output: the reduced basis of a submodule is unique
for a fixed order, so results are reproducible across strategies.

Quotient rings R = S/(relations) are never represented directly. A
submodule of a free R-module is stored over the polynomial ring S with
the relation columns adjoined to its spanning set; the user-level
generator list stays separate so that operations which must distinguish
generators from relations (bracket powers) can do so.

Module terms are packed into single integers, extending the ring's
monomial keys by a component field: "top" order compares the ring
monomial first (component 0 wins ties), "pot" compares the component
first (component 0 largest), which is what block elimination uses.
Shifting a vector by a monomial adds a constant to every packed key, so
the reducer does one integer add per term.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Sequence

from .arith import (
    EXP_BITS,
    Poly,
    PolyRing,
    mon_deg,
    mon_div,
    mon_divides,
    mon_lcm,
    mon_mul,
)
from .errors import (
    BudgetExceededError,
    GhkError,
    HomogeneityError,
    RingMismatchError,
)

__all__ = [
    "GbBudget",
    "ModVector",
    "Submodule",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "is_member",
]

COMP_BITS = 16
_CMAX = (1 << COMP_BITS) - 1


@dataclass(frozen=True)
class GbBudget:
    """Resource limits for one Groebner run.

    max_degree: largest module degree of an S-pair that may be reduced.
    max_pairs: largest number of S-pair reductions.
    Exceeding either raises BudgetExceededError; partial output is never
    returned.
    """

    max_degree: int | None = None
    max_pairs: int | None = None


# ---------------------------------------------------------------------------
# vectors


class ModVector:
    """Element of a free module R^rank; components are ring polynomials."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Poly]):
        comps = tuple(components)
        if not comps:
            raise GhkError("a module vector needs at least one component")
        ring = comps[0].ring
        for f in comps:
            if not isinstance(f, Poly):
                raise GhkError(f"components must be Poly, got {f!r}")
            if f.ring is not ring and f.ring != ring:
                raise RingMismatchError("vector components live in different rings")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("ModVector is immutable")

    @property
    def rank(self) -> int:
        return len(self.components)

    def __getitem__(self, j: int) -> Poly:
        return self.components[j]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "ModVector") -> "ModVector":
        self._check_ambient(other)
        return ModVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "ModVector") -> "ModVector":
        self._check_ambient(other)
        return ModVector(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "ModVector":
        return ModVector(tuple(-a for a in self.components))

    def scale(self, c: int) -> "ModVector":
        return ModVector(tuple(a.scale(c) for a in self.components))

    def poly_mul(self, f: Poly) -> "ModVector":
        return ModVector(tuple(f * a for a in self.components))

    def _check_ambient(self, other: "ModVector") -> None:
        if not isinstance(other, ModVector):
            raise GhkError(f"expected a ModVector, got {other!r}")
        if other.rank != self.rank or (other.ring is not self.ring and other.ring != self.ring):
            raise RingMismatchError("vectors live in different ambient modules")

    def is_homogeneous(self, twists: Sequence[int]) -> bool:
        degs = set()
        for f, e in zip(self.components, twists):
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                return False
            degs.add(f.homogeneous_degree() + e)
        return len(degs) <= 1

    def homogeneous_degree(self, twists: Sequence[int]) -> int:
        """Common degree deg(f_j) + twists[j] over nonzero components."""
        degs = set()
        for f, e in zip(self.components, twists):
            if f.is_zero():
                continue
            degs.add(f.homogeneous_degree() + e)
        if len(degs) != 1:
            raise HomogeneityError(f"vector {self} is not homogeneous for twists {tuple(twists)}")
        return degs.pop()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModVector)
            and other.ring == self.ring
            and other.components == self.components
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.components))

    def __str__(self) -> str:
        return "(" + ", ".join(str(f) for f in self.components) + ")"

    def __repr__(self) -> str:
        return f"<ModVector {self}>"


# ---------------------------------------------------------------------------
# packed module-term context


class _Ctx:
    """Key packing for module terms at a fixed rank and position rule."""

    __slots__ = ("ring", "rank", "twists", "position", "p", "term_key", "ring_key_of")

    def __init__(self, ring: PolyRing, rank: int, twists: tuple, position: str):
        if rank < 1 or rank > _CMAX:
            raise GhkError(f"rank {rank} out of supported range [1, {_CMAX}]")
        if position not in ("top", "pot"):
            raise GhkError(f"position rule must be 'top' or 'pot', got {position!r}")
        self.ring = ring
        self.rank = rank
        self.twists = twists
        self.position = position
        self.p = ring.p
        if position == "top":

            def term_key(comp, rk, _cb=COMP_BITS, _cm=_CMAX):
                return (rk << _cb) | (_cm - comp)

            def ring_key_of(k, _cb=COMP_BITS):
                return k >> _cb

        else:
            rb = (ring.nvars + 1) * EXP_BITS

            def term_key(comp, rk, _rb=rb, _cm=_CMAX):
                return ((_cm - comp) << _rb) | rk

            def ring_key_of(k, _rb=rb):
                return k & ((1 << _rb) - 1)

        self.term_key = term_key
        self.ring_key_of = ring_key_of

    def vec_to_terms(self, v: ModVector) -> tuple:
        tk = self.term_key
        terms = []
        for j, f in enumerate(v.components):
            for k, m, c in f._t:
                terms.append((tk(j, k), j, m, c))
        terms.sort(reverse=True)
        return tuple(terms)

    def terms_to_vec(self, terms: Iterable[tuple]) -> ModVector:
        ring = self.ring
        per: list = [[] for _ in range(self.rank)]
        rko = self.ring_key_of
        for k, cp, m, c in terms:
            per[cp].append((rko(k), m, c))
        comps = []
        for lst in per:
            lst.sort(reverse=True)
            comps.append(Poly(ring, tuple(lst)))
        return ModVector(comps)


# ---------------------------------------------------------------------------
# the reduction loop

# A basis record is (ltkey, ltcomp, ltmon, tail, moddeg) with the element
# monic and tail the non-lead terms; terms are (key, comp, mon, coeff).


def _reduce(seeds, by_comp, p, full=True):
    """Reduce a seeded combination modulo monic basis records.

    seeds: iterable of (terms, mult, delta, shiftmon) contributions; each
    term (k, comp, mon, c) enters as key k+delta, monomial mon*shiftmon,
    coefficient c*mult. shiftmon None means "no shift".

    With full=True returns the complete normal form (terms descending).
    With full=False stops at the first irreducible term, which is enough
    for membership tests.
    """
    acc: dict = {}
    info: dict = {}
    heap: list = []
    for terms, mult, delta, shiftmon in seeds:
        for k, cp, m, c in terms:
            nk = k + delta
            prev = acc.get(nk)
            if prev is None:
                acc[nk] = c * mult
                info[nk] = (cp, m, shiftmon)
                heappush(heap, -nk)
            else:
                acc[nk] = prev + c * mult
    out = []
    while heap:
        k = -heappop(heap)
        c = acc.pop(k, None)
        if c is None:
            continue
        c %= p
        cp, m0, sh = info.pop(k)
        if c == 0:
            continue
        mon = mon_mul(m0, sh) if sh is not None else m0
        red = None
        for g in by_comp.get(cp, ()):
            if mon_divides(g[2], mon):
                red = g
                break
        if red is None:
            out.append((k, cp, mon, c))
            if not full:
                break
            continue
        delta = k - red[0]
        shiftmon = mon_div(mon, red[2])
        for tk, tcp, tm, tc in red[3]:
            nk = tk + delta
            prev = acc.get(nk)
            if prev is None:
                acc[nk] = -(tc * c)
                info[nk] = (tcp, tm, shiftmon)
                heappush(heap, -nk)
            else:
                acc[nk] = prev - tc * c
    return tuple(out)


def _monic_record(ctx: _Ctx, terms: tuple) -> tuple:
    k, cp, m, c = terms[0]
    if c != 1:
        inv = ctx.ring.field.inv(c)
        p = ctx.p
        terms = tuple((tk, tcp, tm, tc * inv % p) for tk, tcp, tm, tc in terms)
    moddeg = mon_deg(terms[0][2]) + ctx.twists[cp]
    return (terms[0][0], cp, terms[0][2], terms[1:], moddeg)


def _record_terms(rec: tuple) -> tuple:
    return ((rec[0], rec[1], rec[2], 1),) + rec[3]


# ---------------------------------------------------------------------------
# Buchberger driver with Gebauer-Moller pair filters


def _update_pairs(G: list, P: dict, t: int, twists: tuple, rank: int) -> None:
    """Install pairs (i, t); apply lcm, duplicate, product, chain filters."""
    hrec = G[t]
    hc, hm = hrec[1], hrec[2]
    cand = [i for i in range(t) if G[i][1] == hc]
    if cand:
        lcms = {i: mon_lcm(G[i][2], hm) for i in cand}
        keep = []
        for i in cand:
            li = lcms[i]
            drop = False
            for j in cand:
                if j == i:
                    continue
                lj = lcms[j]
                if lj != li and mon_divides(lj, li):
                    drop = True
                    break
                if lj == li and j < i:
                    drop = True
                    break
            if not drop:
                keep.append(i)
        if rank == 1:
            # coprime-lead criterion is sound only for ideals: if any
            # member of an equal-lcm class has lcm == product, the whole
            # class reduces to zero.
            coprime_lcms = {
                lcms[j] for j in cand if lcms[j] == mon_mul(G[j][2], hm)
            }
            keep = [i for i in keep if lcms[i] not in coprime_lcms]
        for i in keep:
            li = lcms[i]
            P[(i, t)] = (mon_deg(li) + twists[hc], li)
    else:
        lcms = {}
    # chain criterion against existing pairs
    if P:
        dead = []
        for ij, (_, lij) in P.items():
            i, j = ij
            if j == t or G[i][1] != hc:
                continue
            if mon_divides(hm, lij) and lcms.get(i) != lij and lcms.get(j) != lij:
                dead.append(ij)
        for ij in dead:
            del P[ij]


def _engine(vec_terms: list, ctx: _Ctx, budget: GbBudget | None) -> list:
    """Run Buchberger to completion; return reduced monic records ascending."""
    p = ctx.p
    ring = ctx.ring
    max_degree = budget.max_degree if budget else None
    max_pairs = budget.max_pairs if budget else None
    G: list = []
    by_comp: dict = {}
    P: dict = {}

    def install(terms: tuple) -> None:
        rec = _monic_record(ctx, terms)
        G.append(rec)
        by_comp.setdefault(rec[1], []).append(rec)
        _update_pairs(G, P, len(G) - 1, ctx.twists, ctx.rank)

    for terms in vec_terms:
        if not terms:
            continue
        red = _reduce([(terms, 1, 0, None)], by_comp, p)
        if red:
            install(red)

    pairs_done = 0
    while P:
        ij = min(P, key=lambda key: (P[key][0], key))
        deg, tau = P.pop(ij)
        if max_degree is not None and deg > max_degree:
            raise BudgetExceededError(
                f"S-pair degree {deg} exceeds budget {max_degree}",
                kind="degree",
                limit=max_degree,
                reached=deg,
            )
        if max_pairs is not None and pairs_done >= max_pairs:
            raise BudgetExceededError(
                f"S-pair count exceeds budget {max_pairs}",
                kind="pairs",
                limit=max_pairs,
                reached=pairs_done + 1,
            )
        pairs_done += 1
        gi, gj = G[ij[0]], G[ij[1]]
        ktau = ctx.term_key(gi[1], ring.key(tau))
        seeds = [
            (gi[3], 1, ktau - gi[0], mon_div(tau, gi[2])),
            (gj[3], p - 1, ktau - gj[0], mon_div(tau, gj[2])),
        ]
        red = _reduce(seeds, by_comp, p)
        if red:
            install(red)

    # minimal lead set: keep records whose lead no earlier-kept lead divides
    ordered = sorted(G, key=lambda rec: rec[0])
    keep: list = []
    for rec in ordered:
        if any(k[1] == rec[1] and mon_divides(k[2], rec[2]) for k in keep):
            continue
        keep.append(rec)
    # interreduce tails against the whole minimal set; an element's own
    # lead can never divide its tail monomials (divisibility implies
    # order-greater), so one shared lookup table is safe.
    final_by_comp: dict = {}
    for rec in keep:
        final_by_comp.setdefault(rec[1], []).append(rec)
    out = []
    for rec in keep:
        tail = _reduce([(rec[3], 1, 0, None)], final_by_comp, p)
        out.append((rec[0], rec[1], rec[2], tail, rec[4]))
    out.sort(key=lambda rec: rec[0])
    return out


# ---------------------------------------------------------------------------
# public layer


class GroebnerBasis:
    """Reduced Groebner basis of a submodule: unique for (module, order).

    Elements are monic, no term of any element is divisible by the lead
    of another, and vectors are sorted by ascending lead. Reusable as a
    reducer via normal_form/contains.
    """

    __slots__ = ("ring", "rank", "twists", "position", "vectors", "_records", "_by_comp", "_ctx")

    def __init__(self, ctx: _Ctx, records: list):
        self.ring = ctx.ring
        self.rank = ctx.rank
        self.twists = ctx.twists
        self.position = ctx.position
        self._ctx = ctx
        self._records = tuple(records)
        by_comp: dict = {}
        for rec in records:
            by_comp.setdefault(rec[1], []).append(rec)
        self._by_comp = by_comp
        self.vectors = tuple(ctx.terms_to_vec(_record_terms(rec)) for rec in records)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self.vectors)

    def lead_terms(self) -> tuple:
        """(component, monomial) of each element, ascending order."""
        return tuple((rec[1], rec[2]) for rec in self._records)

    def lead_monomials_by_component(self) -> dict:
        out: dict = {j: [] for j in range(self.rank)}
        for rec in self._records:
            out[rec[1]].append(rec[2])
        return out

    def _coerce(self, v) -> ModVector:
        if isinstance(v, Poly):
            v = ModVector((v,))
        if not isinstance(v, ModVector):
            raise GhkError(f"expected ModVector or Poly, got {v!r}")
        if v.rank != self.rank:
            raise RingMismatchError(f"vector rank {v.rank} != ambient rank {self.rank}")
        if v.ring != self.ring:
            raise RingMismatchError("vector ring differs from basis ring")
        return v

    def normal_form(self, v) -> ModVector:
        """The unique reduced remainder of v modulo the submodule."""
        v = self._coerce(v)
        terms = self._ctx.vec_to_terms(v)
        red = _reduce([(terms, 1, 0, None)], self._by_comp, self.ring.p)
        return self._ctx.terms_to_vec(red)

    def contains(self, v) -> bool:
        v = self._coerce(v)
        terms = self._ctx.vec_to_terms(v)
        red = _reduce([(terms, 1, 0, None)], self._by_comp, self.ring.p, full=False)
        return not red

    def is_full_module(self) -> bool:
        """True when the basis generates all of R^rank (unit columns)."""
        zero_mon = (0,) * self.ring.nvars
        seen = {rec[1] for rec in self._records if rec[2] == zero_mon}
        return len(seen) == self.rank

    def __repr__(self) -> str:
        return f"<GroebnerBasis of rank-{self.rank} submodule, {len(self)} elements>"


class Submodule:
    """Finitely generated graded submodule of F = sum_j R(-twists[j]).

    R = S/(relation ideal) is carried implicitly: `relations` holds
    homogeneous ring polynomials, and every relation times every
    standard basis vector is adjoined to the spanning set that Groebner
    computations consume. `gens` is the user-level generating set over
    R and is what bracket-power style operations transform.
    """

    __slots__ = ("ring", "rank", "twists", "gens", "relations", "position", "_gb")

    def __init__(
        self,
        ring: PolyRing,
        rank: int,
        gens: Iterable,
        twists: Sequence[int] | None = None,
        relations: Iterable[Poly] = (),
        position: str = "top",
    ):
        if rank < 1 or rank > _CMAX:
            raise GhkError(f"rank {rank} out of supported range")
        self.ring = ring
        self.rank = rank
        self.twists = tuple(int(e) for e in twists) if twists is not None else (0,) * rank
        if len(self.twists) != rank:
            raise GhkError(f"{len(self.twists)} twists for rank {rank}")
        if position not in ("top", "pot"):
            raise GhkError(f"position rule must be 'top' or 'pot', got {position!r}")
        self.position = position

        rels = []
        for r in relations:
            if not isinstance(r, Poly):
                raise GhkError(f"relations must be Poly, got {r!r}")
            if r.ring != ring:
                raise RingMismatchError("relation lives in a different ring")
            if r.is_zero():
                continue
            if not r.is_homogeneous():
                raise HomogeneityError(f"relation {r} is not homogeneous")
            rels.append(r)
        self.relations = tuple(rels)

        vecs = []
        for g in gens:
            v = self._coerce_gen(g)
            if v.is_zero():
                continue
            if not v.is_homogeneous(self.twists):
                raise HomogeneityError(
                    f"generator {v} is not homogeneous for twists {self.twists}"
                )
            vecs.append(v)
        self.gens = tuple(vecs)
        self._gb = None

    def _coerce_gen(self, g) -> ModVector:
        if isinstance(g, ModVector):
            v = g
        elif isinstance(g, Poly):
            if self.rank != 1:
                raise GhkError("bare polynomials only generate rank-1 submodules")
            v = ModVector((g,))
        else:
            v = ModVector(tuple(g))
        if v.rank != self.rank:
            raise RingMismatchError(f"generator rank {v.rank} != ambient rank {self.rank}")
        if v.ring != self.ring:
            raise RingMismatchError("generator ring differs from submodule ring")
        return v

    @classmethod
    def ideal(cls, ring: PolyRing, gens: Iterable, relations: Iterable[Poly] = ()) -> "Submodule":
        """Rank-1 untwisted submodule: an ideal of R = S/(relations)."""
        return cls(ring, 1, gens, twists=(0,), relations=relations)

    def relation_columns(self) -> tuple:
        cols = []
        zero = self.ring.zero
        for r in self.relations:
            for j in range(self.rank):
                comps = [zero] * self.rank
                comps[j] = r
                cols.append(ModVector(comps))
        return tuple(cols)

    def spanning(self) -> tuple:
        """Generators plus relation columns: what the engine consumes."""
        return self.gens + self.relation_columns()

    def groebner(self, budget: GbBudget | None = None) -> GroebnerBasis:
        if self._gb is None:
            ctx = _Ctx(self.ring, self.rank, self.twists, self.position)
            records = _engine([ctx.vec_to_terms(v) for v in self.spanning()], ctx, budget)
            self._gb = GroebnerBasis(ctx, records)
        return self._gb

    def contains(self, v) -> bool:
        return self.groebner().contains(v)

    def contains_submodule(self, other: "Submodule") -> bool:
        self._check_ambient(other)
        gb = self.groebner()
        return all(gb.contains(v) for v in other.spanning())

    def _check_ambient(self, other: "Submodule") -> None:
        if not isinstance(other, Submodule):
            raise GhkError(f"expected a Submodule, got {other!r}")
        if other.ring != self.ring or other.rank != self.rank or other.twists != self.twists:
            raise RingMismatchError("submodules live in different ambient modules")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        if other.ring != self.ring or other.rank != self.rank or other.twists != self.twists:
            return False
        return self.contains_submodule(other) and other.contains_submodule(self)

    __hash__ = None  # semantic equality needs Groebner bases; not hashable

    def __repr__(self) -> str:
        return (
            f"<Submodule rank {self.rank}, twists {self.twists}, "
            f"{len(self.gens)} gens, {len(self.relations)} relations over F_{self.ring.p}>"
        )


def _trusted_reduced_basis(
    ring: PolyRing, rank: int, twists: tuple, position: str, vectors: Sequence[ModVector]
) -> GroebnerBasis:
    """Wrap vectors already known to form a reduced monic basis.

    Internal. Used when a reduced basis falls out of a larger
    elimination computation (block extraction preserves reducedness for
    rank-1 targets) so the engine need not rediscover it.
    """
    ctx = _Ctx(ring, rank, twists, position)
    records = sorted(
        (_monic_record(ctx, ctx.vec_to_terms(v)) for v in vectors if not v.is_zero()),
        key=lambda rec: rec[0],
    )
    return GroebnerBasis(ctx, records)


def buchberger(U: Submodule, budget: GbBudget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of U's spanning set (gens + relation columns)."""
    if budget is not None:
        # budgeted runs bypass the cache so an aborted attempt cannot
        # poison it, but a successful budgeted run seeds it
        ctx = _Ctx(U.ring, U.rank, U.twists, U.position)
        records = _engine([ctx.vec_to_terms(v) for v in U.spanning()], ctx, budget)
        gb = GroebnerBasis(ctx, records)
        if U._gb is None:
            U._gb = gb
        return gb
    return U.groebner()


def normal_form(v, gb) -> ModVector:
    """Reduced remainder of v modulo a submodule or prepared basis."""
    if isinstance(gb, Submodule):
        gb = gb.groebner()
    return gb.normal_form(v)


def is_member(v, U) -> bool:
    """Membership test; accepts a Submodule or a GroebnerBasis."""
    if isinstance(U, Submodule):
        U = U.groebner()
    return U.contains(v)
