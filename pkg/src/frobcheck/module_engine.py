"""Finitely presented modules over R = S/I and their homological algebra.

A module is the cokernel of a relations matrix into a free module R^r.
Matrices are stored as sparse columns ({row: Polynomial}); a map R^t -> R^r
is the list of images of the t source basis vectors. Computation over R is
realized in S by adjoining the ideal's Groebner basis times each ambient
unit vector, so one engine serves both layers; every reported presentation
is over R with entries in normal form.

Minimal free resolutions are produced step by step: syzygies of a minimal
differential may still be a redundant generating set, which surfaces as
unit entries in the next differential; those are cancelled by a change of
basis that deletes one source generator of the previous step (exactness is
preserved because the cancelled pair splits off a trivial exact summand).
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import _engine
from ._engine import FlatVec, Mono
from .algebra_kernel import (GroebnerBasis, INFINITE, Polynomial, RingModel,
                             standard_monomials)
from .budget import DEFAULT_BUDGET, Budget
from .errors import ArgumentError, InternalConsistencyError

Column = Dict[int, Polynomial]
Matrix = List[Column]


# ---------------------------------------------------------------------------
# column/matrix helpers

def _flatten_column(col: Column) -> FlatVec:
    out: FlatVec = {}
    for pos, poly in col.items():
        for m, c in poly.terms.items():
            out[(pos, m)] = c
    return out


def _unflatten(ring: RingModel, vec: FlatVec) -> Column:
    polys: Dict[int, Dict[Mono, int]] = {}
    for (pos, m), c in vec.items():
        polys.setdefault(pos, {})[m] = c
    return {pos: Polynomial(ring, terms) for pos, terms in sorted(polys.items())}


def _nf_column(ring: RingModel, col: Column, budget: Budget) -> Column:
    out = {}
    for pos, poly in col.items():
        g = ring.nf(poly, budget) if ring.ideal_gens else poly
        if not g.is_zero():
            out[pos] = g
    return out


def _ideal_padding(ring: RingModel, rank: int, budget: Budget) -> List[FlatVec]:
    pads: List[FlatVec] = []
    if not ring.ideal_gens:
        return pads
    for g in ring.ideal_groebner(budget).polynomials():
        for j in range(rank):
            pads.append({(j, m): c for m, c in g.terms.items()})
    return pads


def _scaled_column(col: Column, poly: Polynomial) -> Column:
    out: Column = {}
    for pos, entry in col.items():
        out[pos] = entry * poly
    return out


def _add_into(ring: RingModel, acc: Column, col: Column) -> None:
    for pos, entry in col.items():
        cur = acc.get(pos)
        v = entry if cur is None else cur + entry
        if v.is_zero():
            acc.pop(pos, None)
        else:
            acc[pos] = v


def matmul(ring: RingModel, a: Matrix, b: Matrix, budget: Budget = DEFAULT_BUDGET
           ) -> Matrix:
    """Columns of A*B where B's rows index A's columns."""
    out: Matrix = []
    for bcol in b:
        acc: Column = {}
        for k, entry in bcol.items():
            _add_into(ring, acc, _scaled_column(a[k], entry))
        out.append(_nf_column(ring, acc, budget))
    return out


def kron_identity(matrix: Matrix, n: int) -> Matrix:
    """The map d (x) id on N^rank blocks: source index (c, j) -> c*n + j."""
    out: Matrix = []
    for col in matrix:
        for j in range(n):
            out.append({r * n + j: entry for r, entry in col.items()})
    return out


def transpose(matrix: Matrix, nrows: int) -> Matrix:
    out: Matrix = [dict() for _ in range(nrows)]
    for c, col in enumerate(matrix):
        for r, entry in col.items():
            out[r][c] = entry
    return out


# ---------------------------------------------------------------------------
# presented modules

class PresentedModule:
    """Cokernel of a relations matrix inside R^ambient_rank.

    Entries are normal forms modulo the ring ideal; identically zero
    relation columns are dropped. Instances are immutable; homological
    caches (Groebner basis of the relation submodule, minimal form, length,
    resolution) are invisible memoization.
    """

    __slots__ = ("ring", "ambient_rank", "columns", "_cache")

    def __init__(self, ring: RingModel, ambient_rank: int,
                 columns: Sequence[Column], budget: Budget = DEFAULT_BUDGET):
        self.ring = ring
        self.ambient_rank = int(ambient_rank)
        cleaned: List[Column] = []
        for col in columns:
            for pos in col:
                if not (0 <= pos < self.ambient_rank):
                    raise ArgumentError("relation entry outside ambient rank")
            nf = _nf_column(ring, col, budget)
            if nf:
                cleaned.append(nf)
        self.columns = tuple(cleaned)
        self._cache: dict = {}

    @classmethod
    def free(cls, ring: RingModel, rank: int) -> "PresentedModule":
        return cls(ring, rank, [])

    @classmethod
    def from_rows(cls, ring: RingModel, rows: Sequence[Sequence[Polynomial]],
                  ambient_rank: Optional[int] = None) -> "PresentedModule":
        r = len(rows) if ambient_rank is None else ambient_rank
        if rows:
            t = len(rows[0])
            if any(len(row) != t for row in rows):
                raise ArgumentError("ragged relations matrix")
        else:
            t = 0
        cols: Matrix = []
        for j in range(t):
            col: Column = {}
            for i in range(r):
                entry = rows[i][j]
                if not entry.is_zero():
                    col[i] = entry
            cols.append(col)
        return cls(ring, r, cols)

    def rows(self) -> List[List[Polynomial]]:
        out = [[self.ring.zero() for _ in self.columns]
               for _ in range(self.ambient_rank)]
        for j, col in enumerate(self.columns):
            for i, entry in col.items():
                out[i][j] = entry
        return out

    @property
    def num_relations(self) -> int:
        return len(self.columns)

    def relations_groebner(self, budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
        gb = self._cache.get("gb")
        if gb is None:
            gb = module_groebner([_flatten_column(c) for c in self.columns],
                                 self.ambient_rank, self.ring, budget,
                                 _flat_input=True)
            self._cache["gb"] = gb
        return gb

    def is_zero(self, budget: Budget = DEFAULT_BUDGET) -> bool:
        if self.ambient_rank == 0:
            return True
        flag = self._cache.get("is_zero")
        if flag is None:
            gb = self.relations_groebner(budget)
            flag = all(
                not gb.reduce_flat({(j, self.ring.ctx.zero_mono): 1})
                for j in range(self.ambient_rank))
            self._cache["is_zero"] = flag
        return flag

    def __repr__(self) -> str:
        return (f"PresentedModule(rank={self.ambient_rank}, "
                f"relations={self.num_relations})")


def module_groebner(gens, ambient_rank: int, ring: Optional[RingModel] = None,
                    budget: Budget = DEFAULT_BUDGET,
                    _flat_input: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of a submodule of R^ambient_rank.

    ``gens`` are vectors of ring elements (length ambient_rank) or sparse
    columns. The computation lifts to S by appending the ideal basis times
    each unit vector, so normal forms against the result are canonical
    representatives of R-module cosets.
    """
    flats: List[FlatVec] = []
    if _flat_input:
        flats = list(gens)
    else:
        for v in gens:
            if isinstance(v, dict):
                col = v
            else:
                col = {i: entry for i, entry in enumerate(v)
                       if not entry.is_zero()}
                if len(v) != ambient_rank:
                    raise ArgumentError("vector length differs from ambient rank")
            if ring is None and col:
                ring = next(iter(col.values())).ring
            flats.append(_flatten_column(col))
    if ring is None:
        raise ArgumentError("ring required when generators are empty")
    flats = flats + _ideal_padding(ring, ambient_rank, budget)
    gbd = _engine.buchberger_flat(flats, ring.ctx, budget)
    descr = f"POT-grevlex(rank={ambient_rank}, weights={ring.weights})"
    return GroebnerBasis(ring, ambient_rank, gbd.index, descr)


def _kernel_columns(ring: RingModel, lead_cols: Matrix, rest_cols: Matrix,
                    rank: int, budget: Budget) -> Matrix:
    """Vectors v with (lead_cols)v in the R-span of rest_cols.

    Syzygies of [lead | rest | ideal padding] in S^rank, projected onto the
    lead block and normal-formed. The projection generates the kernel
    because any relation's tail coefficients are absorbed by the other
    blocks.
    """
    flats = [_flatten_column(c) for c in lead_cols]
    nlead = len(flats)
    flats += [_flatten_column(c) for c in rest_cols]
    flats += _ideal_padding(ring, rank, budget)
    out: Matrix = []
    seen = set()
    for z in _engine.syzygies_flat(flats, ring.ctx, budget):
        proj = {(i, m): c for (i, m), c in z.items() if i < nlead}
        if not proj:
            continue
        col = _nf_column(ring, _unflatten(ring, proj), budget)
        if not col:
            continue
        key = tuple(sorted((pos, tuple(sorted(p.terms.items())))
                           for pos, p in col.items()))
        if key not in seen:
            seen.add(key)
            out.append(col)
    return out


class SyzygyPresentation(PresentedModule):
    """Presentation of a kernel, with the embedded generators kept.

    ``embedded_generators[j]`` is the j-th generator of the kernel as a
    vector inside R^embedding_rank (coefficients on the original
    generators); the inherited presentation lives on those generators.
    """

    __slots__ = ("embedded_generators", "embedding_rank")

    def __init__(self, ring: RingModel, columns: Sequence[Column],
                 embedded: Sequence[Column], embedding_rank: int,
                 budget: Budget = DEFAULT_BUDGET):
        super().__init__(ring, len(embedded), columns, budget)
        self.embedded_generators = tuple(embedded)
        self.embedding_rank = embedding_rank


def syzygies(gens, ambient_rank: int, ring: Optional[RingModel] = None,
             budget: Budget = DEFAULT_BUDGET) -> SyzygyPresentation:
    """Present the kernel of the map R^len(gens) -> R^ambient_rank.

    Schreyer-style generators of the kernel (contracted back to the input
    generators) become the ambient basis; their own syzygies are the
    relations. The generators themselves stay available as
    ``embedded_generators``.
    """
    cols: Matrix = []
    for v in gens:
        if isinstance(v, dict):
            cols.append(v)
        else:
            if len(v) != ambient_rank:
                raise ArgumentError("vector length differs from ambient rank")
            cols.append({i: e for i, e in enumerate(v) if not e.is_zero()})
        if ring is None and cols[-1]:
            ring = next(iter(cols[-1].values())).ring
    if ring is None:
        raise ArgumentError("ring required when generators are empty")
    embedded = _kernel_columns(ring, cols, [], ambient_rank, budget)
    rels = _kernel_columns(ring, embedded, [], len(cols), budget) \
        if embedded else []
    return SyzygyPresentation(ring, rels, embedded, len(cols), budget)


# ---------------------------------------------------------------------------
# minimalization

def _find_unit_pivot(ring: RingModel, cols: Matrix) -> Optional[Tuple[int, int, int]]:
    for j, col in enumerate(cols):
        for i in sorted(col):
            entry = col[i]
            c = entry.constant_term()
            if c:
                if len(entry.terms) != 1:
                    # exact unit detection needs graded entries; either the
                    # caller fed non-quasi-homogeneous relations (locality
                    # convention violated) or an engine step lost gradedness
                    raise InternalConsistencyError(
                        "matrix entry mixes a constant with positive-degree "
                        f"terms ({ring.render_poly(entry)}); relation "
                        "entries must be quasi-homogeneous for the declared "
                        "weights")
                return i, j, c
    return None


def _minimalize_columns(ring: RingModel, cols: Matrix, nrows: int,
                        budget: Budget) -> Tuple[Matrix, List[int]]:
    """Cancel unit entries; return (new columns, surviving original rows).

    Cancelling the pivot at (r0, c0) substitutes generator r0 by the other
    generators: every other column c gets col_c -= (col_c[r0]/u) * col_c0,
    then row r0 and column c0 are removed.
    """
    work: Matrix = [dict(c) for c in cols]
    alive_rows = set(range(nrows))
    while True:
        pivot = _find_unit_pivot(ring, work)
        if pivot is None:
            break
        r0, c0, u = pivot
        uinv = ring.ctx.inv(u)
        pivot_col = work[c0]
        for j, col in enumerate(work):
            if j == c0:
                continue
            top = col.get(r0)
            if top is None:
                continue
            lam = top.scale(uinv)
            for i, entry in pivot_col.items():
                if i == r0:
                    continue
                cur = col.get(i, ring.zero()) - lam * entry
                cur = ring.nf(cur, budget) if ring.ideal_gens else cur
                if cur.is_zero():
                    col.pop(i, None)
                else:
                    col[i] = cur
            del col[r0]
        del work[c0]
        alive_rows.discard(r0)
    kept = sorted(alive_rows)
    remap = {old: new for new, old in enumerate(kept)}
    out: Matrix = []
    for col in work:
        if col:
            out.append({remap[i]: e for i, e in col.items()})
    return out, kept


def minimalize(M: PresentedModule, budget: Budget = DEFAULT_BUDGET
               ) -> PresentedModule:
    """Minimal presentation of M: all relation entries in the maximal ideal."""
    cached = M._cache.get("minimal")
    if cached is None:
        cols, kept = _minimalize_columns(M.ring, list(M.columns),
                                         M.ambient_rank, budget)
        cached = PresentedModule(M.ring, len(kept), cols, budget)
        cached._cache["minimal"] = cached
        M._cache["minimal"] = cached
    return cached


def min_generators(M: PresentedModule, budget: Budget = DEFAULT_BUDGET) -> int:
    """mu(M): ambient rank once unit entries are cancelled (Nakayama)."""
    return minimalize(M, budget).ambient_rank


def module_length(M: PresentedModule, budget: Budget = DEFAULT_BUDGET):
    """F_p-dimension of M, or INFINITE.

    Counts standard monomials of the leading submodule position by
    position; the ideal padding inside the relation basis makes each
    position's leading ideal contain the leading ideal of I.
    """
    if M.ambient_rank == 0:
        return 0
    cached = M._cache.get("length")
    if cached is None:
        gb = M.relations_groebner(budget)
        nvars = len(M.ring.variables)
        per_pos: Dict[int, List[Mono]] = {j: [] for j in range(M.ambient_rank)}
        for pos, m in gb.index.leads:
            per_pos[pos].append(m)
        total = 0
        for j in range(M.ambient_rank):
            count, _ = standard_monomials(per_pos[j], nvars)
            if count is INFINITE:
                total = INFINITE
                break
            total += count
        cached = total
        M._cache["length"] = cached
    return cached


# ---------------------------------------------------------------------------
# complexes

class FreeComplex:
    """Chain complex of free R-modules: d_i maps step i to step i-1.

    ranks[i] is the rank of F_i; differentials[i-1] holds d_i. Construction
    verifies that matrix shapes chain and that consecutive differentials
    compose to zero modulo the ring ideal.
    """

    __slots__ = ("ring", "ranks", "differentials")

    def __init__(self, ring: RingModel, ranks: Sequence[int],
                 differentials: Sequence[Matrix], verify: bool = True,
                 budget: Budget = DEFAULT_BUDGET):
        self.ring = ring
        self.ranks = tuple(int(r) for r in ranks)
        self.differentials = tuple(tuple(dict(c) for c in d)
                                   for d in differentials)
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ArgumentError("rank list and differential list lengths differ")
        for i, d in enumerate(self.differentials, start=1):
            if len(d) != self.ranks[i]:
                raise ArgumentError(f"d_{i} has wrong column count")
            for col in d:
                for row in col:
                    if not (0 <= row < self.ranks[i - 1]):
                        raise ArgumentError(f"d_{i} row index out of range")
        if verify:
            for i in range(1, len(self.differentials)):
                prod = matmul(ring, list(self.differentials[i - 1]),
                              list(self.differentials[i]), budget)
                if any(col for col in prod):
                    raise InternalConsistencyError(
                        f"d_{i} . d_{i + 1} is nonzero modulo the ideal")

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def rank(self, i: int) -> int:
        if i < 0:
            return 0
        return self.ranks[i] if i < len(self.ranks) else 0

    def differential(self, i: int) -> Matrix:
        """d_i as a list of sparse columns; zero map beyond the recorded length."""
        if 1 <= i <= len(self.differentials):
            return [dict(c) for c in self.differentials[i - 1]]
        return [dict() for _ in range(self.rank(i))]

    def betti_numbers(self) -> Tuple[int, ...]:
        return self.ranks

    def homology_at(self, i: int, budget: Budget = DEFAULT_BUDGET
                    ) -> "HomologyModule":
        return _free_homology(self, i, budget)

    def __repr__(self) -> str:
        return f"FreeComplex(ranks={self.ranks})"


class ModuleComplex:
    """Complex whose terms are presented modules and whose maps are ambient
    matrices compatible with the relations (e.g. a Koszul complex tensored
    with a module)."""

    __slots__ = ("ring", "terms", "maps")

    def __init__(self, ring: RingModel, terms: Sequence[PresentedModule],
                 maps: Sequence[Matrix]):
        self.ring = ring
        self.terms = tuple(terms)
        self.maps = tuple(tuple(dict(c) for c in m) for m in maps)
        if len(self.maps) != max(len(self.terms) - 1, 0):
            raise ArgumentError("terms/maps length mismatch")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def homology_at(self, i: int, budget: Budget = DEFAULT_BUDGET
                    ) -> "HomologyModule":
        if not (0 <= i <= self.length):
            raise ArgumentError(f"homology index {i} out of range")
        mid = self.terms[i]
        out_map = list(self.maps[i - 1]) if i >= 1 else None
        out_target = self.terms[i - 1] if i >= 1 else None
        in_map = list(self.maps[i]) if i < self.length else None
        return present_homology(self.ring, mid, out_map, out_target, in_map,
                                budget)


class HomologyModule:
    """H_i = ker d_i / im d_{i+1}, carried as a presentation plus flags."""

    __slots__ = ("presentation", "is_zero")

    def __init__(self, presentation: PresentedModule, is_zero: bool):
        self.presentation = presentation
        self.is_zero = is_zero

    def length(self, budget: Budget = DEFAULT_BUDGET):
        if self.is_zero:
            return 0
        return module_length(self.presentation, budget)

    def __repr__(self) -> str:
        return f"HomologyModule(zero={self.is_zero}, " \
               f"rank={self.presentation.ambient_rank})"


def present_homology(ring: RingModel, mid: PresentedModule,
                     out_map: Optional[Matrix],
                     out_target: Optional[PresentedModule],
                     in_map: Optional[Matrix],
                     budget: Budget = DEFAULT_BUDGET) -> HomologyModule:
    """Present ker(out_map)/im(in_map) at the presented module ``mid``.

    The kernel is computed as a preimage: v is a cycle when out_map(v)
    lands in the relation submodule of the target. Its generators become
    the ambient basis of the homology; relations are every expression of a
    boundary or mid-relation in terms of the cycles plus the syzygies among
    the cycles, obtained from a single projected syzygy computation.
    """
    rm = mid.ambient_rank
    if rm == 0:
        return HomologyModule(PresentedModule.free(ring, 0), True)
    if out_map is None:
        one = ring.one()
        kcols: Matrix = [{j: one} for j in range(rm)]
    else:
        rest = list(out_target.columns)
        kcols = _kernel_columns(ring, out_map, rest,
                                out_target.ambient_rank, budget)
    ucols: Matrix = []
    if in_map is not None:
        ucols.extend(in_map)
    ucols.extend(mid.columns)
    if not kcols:
        return HomologyModule(PresentedModule.free(ring, 0), True)
    rels = _kernel_columns(ring, kcols, ucols, rm, budget)
    pres = PresentedModule(ring, len(kcols), rels, budget)
    return HomologyModule(pres, pres.is_zero(budget))


def _free_homology(C: FreeComplex, i: int, budget: Budget) -> HomologyModule:
    if not (0 <= i <= max(C.length, 0)):
        raise ArgumentError(f"homology index {i} out of range")
    ring = C.ring
    mid = PresentedModule.free(ring, C.rank(i))
    out_map = C.differential(i) if i >= 1 else None
    out_target = PresentedModule.free(ring, C.rank(i - 1)) if i >= 1 else None
    in_map = C.differential(i + 1) if C.rank(i + 1) else None
    return present_homology(ring, mid, out_map, out_target, in_map, budget)


def homology_at(C, i: int, budget: Budget = DEFAULT_BUDGET) -> HomologyModule:
    """Homology of a FreeComplex or ModuleComplex at homological degree i."""
    return C.homology_at(i, budget)


# ---------------------------------------------------------------------------
# resolutions

def minimal_free_resolution(M: PresentedModule, length: int,
                            budget: Budget = DEFAULT_BUDGET) -> FreeComplex:
    """Minimal free resolution of M out to homological degree ``length``.

    Obtained by iterated syzygies with unit cancellation at each new step;
    every differential ends up with all entries in the maximal ideal, and
    the recorded ranks are the Betti numbers. If a syzygy step is zero the
    resolution stops early (finite projective dimension); callers read
    rank(i) = 0 beyond the recorded length.
    """
    if length < 0:
        raise ArgumentError("resolution length must be nonnegative")
    cached = M._cache.get("resolution")
    if cached is not None:
        res, complete = cached
        if complete or res.length >= length:
            return _truncate_complex(res, length)
    Mmin = minimalize(M, budget)
    ranks = [Mmin.ambient_rank]
    diffs: List[Matrix] = []
    cur: Matrix = [dict(c) for c in Mmin.columns]
    for step in range(1, length + 1):
        if not cur:
            break
        diffs.append(cur)
        ranks.append(len(cur))
        if step == length:
            break
        syz = _kernel_columns(M.ring, cur, [], ranks[step - 1], budget)
        # unit entries in the syzygies mean cur's columns were a redundant
        # generating set; cancelling them drops matching columns of cur
        syz, kept = _minimalize_columns(M.ring, syz, len(cur), budget)
        if len(kept) != len(cur):
            diffs[-1] = [diffs[-1][j] for j in kept]
            ranks[step] = len(kept)
        cur = syz
    # stopping before `length` means a zero syzygy appeared: pd is finite
    complete = len(diffs) < length
    res = FreeComplex(M.ring, ranks, diffs, verify=True, budget=budget)
    M._cache["resolution"] = (res, complete)
    return res


def _truncate_complex(res: FreeComplex, length: int) -> FreeComplex:
    if res.length <= length:
        return res
    return FreeComplex(res.ring, res.ranks[:length + 1],
                       res.differentials[:length], verify=False)


# ---------------------------------------------------------------------------
# Koszul complexes, tensor and hom complexes, Tor, Ext

def _tensor_presented(N: PresentedModule, k: int) -> PresentedModule:
    """N^k with generator (free index b, N index j) at position b*rN + j."""
    rn = N.ambient_rank
    cols: Matrix = []
    for b in range(k):
        for col in N.columns:
            cols.append({b * rn + i: e for i, e in col.items()})
    return PresentedModule(N.ring, k * rn, cols)


def koszul_complex(elements: Sequence[Polynomial], M: PresentedModule
                   ) -> ModuleComplex:
    """Exterior-algebra complex on the given elements tensored with M.

    Step i has ambient rank binomial(c, i) * mu-ambient(M); the basis of
    step i is indexed by sorted i-subsets of the elements.
    """
    ring = M.ring
    for e in elements:
        if not ring.compatible(e.ring):
            raise ArgumentError("Koszul element outside the module's ring")
    c = len(elements)
    bases = [list(combinations(range(c), i)) for i in range(c + 1)]
    terms = [_tensor_presented(M, len(bases[i])) for i in range(c + 1)]
    maps: List[Matrix] = []
    rn = M.ambient_rank
    p = ring.p
    for i in range(1, c + 1):
        index_prev = {s: k for k, s in enumerate(bases[i - 1])}
        koszul: Matrix = []
        for s in bases[i]:
            col: Column = {}
            for t, var in enumerate(s):
                rest = s[:t] + s[t + 1:]
                sign = 1 if t % 2 == 0 else p - 1
                entry = elements[var].scale(sign)
                if not entry.is_zero():
                    col[index_prev[rest]] = entry
            koszul.append(col)
        maps.append(kron_identity(koszul, rn))
    return ModuleComplex(ring, terms, maps)


def tensor_with_module(res: FreeComplex, N: PresentedModule,
                       upto: int) -> ModuleComplex:
    """G_* (x) N out to step ``upto`` (zero terms beyond the resolution)."""
    terms = [_tensor_presented(N, res.rank(i)) for i in range(upto + 1)]
    maps = [kron_identity(res.differential(i), N.ambient_rank)
            for i in range(1, upto + 1)]
    return ModuleComplex(res.ring, terms, maps)


def hom_into_module(res: FreeComplex, N: PresentedModule,
                    upto: int) -> ModuleComplex:
    """Cochain complex Hom(G_*, N): terms N^{b_i}, maps the transposed
    differentials (maps[i] is the coboundary Hom(G_i,N) -> Hom(G_{i+1},N))."""
    terms = [_tensor_presented(N, res.rank(i)) for i in range(upto + 1)]
    maps: List[Matrix] = []
    for i in range(1, upto + 1):
        d = res.differential(i)
        maps.append(kron_identity(transpose(d, res.rank(i - 1)),
                                  N.ambient_rank))
    return ModuleComplex(res.ring, terms, maps)


def tor(M: PresentedModule, N: PresentedModule, i: int,
        budget: Budget = DEFAULT_BUDGET) -> HomologyModule:
    """Tor_i over R: homology of (minimal resolution of M) (x) N."""
    if i < 0:
        raise ArgumentError("Tor index must be nonnegative")
    if not M.ring.compatible(N.ring):
        raise ArgumentError("Tor arguments live over different rings")
    res = minimal_free_resolution(M, i + 1, budget)
    cx = tensor_with_module(res, N, i + 1)
    return cx.homology_at(i, budget)


def ext(M: PresentedModule, N: PresentedModule, i: int,
        budget: Budget = DEFAULT_BUDGET) -> HomologyModule:
    """Ext^i over R: cohomology of Hom(minimal resolution of M, N).

    ker(Hom(G_i,N) -> Hom(G_{i+1},N)) / im(Hom(G_{i-1},N) -> Hom(G_i,N)).
    """
    if i < 0:
        raise ArgumentError("Ext index must be nonnegative")
    if not M.ring.compatible(N.ring):
        raise ArgumentError("Ext arguments live over different rings")
    ring = M.ring
    res = minimal_free_resolution(M, i + 1, budget)
    hom = hom_into_module(res, N, i + 1)
    mid = hom.terms[i]
    out_map = list(hom.maps[i]) if i < len(hom.maps) and res.rank(i + 1) else None
    out_target = hom.terms[i + 1] if out_map is not None else None
    in_map = list(hom.maps[i - 1]) if i >= 1 else None
    if in_map is not None and not res.rank(i - 1):
        in_map = None
    return present_homology(ring, mid, out_map, out_target, in_map, budget)
