"""Flat sparse Groebner engine (internal).

Elements of a free module S^r over S = F_p[x_1..x_v] are "flat vectors":
dicts mapping a term key ``(position, exponent_tuple)`` to a nonzero residue
in [1, p). The term order is position-over-term: lower position dominates,
ties broken by weighted graded reverse lexicographic order on the monomial.
Rank-1 vectors (all keys at position 0) are plain polynomials.

Everything here is deterministic: pair selection is the normal strategy
(smallest lcm in the monomial order, ties by generator index), reducers are
chosen by lowest index, and reduced bases are sorted by leading term. The
reduced Groebner basis of a submodule is unique, so permuting the input
generators cannot change the output.
"""

from __future__ import annotations

import heapq
from typing import Callable, Dict, List, Optional, Tuple

from .budget import Budget
from .errors import InternalConsistencyError

Mono = Tuple[int, ...]
TermKey = Tuple[int, Mono]
FlatVec = Dict[TermKey, int]


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_sub(a: Mono, b: Mono) -> Mono:
    # caller guarantees b | a
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class EngineContext:
    """Field and order data: modulus, weights, key caches, inverse table."""

    __slots__ = ("p", "weights", "nvars", "zero_mono", "_inv", "_mkey")

    def __init__(self, p: int, weights: Tuple[int, ...]):
        self.p = p
        self.weights = tuple(weights)
        self.nvars = len(weights)
        self.zero_mono = (0,) * self.nvars
        self._inv = [0] + [pow(c, p - 2, p) for c in range(1, p)]
        self._mkey: Dict[Mono, tuple] = {}

    def inv(self, c: int) -> int:
        return self._inv[c % self.p]

    def mono_key(self, m: Mono) -> tuple:
        k = self._mkey.get(m)
        if k is None:
            w = self.weights
            k = (sum(w[i] * e for i, e in enumerate(m)),) + tuple(
                -e for e in reversed(m))
            self._mkey[m] = k
        return k

    def term_key(self, t: TermKey) -> tuple:
        return (-t[0],) + self.mono_key(t[1])

    def wdeg(self, m: Mono) -> int:
        return self.mono_key(m)[0]


def vec_axpy(target: FlatVec, c: int, shift: Mono, src: FlatVec, p: int) -> None:
    """target += c * x^shift * src, in place; c taken mod p."""
    c %= p
    if not c:
        return
    for (pos, m), a in src.items():
        key = (pos, mono_mul(shift, m))
        v = (target.get(key, 0) + c * a) % p
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def vec_scale(vec: FlatVec, c: int, p: int) -> FlatVec:
    c %= p
    return {k: (c * a) % p for k, a in vec.items()}


def lead_term(vec: FlatVec, ctx: EngineContext) -> TermKey:
    return max(vec, key=ctx.term_key)


class GIndex:
    """A list of monic flat vectors with a per-position divisor index."""

    __slots__ = ("ctx", "elems", "leads", "by_pos")

    def __init__(self, ctx: EngineContext):
        self.ctx = ctx
        self.elems: List[FlatVec] = []
        self.leads: List[TermKey] = []
        self.by_pos: Dict[int, List[int]] = {}

    def add(self, vec: FlatVec, lead: TermKey) -> int:
        idx = len(self.elems)
        self.elems.append(vec)
        self.leads.append(lead)
        self.by_pos.setdefault(lead[0], []).append(idx)
        return idx

    def find_divisor(self, pos: int, m: Mono) -> int:
        # lowest index wins: fixed reducer choice keeps reductions reproducible
        for idx in self.by_pos.get(pos, ()):
            if mono_divides(self.leads[idx][1], m):
                return idx
        return -1


def reduce_full(vec: FlatVec, G: GIndex, ctx: EngineContext,
                on_reduce: Optional[Callable[[int, Mono, int], None]] = None
                ) -> FlatVec:
    """Full normal form of ``vec`` against the monic vectors in ``G``.

    Consumes ``vec`` (a private dict). Each reduction step subtracts
    c * x^delta * G.elems[t]; on_reduce(t, delta, c) mirrors the step for
    coefficient tracking. Terms moved to the output are irreducible and, in
    a multiplicative order, strictly decreasing, so the loop terminates.
    """
    p = ctx.p
    out: FlatVec = {}
    while vec:
        t = max(vec, key=ctx.term_key)
        pos, m = t
        gi = G.find_divisor(pos, m)
        if gi < 0:
            out[t] = vec.pop(t)
        else:
            c = vec[t]
            delta = mono_sub(m, G.leads[gi][1])
            vec_axpy(vec, p - c, delta, G.elems[gi], p)
            if on_reduce is not None:
                on_reduce(gi, delta, c)
    return out


class GBData:
    """Reduced Groebner basis plus optional certificates.

    ``reps[k]`` expresses basis element k over the original generators (keys
    are ``(generator_index, mono)``); present only when tracking was on.
    """

    __slots__ = ("index", "reps", "spairs_reduced")

    def __init__(self, index: GIndex, reps, spairs_reduced: int):
        self.index = index
        self.reps = reps
        self.spairs_reduced = spairs_reduced


def _is_rank1(gens: List[FlatVec]) -> bool:
    return all(k[0] == 0 for g in gens for k in g)


def buchberger_flat(gens: List[FlatVec], ctx: EngineContext, budget: Budget,
                    track: bool = False) -> GBData:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    Pair management follows Gebauer-Moeller: the chain filter on old pairs,
    the M and F rules on new pairs, and the product criterion only in the
    rank-1 (ideal) case, where it is valid.
    """
    p = ctx.p
    idx = GIndex(ctx)
    reps: Optional[List[FlatVec]] = [] if track else None
    heap: list = []
    alive_pairs: Dict[Tuple[int, int], Mono] = {}
    rank1 = _is_rank1(gens)
    spairs = 0

    def gm_update(t: int) -> None:
        pt, mt = idx.leads[t]
        cand = []
        for i in range(t):
            pi, mi = idx.leads[i]
            if pi == pt:
                cand.append((i, mono_lcm(mi, mt)))
        # chain filter: drop old pairs strictly covered through the new lead
        for (i, j), l in list(alive_pairs.items()):
            if idx.leads[i][0] != pt or not mono_divides(mt, l):
                continue
            if mono_lcm(idx.leads[i][1], mt) != l and \
               mono_lcm(idx.leads[j][1], mt) != l:
                del alive_pairs[(i, j)]
        # M rule: keep only lcm-minimal candidates
        keep = []
        for i, l in cand:
            if any(j != i and l2 != l and mono_divides(l2, l)
                   for j, l2 in cand):
                continue
            keep.append((i, l))
        # F rule: one pair per lcm; product criterion kills a whole class
        by_lcm: Dict[Mono, List[int]] = {}
        for i, l in keep:
            by_lcm.setdefault(l, []).append(i)
        for l in sorted(by_lcm):
            members = by_lcm[l]
            if rank1 and any(mono_coprime(idx.leads[i][1], mt)
                             for i in members):
                continue
            i = min(members)
            alive_pairs[(i, t)] = l
            heapq.heappush(heap, (ctx.mono_key(l), i, t))

    def add_elem(vec: FlatVec, rep: Optional[FlatVec]) -> None:
        lead = lead_term(vec, ctx)
        c = vec[lead]
        if c != 1:
            ic = ctx.inv(c)
            vec = vec_scale(vec, ic, p)
            if rep is not None:
                rep = vec_scale(rep, ic, p)
        idx.add(vec, lead)
        if track:
            reps.append(rep)
        budget.check_basis(len(idx.elems))
        gm_update(len(idx.elems) - 1)

    for i, g in enumerate(gens):
        if g:
            add_elem(dict(g), {(i, ctx.zero_mono): 1} if track else None)

    while heap:
        key, i, j = heapq.heappop(heap)
        l = alive_pairs.pop((i, j), None)
        if l is None:
            continue
        spairs += 1
        budget.check_spairs(spairs)
        budget.check_degree(key[0])
        di = mono_sub(l, idx.leads[i][1])
        dj = mono_sub(l, idx.leads[j][1])
        u: FlatVec = {}
        vec_axpy(u, 1, di, idx.elems[i], p)
        vec_axpy(u, p - 1, dj, idx.elems[j], p)
        if track:
            rep: FlatVec = {}
            vec_axpy(rep, 1, di, reps[i], p)
            vec_axpy(rep, p - 1, dj, reps[j], p)

            def mirror(t: int, d: Mono, c: int, _r=rep) -> None:
                vec_axpy(_r, p - c, d, reps[t], p)

            h = reduce_full(u, idx, ctx, on_reduce=mirror)
            if h:
                add_elem(h, rep)
        else:
            h = reduce_full(u, idx, ctx)
            if h:
                add_elem(h, None)

    # minimalize: drop elements whose lead is covered by another survivor
    n = len(idx.elems)
    alive = []
    for i in range(n):
        pi, mi = idx.leads[i]
        redundant = False
        for j in range(n):
            if j == i:
                continue
            pj, mj = idx.leads[j]
            if pj == pi and mono_divides(mj, mi) and (mj != mi or j < i):
                redundant = True
                break
        if not redundant:
            alive.append(i)
    alive.sort(key=lambda k: ctx.term_key(idx.leads[k]))

    final = GIndex(ctx)
    freps: Optional[List[FlatVec]] = [] if track else None
    for i in alive:
        final.add(idx.elems[i], idx.leads[i])
        if track:
            freps.append(reps[i])

    # tail reduction: leads are pairwise non-divisible so irreducibility of
    # tail terms depends on leads only; one pass yields the reduced basis
    for k in range(len(final.elems)):
        lead = final.leads[k]
        vec = dict(final.elems[k])
        del vec[lead]
        if not vec:
            continue
        if track:
            rep = freps[k]

            def mirror(t: int, d: Mono, c: int, _r=rep) -> None:
                vec_axpy(_r, p - c, d, freps[t], p)

            nf = reduce_full(vec, final, ctx, on_reduce=mirror)
        else:
            nf = reduce_full(vec, final, ctx)
        nf[lead] = 1
        final.elems[k] = nf

    return GBData(final, freps, spairs)


def _acc(coeffs: FlatVec, key: TermKey, c: int, p: int) -> None:
    v = (coeffs.get(key, 0) + c) % p
    if v:
        coeffs[key] = v
    else:
        coeffs.pop(key, None)


def syzygies_flat(gens: List[FlatVec], ctx: EngineContext,
                  budget: Budget) -> List[FlatVec]:
    """Generators of the first syzygy module of ``gens`` inside S^len(gens).

    Returned vectors are keyed by ``(generator_index, mono)``. The set is a
    generating set (usually redundant): Schreyer syzygies of the reduced
    basis pulled back through the tracked transformation, plus the columns
    of I - A*B expressing reducible input generators.
    """
    p = ctx.p
    gbd = buchberger_flat(gens, ctx, budget, track=True)
    G, reps = gbd.index, gbd.reps
    m = len(G.elems)
    rank1 = _is_rank1(gens)

    zs: List[FlatVec] = []
    for k in range(m):
        pk, mk = G.leads[k]
        for l in range(k + 1, m):
            pl, ml = G.leads[l]
            if pl != pk:
                continue
            if rank1 and mono_coprime(mk, ml):
                # Koszul syzygy g_l e_k - g_k e_l; same Schreyer lead as the
                # S-pair reduction would produce, no reduction needed
                z: FlatVec = {}
                for (_, mm), c in G.elems[l].items():
                    _acc(z, (k, mm), c, p)
                for (_, mm), c in G.elems[k].items():
                    _acc(z, (l, mm), p - c, p)
                zs.append(z)
                continue
            L = mono_lcm(mk, ml)
            budget.check_degree(ctx.wdeg(L))
            dk = mono_sub(L, mk)
            dl = mono_sub(L, ml)
            u: FlatVec = {}
            vec_axpy(u, 1, dk, G.elems[k], p)
            vec_axpy(u, p - 1, dl, G.elems[l], p)
            z = {(k, dk): 1}
            _acc(z, (l, dl), p - 1, p)

            def collect(t: int, d: Mono, c: int, _z=z) -> None:
                _acc(_z, (t, d), p - c, p)

            rem = reduce_full(u, G, ctx, on_reduce=collect)
            if rem:
                raise InternalConsistencyError(
                    "S-pair of a Groebner basis did not reduce to zero")
            zs.append(z)

    out: List[FlatVec] = []
    seen = set()

    def emit(s: FlatVec) -> None:
        if not s:
            return
        key = tuple(sorted(s.items()))
        if key not in seen:
            seen.add(key)
            out.append(s)

    for z in zs:
        s: FlatVec = {}
        for (gidx, mm), c in sorted(z.items()):
            vec_axpy(s, c, mm, reps[gidx], p)
        emit(s)

    # I - A*B block: one column per input generator
    for i, f in enumerate(gens):
        b: FlatVec = {}

        def collect(t: int, d: Mono, c: int, _b=b) -> None:
            _acc(_b, (t, d), c, p)

        if f:
            rem = reduce_full(dict(f), G, ctx, on_reduce=collect)
            if rem:
                raise InternalConsistencyError(
                    "generator did not reduce to zero against its own basis")
        s = {(i, ctx.zero_mono): 1}
        for (t, d), c in sorted(b.items()):
            vec_axpy(s, p - c, d, reps[t], p)
        emit(s)

    return out
