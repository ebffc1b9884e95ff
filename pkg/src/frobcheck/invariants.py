"""Dimension, depth, regular sequences, Euler characteristics, rank,
canonical modules, Cohen-Macaulay type.

Depth is Koszul depth sensitivity on the variable generators of the maximal
ideal; dimension of a module goes through its zeroth Fitting ideal (maximal
minors of the relations matrix), whose vanishing locus is the support.
Euler characteristics are alternating sums of Koszul homology lengths,
which equal the Tor lengths against R/(x) because the Koszul complex on a
regular sequence resolves R/(x).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

from .algebra_kernel import (INFINITE, Polynomial, RingModel, buchberger,
                             krull_dimension)
from .budget import DEFAULT_BUDGET, Budget
from .errors import (ArgumentError, InternalConsistencyError,
                     PreconditionError)
from .module_engine import (Column, PresentedModule, ext, koszul_complex,
                            minimalize, min_generators, module_length)


def residue_field(ring: RingModel) -> PresentedModule:
    """k = R/m presented by the row of variables."""
    return PresentedModule.from_rows(
        ring, [[ring.variable(i) for i in range(len(ring.variables))]])


def ring_as_module(ring: RingModel) -> PresentedModule:
    return PresentedModule.free(ring, 1)


def depth_of_ring(ring: RingModel, budget: Budget = DEFAULT_BUDGET) -> int:
    d = ring._cache.get("depth")
    if d is None:
        d = depth_of_module(ring_as_module(ring), budget)
        ring._cache["depth"] = d
    return d


def is_cohen_macaulay(ring: RingModel, budget: Budget = DEFAULT_BUDGET) -> bool:
    return depth_of_ring(ring, budget) == ring.dim(budget)


# ---------------------------------------------------------------------------
# dimension and depth

def _determinant(ring: RingModel, cols: List[Column], rows: Tuple[int, ...]
                 ) -> Polynomial:
    # cofactor expansion along the first remaining column; fine for the
    # desk-scale minor sizes the budget admits
    if not rows:
        return ring.one()
    first, rest = cols[0], cols[1:]
    acc = ring.zero()
    p = ring.p
    for t, r in enumerate(rows):
        entry = first.get(r)
        if entry is None:
            continue
        sub = rows[:t] + rows[t + 1:]
        minor = _determinant(ring, rest, sub)
        sign = 1 if t % 2 == 0 else p - 1
        acc = acc + (entry * minor).scale(sign)
    return acc


def _minors(ring: RingModel, M: PresentedModule, size: int, budget: Budget
            ) -> List[Polynomial]:
    cols = list(M.columns)
    r, t = M.ambient_rank, len(cols)
    if size > min(r, t):
        return []
    count = comb(r, size) * comb(t, size)
    budget.check_minors(count)
    out = []
    for cset in combinations(range(t), size):
        chosen = [cols[j] for j in cset]
        for rset in combinations(range(r), size):
            out.append(_determinant(ring, chosen, rset))
    return out


def dimension_of_module(M: PresentedModule, budget: Budget = DEFAULT_BUDGET
                        ) -> int:
    """Krull dimension of M via Supp M = V(I + Fitt_0(relations)).

    Returns -1 for the zero module (empty support).
    """
    Mmin = minimalize(M, budget)
    r = Mmin.ambient_rank
    if r == 0:
        return -1
    if len(Mmin.columns) < r:
        # fewer relations than generators: Fitt_0 = 0, full support
        return M.ring.dim(budget)
    minors = _minors(M.ring, Mmin, r, budget)
    gens = list(M.ring.ideal_gens) + [m for m in minors if not m.is_zero()]
    return krull_dimension(buchberger(gens, M.ring, budget))


def depth_of_module(M: PresentedModule, budget: Budget = DEFAULT_BUDGET) -> int:
    """depth via Koszul homology on the variables: v - top nonvanishing H_i."""
    if M.is_zero(budget):
        raise PreconditionError("depth of the zero module is undefined")
    cached = M._cache.get("depth")
    if cached is not None:
        return cached
    ring = M.ring
    v = len(ring.variables)
    K = koszul_complex([ring.variable(i) for i in range(v)],
                       minimalize(M, budget))
    depth = 0
    for i in range(v, -1, -1):
        if not K.homology_at(i, budget).is_zero:
            depth = v - i
            break
    M._cache["depth"] = depth
    return depth


def is_mcm(M: PresentedModule, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Maximal Cohen-Macaulay: nonzero with depth M = dim R."""
    if M.is_zero(budget):
        warnings.warn("is_mcm called on the zero module; returning False")
        return False
    return depth_of_module(M, budget) == M.ring.dim(budget)


# ---------------------------------------------------------------------------
# sequences

def is_regular_sequence(x: Sequence[Polynomial], M: PresentedModule,
                        budget: Budget = DEFAULT_BUDGET) -> bool:
    """x is M-regular iff positive Koszul homology vanishes and M/xM != 0.

    Elements outside the maximal ideal fail properness in the graded model
    and are reported non-regular.
    """
    if M.is_zero(budget):
        return False
    if any(e.is_zero() or not e.in_maximal_ideal() for e in x):
        return False
    if not x:
        return True
    K = koszul_complex(list(x), minimalize(M, budget))
    return all(K.homology_at(i, budget).is_zero for i in range(1, len(x) + 1))


def is_sop(x: Sequence[Polynomial], ring: RingModel,
           budget: Budget = DEFAULT_BUDGET) -> bool:
    """System of parameters for R: dim R elements with dim R/(x) = 0."""
    if len(x) != ring.dim(budget):
        return False
    gens = list(ring.ideal_gens) + [e for e in x if not e.is_zero()]
    return krull_dimension(buchberger(gens, ring, budget)) == 0


def is_sop_for_module(x: Sequence[Polynomial], M: PresentedModule,
                      budget: Budget = DEFAULT_BUDGET) -> bool:
    """dim M elements cutting M down to finite length."""
    dim_m = dimension_of_module(M, budget)
    if len(x) != dim_m:
        return False
    return module_length(quotient_by_sequence(M, x), budget) is not INFINITE


def quotient_by_sequence(M: PresentedModule, x: Sequence[Polynomial]
                         ) -> PresentedModule:
    """M/xM: the presentation of M augmented by x times each generator."""
    cols = list(M.columns)
    for e in x:
        if e.is_zero():
            continue
        for j in range(M.ambient_rank):
            cols.append({j: e})
    return PresentedModule(M.ring, M.ambient_rank, cols)


@dataclass
class SopSequence:
    """A candidate sequence with its verification flags.

    Flags are None until certified; ``certify`` fills the R-level flags.
    Module-level verification (s.o.p. for a given M) stays with the caller
    since it depends on the module.
    """

    elements: Tuple[Polynomial, ...]
    is_regular_on_R: Optional[bool] = None
    is_sop_for_R: Optional[bool] = None

    @classmethod
    def certify(cls, ring: RingModel, elements: Sequence[Polynomial],
                budget: Budget = DEFAULT_BUDGET) -> "SopSequence":
        elems = tuple(elements)
        return cls(elems,
                   is_regular_on_R=is_regular_sequence(
                       elems, ring_as_module(ring), budget),
                   is_sop_for_R=is_sop(elems, ring, budget))

    @property
    def c(self) -> int:
        return len(self.elements)


# ---------------------------------------------------------------------------
# Euler characteristics

@dataclass(frozen=True)
class EulerCharacteristic:
    """chi_i plus the underlying Koszul homology length table."""

    value: int
    homology_lengths: Tuple[int, ...]
    index: int


def euler_characteristic(M: PresentedModule, x: Sequence[Polynomial],
                         i: int = 0, budget: Budget = DEFAULT_BUDGET
                         ) -> EulerCharacteristic:
    """chi_i(M, R/x) = sum_{j>=i} (-1)^(j-i) len Tor_j(M, R/x).

    Computed through Koszul homology, which realizes the Tor modules since
    the Koszul complex on a regular sequence resolves R/(x). Preconditions
    (x regular on R, finite colength on M) are verified.
    """
    ring = M.ring
    if i < 0:
        raise ArgumentError("chi index must be nonnegative")
    if not is_regular_sequence(x, ring_as_module(ring), budget):
        raise PreconditionError("sequence is not regular on R")
    K = koszul_complex(list(x), minimalize(M, budget))
    lengths = []
    for j in range(len(x) + 1):
        lengths.append(K.homology_at(j, budget).length(budget))
    if lengths[0] is INFINITE:
        raise PreconditionError("M/xM has infinite length")
    if any(l is INFINITE for l in lengths):
        raise InternalConsistencyError(
            "finite colength with infinite higher Koszul homology")
    value = 0
    for j in range(i, len(lengths)):
        value += lengths[j] if (j - i) % 2 == 0 else -lengths[j]
    return EulerCharacteristic(value, tuple(lengths), i)


# ---------------------------------------------------------------------------
# rank

def rank_of_module(M: PresentedModule, budget: Budget = DEFAULT_BUDGET
                   ) -> Optional[int]:
    """Generic free rank: ambient rank minus the matrix rank of the relations.

    Only computed when the model is flagged a domain (the fraction-field
    rank); returns None (NO_RANK) otherwise, and callers skip or supply the
    rank themselves.
    """
    if not M.ring.is_domain:
        return None
    Mmin = minimalize(M, budget)
    r, t = Mmin.ambient_rank, len(Mmin.columns)
    ring = M.ring
    for s in range(min(r, t), 0, -1):
        for minor in _minors(ring, Mmin, s, budget):
            if not ring.nf(minor, budget).is_zero():
                return r - s
    return r


# ---------------------------------------------------------------------------
# canonical module and type

def canonical_module(ring: RingModel, budget: Budget = DEFAULT_BUDGET
                     ) -> PresentedModule:
    """omega = Ext^c_S(R, S) over the ambient polynomial ring, as an R-module.

    c is the codimension v - dim R. Requires R Cohen-Macaulay. The S-level
    presentation is pulled to R (the ideal annihilates omega) and
    minimalized; mu(omega) is then the Cohen-Macaulay type.
    """
    cached = ring._cache.get("canonical")
    if cached is not None:
        return cached
    if not is_cohen_macaulay(ring, budget):
        raise PreconditionError("canonical module requires a CM ring")
    S = ring.ambient()
    c = len(ring.variables) - ring.dim(budget)
    r_over_s = PresentedModule(
        S, 1, [{0: Polynomial(S, dict(g.terms))} for g in ring.ideal_gens])
    h = ext(r_over_s, PresentedModule.free(S, 1), c, budget)
    pres = h.presentation
    omega = minimalize(
        PresentedModule(ring, pres.ambient_rank,
                        [dict(col) for col in pres.columns], budget),
        budget)
    ring._cache["canonical"] = omega
    return omega


def cm_type_and_gorenstein(ring: RingModel, budget: Budget = DEFAULT_BUDGET
                           ) -> Tuple[int, bool]:
    """(type, is Gorenstein): type = len Ext^d_R(k, R), cross-checked
    against mu(omega)."""
    cached = ring._cache.get("type_gorenstein")
    if cached is not None:
        return cached
    if not is_cohen_macaulay(ring, budget):
        raise PreconditionError("type requires a CM ring")
    d = ring.dim(budget)
    h = ext(residue_field(ring), ring_as_module(ring), d, budget)
    t = h.length(budget)
    if t is INFINITE or t < 1:
        raise InternalConsistencyError(
            f"CM type came out as {t}; expected a positive integer")
    mu_omega = min_generators(canonical_module(ring, budget), budget)
    if mu_omega != t:
        raise InternalConsistencyError(
            f"type {t} disagrees with mu(canonical module) {mu_omega}")
    result = (t, t == 1)
    ring._cache["type_gorenstein"] = result
    return result


# ---------------------------------------------------------------------------
# bundles

@dataclass(frozen=True)
class InvariantBundle:
    dim: int
    depth: int
    codim: int
    is_MCM: bool
    rank: Optional[int]
    mu: int


def module_invariants(M: PresentedModule, budget: Budget = DEFAULT_BUDGET,
                      rank_override: Optional[int] = None) -> InvariantBundle:
    dim_m = dimension_of_module(M, budget)
    depth_m = depth_of_module(M, budget)
    rank = rank_override if rank_override is not None \
        else rank_of_module(M, budget)
    return InvariantBundle(
        dim=dim_m,
        depth=depth_m,
        codim=M.ring.dim(budget) - dim_m,
        is_MCM=depth_m == M.ring.dim(budget),
        rank=rank,
        mu=min_generators(M, budget),
    )
