"""Frobenius base-change functor on modules and complexes, pushforward
presentation, and certified upper bounds for the kappa invariant.

The functor raises every entry of a presentation matrix to the q-th power
(q = p^n); on a minimal presentation this is again a minimal presentation
of the base-changed module. The pushforward realizes R viewed through the
n-th Frobenius as a finite R-module on q^v generators indexed by exponent
residues, with relations read off from q-th-root decompositions. Tor
against the Frobenius has the two spec'd realizations; their lengths must
agree, which tor_frobenius can enforce in one call.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence, Tuple

from .algebra_kernel import (Polynomial, RingModel, buchberger,
                             normal_form, qth_root_decompose)
from .budget import DEFAULT_BUDGET, Budget
from .errors import (ArgumentError, InternalConsistencyError,
                     PreconditionError)
from .invariants import is_sop
from .module_engine import (Column, FreeComplex, HomologyModule, Matrix,
                            PresentedModule, minimal_free_resolution,
                            minimalize, tor)


@dataclass(frozen=True)
class FrobeniusPower:
    """Iteration count n with its derived power q = p^n."""

    n: int
    q: int

    @classmethod
    def of(cls, ring: RingModel, n: int) -> "FrobeniusPower":
        if n < 0:
            raise ArgumentError("Frobenius iteration count must be >= 0")
        return cls(n, ring.p ** n)


def _check_minimal(M: PresentedModule) -> None:
    for col in M.columns:
        for entry in col.values():
            if not entry.in_maximal_ideal():
                raise PreconditionError(
                    "presentation has a unit entry; minimalize first")


def frobenius_module(M: PresentedModule, n: int,
                     budget: Budget = DEFAULT_BUDGET) -> PresentedModule:
    """F^n(M): every relation entry raised to the q-th power.

    Requires a minimal presentation (checked: no unit entries); the result
    is then the minimal presentation of the base change, since q-th powers
    stay inside the maximal ideal.
    """
    _check_minimal(M)
    fp = FrobeniusPower.of(M.ring, n)
    cols: Matrix = []
    for col in M.columns:
        cols.append({i: e.frobenius_power(fp.q) for i, e in col.items()})
    return PresentedModule(M.ring, M.ambient_rank, cols, budget)


def frobenius_complex(G: FreeComplex, n: int,
                      budget: Budget = DEFAULT_BUDGET) -> FreeComplex:
    """F^n applied to a free complex: entrywise q-th powers of differentials.

    Still a complex because bracketing distributes over matrix products in
    characteristic p. Homology at i presents Tor_i(M, f^n R) when G is a
    minimal resolution of M.
    """
    fp = FrobeniusPower.of(G.ring, n)
    diffs = []
    for d in G.differentials:
        diffs.append([{i: e.frobenius_power(fp.q) for i, e in col.items()}
                      for col in d])
    return FreeComplex(G.ring, G.ranks, diffs, verify=True, budget=budget)


class PushforwardModule:
    """f^n R presented on generators e_a indexed by residues a in [0,q)^v.

    ``presentation`` is the raw q^v-generator presentation; ``minimalized``
    caches the pruned form used for Tor/Ext computations.
    """

    __slots__ = ("presentation", "residues", "power")

    def __init__(self, presentation: PresentedModule,
                 residues: Tuple[Tuple[int, ...], ...], power: FrobeniusPower):
        self.presentation = presentation
        self.residues = residues
        self.power = power

    def minimalized(self, budget: Budget = DEFAULT_BUDGET) -> PresentedModule:
        return minimalize(self.presentation, budget)

    def __repr__(self) -> str:
        return (f"PushforwardModule(n={self.power.n}, "
                f"generators={len(self.residues)}, "
                f"relations={self.presentation.num_relations})")


def pushforward_presentation(ring: RingModel, n: int,
                             budget: Budget = DEFAULT_BUDGET
                             ) -> PushforwardModule:
    """Present f^n R on the residue generators.

    For each ideal generator g and each residue a, the q-th-root
    decomposition of g * x^a yields one relation: the components G_b are
    the coefficients of e_b, because the reconstruction identity over F_p
    makes G_b(x)^q x^b sum to g x^a exactly.
    """
    if n < 1:
        raise ArgumentError("pushforward needs n >= 1")
    fp = FrobeniusPower.of(ring, n)
    v = len(ring.variables)
    count = fp.q ** v
    budget.check_pushforward(count)
    residues = tuple(product(range(fp.q), repeat=v))
    index = {a: k for k, a in enumerate(residues)}
    cols: Matrix = []
    for g in ring.ideal_gens:
        for a in residues:
            f = g * ring.monomial(a)
            comps = qth_root_decompose(f, fp.q)
            col: Column = {index[b]: comp for b, comp in comps.items()}
            cols.append(col)
    pres = PresentedModule(ring, count, cols, budget)
    return PushforwardModule(pres, residues, fp)


def tor_frobenius(M: PresentedModule, n: int, i: int, method: str = "functor",
                  budget: Budget = DEFAULT_BUDGET) -> HomologyModule:
    """Tor_i(M, f^n R) by the chosen route.

    method="functor" takes homology of the Frobenius-twisted minimal
    resolution; method="pushforward" resolves M and tensors with the
    pushforward presentation; method="both" runs the two and insists the
    lengths agree (a cross-oracle; disagreement is an engine bug).
    """
    if i < 0:
        raise ArgumentError("Tor index must be nonnegative")
    if method not in ("functor", "pushforward", "both"):
        raise ArgumentError(f"unknown Tor method {method!r}")
    out_f = out_p = None
    if method in ("functor", "both"):
        res = minimal_free_resolution(M, i + 1, budget)
        if i > res.length:
            # resolution stopped before step i, so Tor_i vanishes
            out_f = HomologyModule(PresentedModule.free(M.ring, 0), True)
        else:
            out_f = frobenius_complex(res, n, budget).homology_at(i, budget)
    if method in ("pushforward", "both"):
        key = ("pushforward", n)
        pf = M.ring._cache.get(key)
        if pf is None:
            pf = pushforward_presentation(M.ring, n, budget)
            M.ring._cache[key] = pf
        out_p = tor(M, pf.minimalized(budget), i, budget)
    if method == "functor":
        return out_f
    if method == "pushforward":
        return out_p
    if out_f.is_zero != out_p.is_zero or out_f.length(budget) != out_p.length(budget):
        raise InternalConsistencyError(
            f"Tor_{i}(M, f^{n}R) cross-oracle mismatch: functor gives "
            f"length {out_f.length(budget)}, pushforward {out_p.length(budget)}")
    return out_f


# ---------------------------------------------------------------------------
# kappa

def kappa_for_sop(ring: RingModel, x: Sequence[Polynomial],
                  budget: Budget = DEFAULT_BUDGET) -> int:
    """Least t >= 0 with m^[p^t] inside (x), for a verified s.o.p. x.

    Found by ideal membership of each variable's p^t-th power; the value is
    an upper bound for kappa(R) since kappa is an infimum over all systems
    of parameters.
    """
    if not is_sop(x, ring, budget):
        raise PreconditionError("sequence is not a system of parameters")
    gens = list(ring.ideal_gens) + [e for e in x if not e.is_zero()]
    gb = buchberger(gens, ring, budget)
    t = 0
    while True:
        budget.check_kappa(t)
        q = ring.p ** t
        if all(normal_form(ring.variable(i) ** q, gb).is_zero()
               for i in range(len(ring.variables))):
            return t
        t += 1


def kappa_upper_bound(ring: RingModel,
                      candidates: Sequence[Sequence[Polynomial]],
                      budget: Budget = DEFAULT_BUDGET) -> int:
    """Minimum of kappa_for_sop over the candidate systems of parameters.

    Any n >= this bound satisfies the theorems' hypothesis n >= kappa(R);
    the true infimum may be smaller, so the value is only ever consumed as
    an upper bound.
    """
    if not candidates:
        raise ArgumentError("kappa_upper_bound needs at least one candidate")
    return min(kappa_for_sop(ring, x, budget) for x in candidates)
