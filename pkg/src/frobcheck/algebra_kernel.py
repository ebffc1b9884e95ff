"""Exact arithmetic in F_p[x_1..x_v] and Groebner machinery for ideals.

The ambient polynomial ring S carries a weighted graded reverse
lexicographic order (weighted grevlex). A RingModel is S together with a
list of quasi-homogeneous ideal generators contained in the irrelevant
maximal ideal m = (x_1..x_v); the quotient R = S/I stands in for the local
ring at the origin, which is faithful because every ideal and matrix entry
in the pipeline is graded. Lengths are therefore F_p-dimensions.

All values are immutable after construction and every operation is a pure
function of its inputs; internal memoization is keyed on immutable data and
cannot change results.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import _engine
from ._engine import EngineContext, FlatVec, GIndex, Mono, reduce_full
from .budget import DEFAULT_BUDGET, Budget
from .errors import ArgumentError, InternalConsistencyError

INFINITE = math.inf


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Polynomial:
    """Sparse polynomial over F_p: a map from exponent tuples to residues.

    No zero coefficients are stored and coefficients live in [1, p).
    Iteration order for rendering is decreasing weighted grevlex, which
    makes the text form canonical.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "RingModel", terms: Dict[Mono, int]):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring: "RingModel", terms: Dict[Mono, int]) -> "Polynomial":
        p = ring.p
        clean = {}
        for m, c in terms.items():
            c %= p
            if c:
                clean[tuple(m)] = c
        return cls(ring, clean)

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> Mono:
        if not self.terms:
            raise ArgumentError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.ctx.mono_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def constant_term(self) -> int:
        return self.terms.get(self.ring.ctx.zero_mono, 0)

    def in_maximal_ideal(self) -> bool:
        return self.constant_term() == 0

    def weighted_degree(self) -> int:
        """Weighted degree of the leading monomial (0 for the zero poly)."""
        if not self.terms:
            return 0
        return max(self.ring.ctx.wdeg(m) for m in self.terms)

    def is_quasi_homogeneous(self) -> bool:
        degs = {self.ring.ctx.wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def sorted_terms(self) -> List[Tuple[Mono, int]]:
        key = self.ring.ctx.mono_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if not self.ring.compatible(other.ring):
            raise ArgumentError("ring mismatch between polynomial operands")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        self._check_ring(other)
        p = self.ring.p
        out: Dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _engine.mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.p
        if c == 0:
            return Polynomial(self.ring, {})
        if c == 1:
            return self
        return Polynomial(self.ring,
                          {m: (c * a) % self.ring.p for m, a in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ArgumentError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def frobenius_power(self, q: int) -> "Polynomial":
        """The q-th power for q a power of p: exponents scale by q.

        Valid because coefficients lie in F_p (c^q = c) and the freshman's
        dream holds in characteristic p.
        """
        return Polynomial(self.ring,
                          {tuple(q * e for e in m): c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial)
                and self.ring.compatible(other.ring)
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.ring.signature(), tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        return self.ring.render_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.ring.render_poly(self)!r})"


class RingModel:
    """Characteristic-p quotient ring presented as S/I with positive weights.

    ``ideal_gens`` must be quasi-homogeneous with all terms of positive
    weighted degree; inputs violating this are rejected so that graded and
    local behavior agree. ``is_domain`` and ``expected_CM`` are user
    assertions (the second is verified on demand by the invariants layer);
    ``generically_gorenstein`` is the assertion consumed by the
    Gorensteinness checkers when ``is_domain`` is false.
    """

    __slots__ = ("p", "variables", "weights", "ideal_gens", "is_domain",
                 "expected_CM", "generically_gorenstein", "ctx", "_cache")

    def __init__(self, p: int, variables: Sequence[str],
                 weights: Optional[Sequence[int]] = None,
                 ideal_gens: Iterable[Polynomial] = (),
                 is_domain: bool = False,
                 expected_CM: Optional[bool] = None,
                 generically_gorenstein: Optional[bool] = None):
        if not _is_prime(p):
            raise ArgumentError(f"characteristic {p} is not prime")
        variables = tuple(variables)
        if len(set(variables)) != len(variables) or not variables:
            raise ArgumentError("variables must be distinct and nonempty")
        if weights is None:
            weights = (1,) * len(variables)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(variables) or any(w <= 0 for w in weights):
            raise ArgumentError("weights must be positive, one per variable")
        self.p = p
        self.variables = variables
        self.weights = weights
        self.ctx = EngineContext(p, weights)
        self.is_domain = bool(is_domain)
        self.expected_CM = expected_CM
        self.generically_gorenstein = generically_gorenstein
        self._cache: dict = {}
        gens = []
        for g in ideal_gens:
            if not isinstance(g, Polynomial):
                raise ArgumentError("ideal generators must be Polynomial values")
            if g.is_zero():
                continue
            if not g.is_quasi_homogeneous():
                raise ArgumentError(
                    f"ideal generator {g.ring.render_poly(g)} is not "
                    "quasi-homogeneous for the declared weights")
            terms = dict(g.terms)
            reb = Polynomial(self, terms)
            if not reb.in_maximal_ideal():
                raise ArgumentError(
                    f"ideal generator {self.render_poly(reb)} has a constant "
                    "term; generators must lie in the maximal ideal")
            gens.append(reb)
        self.ideal_gens = tuple(gens)

    # -- identity --------------------------------------------------------

    def signature(self) -> tuple:
        return (self.p, self.variables, self.weights)

    def compatible(self, other: "RingModel") -> bool:
        return self is other or self.signature() == other.signature()

    def full_signature(self) -> tuple:
        return self.signature() + tuple(
            sorted(tuple(sorted(g.terms.items())) for g in self.ideal_gens))

    def __repr__(self) -> str:
        gens = ", ".join(self.render_poly(g) for g in self.ideal_gens)
        return (f"RingModel(F_{self.p}[{', '.join(self.variables)}], "
                f"weights={self.weights}, ideal=({gens}))")

    # -- element constructors ---------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return Polynomial(self, {self.ctx.zero_mono: 1})

    def constant(self, c: int) -> Polynomial:
        return Polynomial.from_terms(self, {self.ctx.zero_mono: c})

    def variable(self, which) -> Polynomial:
        if isinstance(which, str):
            which = self.variables.index(which)
        mono = tuple(1 if i == which else 0 for i in range(len(self.variables)))
        return Polynomial(self, {mono: 1})

    def monomial(self, mono: Sequence[int], coeff: int = 1) -> Polynomial:
        return Polynomial.from_terms(self, {tuple(mono): coeff})

    # -- quotient structure ------------------------------------------------

    def ideal_groebner(self, budget: Budget = DEFAULT_BUDGET) -> "GroebnerBasis":
        gb = self._cache.get("ideal_gb")
        if gb is None:
            gb = buchberger(list(self.ideal_gens), self, budget)
            self._cache["ideal_gb"] = gb
        return gb

    def nf(self, f: Polynomial, budget: Budget = DEFAULT_BUDGET) -> Polynomial:
        """Normal form of f modulo the ideal (canonical coset representative)."""
        return normal_form(f, self.ideal_groebner(budget))

    def is_unit(self, f: Polynomial, budget: Budget = DEFAULT_BUDGET) -> bool:
        """Unit test in R, exact for graded inputs.

        A graded element with a nonzero constant term is that constant; a
        mixed constant-plus-positive-degree normal form would mean non-graded
        data leaked into the pipeline, which is an internal bug.
        """
        g = self.nf(f, budget)
        c = g.constant_term()
        if c == 0:
            return False
        if len(g.terms) != 1:
            raise InternalConsistencyError(
                "non-graded unit candidate encountered: "
                f"{self.render_poly(g)}")
        return True

    def dim(self, budget: Budget = DEFAULT_BUDGET) -> int:
        d = self._cache.get("dim")
        if d is None:
            d = krull_dimension(self.ideal_groebner(budget))
            self._cache["dim"] = d
        return d

    def ambient(self) -> "RingModel":
        """The polynomial ring S itself (no ideal), same order data."""
        amb = self._cache.get("ambient")
        if amb is None:
            if not self.ideal_gens:
                amb = self
            else:
                amb = RingModel(self.p, self.variables, self.weights, (),
                                is_domain=True, expected_CM=True)
            self._cache["ambient"] = amb
        return amb

    # -- rendering ---------------------------------------------------------

    def render_mono(self, m: Mono) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def render_poly(self, f: Polynomial) -> str:
        if not f.terms:
            return "0"
        chunks = []
        for m, c in f.sorted_terms():
            mono = self.render_mono(m)
            if not mono:
                chunks.append(str(c))
            elif c == 1:
                chunks.append(mono)
            else:
                chunks.append(f"{c}*{mono}")
        return "+".join(chunks)


class GroebnerBasis:
    """Reduced Groebner basis of an ideal or of a submodule of R^r.

    ``ambient_rank`` is 1 for ideals. Iteration and rendering order is by
    increasing leading term; reducedness (no term divisible by another lead,
    monic elements) is guaranteed by construction.
    """

    __slots__ = ("ring", "ambient_rank", "index", "order_descriptor")

    def __init__(self, ring: RingModel, ambient_rank: int, index: GIndex,
                 order_descriptor: str):
        self.ring = ring
        self.ambient_rank = ambient_rank
        self.index = index
        self.order_descriptor = order_descriptor

    def __len__(self) -> int:
        return len(self.index.elems)

    @property
    def leads(self) -> List[Tuple[int, Mono]]:
        return list(self.index.leads)

    def polynomials(self) -> List[Polynomial]:
        if self.ambient_rank != 1:
            raise ArgumentError("polynomials() requires an ideal basis")
        out = []
        for vec in self.index.elems:
            out.append(Polynomial(self.ring, {m: c for (_, m), c in vec.items()}))
        return out

    def vectors(self) -> List[Tuple[Polynomial, ...]]:
        out = []
        for vec in self.index.elems:
            cols: List[Dict[Mono, int]] = [dict() for _ in range(self.ambient_rank)]
            for (pos, m), c in vec.items():
                cols[pos][m] = c
            out.append(tuple(Polynomial(self.ring, t) for t in cols))
        return out

    def reduce_flat(self, vec: FlatVec) -> FlatVec:
        return reduce_full(dict(vec), self.index, self.ring.ctx)


def _poly_to_flat(f: Polynomial) -> FlatVec:
    return {(0, m): c for m, c in f.terms.items()}


def buchberger(gens: Sequence[Polynomial], ring: RingModel,
               budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Unique reduced Groebner basis of the ideal generated by ``gens``.

    Deterministic: normal strategy S-pair selection with index tie-breaks;
    permuting the generators cannot change the result.
    """
    for g in gens:
        if not ring.compatible(g.ring):
            raise ArgumentError("generator does not lie in the model's ring")
    flat = [_poly_to_flat(g) for g in gens]
    gbd = _engine.buchberger_flat(flat, ring.ctx, budget)
    descr = f"grevlex(weights={ring.weights})"
    return GroebnerBasis(ring, 1, gbd.index, descr)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of f modulo gb; zero iff f lies in the ideal."""
    if not gb.ring.compatible(f.ring):
        raise ArgumentError("ring mismatch between polynomial and basis")
    if gb.ambient_rank != 1:
        raise ArgumentError("normal_form on polynomials needs an ideal basis")
    out = gb.reduce_flat(_poly_to_flat(f))
    return Polynomial(gb.ring, {m: c for (_, m), c in out.items()})


def standard_monomials(leads: Sequence[Mono], nvars: int):
    """Monomials outside the monomial ideal generated by ``leads``.

    Returns (count, sorted list) when finite, (INFINITE, None) otherwise.
    Finite iff each variable has a pure power among the leads.
    """
    if any(all(e == 0 for e in m) for m in leads):
        return 0, []
    bounds = []
    for i in range(nvars):
        b = None
        for m in leads:
            if m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i):
                b = m[i] if b is None else min(b, m[i])
        if b is None:
            return INFINITE, None
        bounds.append(b)
    basis = []
    for e in product(*(range(b) for b in bounds)):
        if not any(_engine.mono_divides(m, e) for m in leads):
            basis.append(e)
    return len(basis), basis


def colength_and_standard_monomials(gb: GroebnerBasis):
    """F_p-dimension of S/J and its monomial basis, or (INFINITE, None).

    The dimension equals the number of monomials outside the leading-term
    ideal; for graded ideals this is the length of the local quotient.
    """
    if gb.ambient_rank != 1:
        raise ArgumentError("colength requires an ideal basis")
    nvars = len(gb.ring.variables)
    leads = [m for (_, m) in gb.index.leads]
    count, basis = standard_monomials(leads, nvars)
    if basis is None:
        return INFINITE, None
    key = gb.ring.ctx.mono_key
    return count, sorted(basis, key=key)


def krull_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of S/J from maximal independent variable sets.

    A subset U of variables is independent when no leading monomial is
    supported inside U; dim = max |U|. Returns -1 for the unit ideal.
    """
    if gb.ambient_rank != 1:
        raise ArgumentError("krull_dimension requires an ideal basis")
    nvars = len(gb.ring.variables)
    leads = [m for (_, m) in gb.index.leads]
    if any(all(e == 0 for e in m) for m in leads):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    best = 0
    for size in range(nvars, 0, -1):
        found = False
        for combo in _subsets(nvars, size):
            u = frozenset(combo)
            if all(not s <= u for s in supports):
                found = True
                break
        if found:
            best = size
            break
    return best


def _subsets(n: int, k: int):
    from itertools import combinations
    return combinations(range(n), k)


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def bracket_power(gens: Sequence[Polynomial], q: int) -> List[Polynomial]:
    """Generators {g^q} of the bracket power I^[q], q a power of p."""
    if not gens:
        return []
    p = gens[0].ring.p
    if not is_power_of(q, p):
        raise ArgumentError(f"{q} is not a power of the characteristic {p}")
    return [g.frobenius_power(q) for g in gens]


def qth_root_decompose(f: Polynomial, q: int) -> Dict[Mono, Polynomial]:
    """Split f as sum over residues a of G_a(x_1^q..x_v^q) * x^a.

    Each exponent splits as q*quotient + residue; the component at residue a
    collects the quotient parts. Since coefficients lie in F_p and q is a
    power of p, G_a(x^q) equals G_a(x)^q, so the components are also the
    q-th-root coefficients used for pushforward relations. Residues with no
    terms are absent from the result.
    """
    ring = f.ring
    if not is_power_of(q, ring.p):
        raise ArgumentError(f"{q} is not a power of the characteristic {ring.p}")
    comps: Dict[Mono, Dict[Mono, int]] = {}
    for m, c in f.terms.items():
        residue = tuple(e % q for e in m)
        quotient = tuple(e // q for e in m)
        comps.setdefault(residue, {})[quotient] = c
    return {res: Polynomial(ring, terms)
            for res, terms in sorted(comps.items())}
