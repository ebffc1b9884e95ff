"""Frobenius functor, pushforward presentation, cross-oracle Tor, kappa."""

import pytest

from frobcheck import (ArgumentError, PresentedModule, PreconditionError,
                       bracket_power, buchberger,
                       colength_and_standard_monomials, frobenius_complex,
                       frobenius_module, kappa_for_sop, kappa_upper_bound,
                       minimal_free_resolution, minimalize, module_length,
                       normal_form, pushforward_presentation, residue_field,
                       tor_frobenius)
from frobcheck.budget import Budget
from frobcheck.cli import parse_polynomial
from frobcheck.errors import BudgetExceededError


def P(ring, s):
    return parse_polynomial(ring, s)


# ---------------------------------------------------------------------------
# the functor on presentations

def test_frobenius_module_entrywise_powers(model_b):
    B = model_b.ring
    MF = model_b.module("MF")
    F = frobenius_module(minimalize(MF), 1)
    expected = {B.nf(P(B, "x^3")), B.nf(P(B, "y^3")),
                B.nf(P(B, "z^3")), B.nf(P(B, "-x^3"))}
    got = {e for col in F.columns for e in col.values()}
    assert got == expected


def test_frobenius_of_k_is_bracket_quotient(model_a):
    A = model_a.ring
    F = frobenius_module(residue_field(A), 1)
    assert module_length(F) == 4
    gb = buchberger(bracket_power([P(A, "x"), P(A, "y")], 2), A)
    assert colength_and_standard_monomials(gb)[0] == 4


def test_frobenius_preserves_free(model_b):
    free = PresentedModule.free(model_b.ring, 3)
    for n in (1, 2):
        out = frobenius_module(free, n)
        assert out.ambient_rank == 3 and out.num_relations == 0


def test_frobenius_requires_minimal_presentation(model_a):
    A = model_a.ring
    M = PresentedModule(A, 1, [{0: A.one()}])
    with pytest.raises(PreconditionError):
        frobenius_module(M, 1)


def test_frobenius_length_matches_bracket_power_colength(model_b):
    # F^n(R/I) = R/I^[q] on finite-colength ideals
    B = model_b.ring
    for gens in ([P(B, "x"), P(B, "y"), P(B, "z")],
                 [P(B, "x^2"), P(B, "y"), P(B, "z^2")]):
        M = PresentedModule.from_rows(B, [gens])
        for n in (1, 2):
            q = B.p ** n
            gb = buchberger(list(B.ideal_gens) + bracket_power(gens, q), B)
            assert module_length(frobenius_module(M, n)) == \
                colength_and_standard_monomials(gb)[0]


# ---------------------------------------------------------------------------
# the functor on complexes

def test_frobenius_complex_still_a_complex(model_b):
    res = minimal_free_resolution(residue_field(model_b.ring), 3)
    fc = frobenius_complex(res, 1)   # constructor verifies d.d = 0
    assert fc.ranks == res.ranks


def test_frobenius_complex_regular_ring_exact(model_a):
    res = minimal_free_resolution(residue_field(model_a.ring), 3)
    fc = frobenius_complex(res, 1)
    for i in range(1, fc.length + 1):
        assert fc.homology_at(i).is_zero


def test_frobenius_complex_singular_ring_not_exact(model_e):
    res = minimal_free_resolution(residue_field(model_e.ring), 2)
    fc = frobenius_complex(res, 1)
    assert not fc.homology_at(1).is_zero


# ---------------------------------------------------------------------------
# pushforward

def test_pushforward_univariate_free():
    R = __import__("frobcheck").RingModel(2, ["x"], is_domain=True,
                                          expected_CM=True)
    pf = pushforward_presentation(R, 1)
    assert pf.presentation.ambient_rank == 2
    assert pf.presentation.num_relations == 0
    assert pf.residues == ((0,), (1,))


def test_pushforward_node_relations(model_e):
    E = model_e.ring
    pf = pushforward_presentation(E, 1)
    assert pf.presentation.ambient_rank == 4
    # residues in lexicographic order: (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
    rels = {tuple(sorted((i, str(e)) for i, e in col.items()))
            for col in pf.presentation.columns}
    assert rels == {((3, "1"),), ((1, "x"),), ((2, "y"),)}


def test_pushforward_generator_count_is_q_to_v(model_b):
    pf = pushforward_presentation(model_b.ring, 1)
    assert pf.presentation.ambient_rank == 3 ** 3


def test_pushforward_budget(model_c):
    with pytest.raises(BudgetExceededError):
        pushforward_presentation(model_c.ring, 1)   # 125 > default 64
    pf = pushforward_presentation(model_c.ring, 1,
                                  Budget(max_pushforward_generators=256))
    assert pf.presentation.ambient_rank == 125


def test_pushforward_is_mcm_over_cm_rings(model_c, model_d, big_budget):
    # f^n R is a maximal Cohen-Macaulay module whenever R is CM
    from frobcheck import is_mcm
    for mf in (model_d, model_c):
        pf = pushforward_presentation(mf.ring, 1, big_budget)
        assert is_mcm(pf.minimalized(big_budget), big_budget)


def test_pushforward_free_over_regular(model_a):
    # flatness of Frobenius over a regular ring: f^n A is free of rank q^v
    for n in (1, 2):
        pf = pushforward_presentation(model_a.ring, n)
        pm = pf.minimalized()
        assert pm.num_relations == 0
        assert pm.ambient_rank == (2 ** n) ** 2


def test_pushforward_minimal_generators(model_c, big_budget):
    # mu(f^1 R) = len(R/m^[q])
    C = model_c.ring
    pf = pushforward_presentation(C, 1, big_budget)
    q = 5
    gb = buchberger(list(C.ideal_gens)
                    + [C.variable(i) ** q for i in range(3)], C)
    assert pf.minimalized(big_budget).ambient_rank == \
        colength_and_standard_monomials(gb)[0] == 15


# ---------------------------------------------------------------------------
# Tor against the Frobenius

def test_tor_frobenius_free_vanishes(model_b):
    free = PresentedModule.free(model_b.ring, 2)
    for i in (1, 2):
        for method in ("functor", "pushforward"):
            assert tor_frobenius(free, 1, i, method).is_zero


def test_tor_frobenius_regular_both_methods(model_a):
    k = residue_field(model_a.ring)
    for i in (1, 2, 3):
        for n in (1, 2):
            assert tor_frobenius(k, n, i, "both").is_zero


def test_tor_frobenius_node_nonzero_agreement(model_e):
    k = residue_field(model_e.ring)
    h = tor_frobenius(k, 1, 1, "both")
    assert not h.is_zero and h.length() == 2


def test_tor_frobenius_bad_method(model_a):
    with pytest.raises(ArgumentError):
        tor_frobenius(residue_field(model_a.ring), 1, 1, "magic")


# ---------------------------------------------------------------------------
# kappa

def test_kappa_regular_ring_is_zero(model_a):
    A = model_a.ring
    assert kappa_for_sop(A, [P(A, "x"), P(A, "y")]) == 0


def test_kappa_hypersurface(model_b):
    B = model_b.ring
    assert kappa_for_sop(B, [P(B, "y"), P(B, "z")]) == 1


def test_kappa_cusp_char2():
    # y^2 = x^3 in (x), y not in (x)
    from frobcheck import RingModel
    R0 = RingModel(2, ["x", "y"], weights=(2, 3))
    D2 = RingModel(2, ["x", "y"], weights=(2, 3),
                   ideal_gens=[P(R0, "y^2-x^3")], is_domain=True,
                   expected_CM=True)
    assert kappa_for_sop(D2, [D2.variable(0)]) == 1


def test_kappa_rejects_non_sop(model_b):
    B = model_b.ring
    with pytest.raises(PreconditionError):
        kappa_for_sop(B, [P(B, "y")])


def test_kappa_upper_bound_minimum(model_b):
    B = model_b.ring
    cands = [[P(B, "y"), P(B, "z")], [P(B, "y+z"), P(B, "x")]]
    per = [kappa_for_sop(B, c) for c in cands]
    assert kappa_upper_bound(B, cands) == min(per) == 1


def test_kappa_certificates_reverify(model_b, model_d):
    # every reported t re-verified by explicit membership of var^{p^t}
    for mf, sop_name in ((model_b, "yz"), (model_d, "x")):
        ring = mf.ring
        x = mf.sop(sop_name)
        t = kappa_for_sop(ring, x)
        gb = buchberger(list(ring.ideal_gens) + list(x), ring)
        q = ring.p ** t
        for i in range(len(ring.variables)):
            assert normal_form(ring.variable(i) ** q, gb).is_zero()
        if t > 0:
            qprev = ring.p ** (t - 1)
            assert any(
                not normal_form(ring.variable(i) ** qprev, gb).is_zero()
                for i in range(len(ring.variables)))
